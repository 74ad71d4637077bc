#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "tourney/graph.hpp"
#include "tourney/paths.hpp"

namespace tourney {

// Min cut of the r-regular flow network, kept as proof that no r-regular
// spanning subdigraph exists: capacity < n*r.
struct FlowCut {
  int r = 0;
  int flow = 0;
  std::vector<Vertex> out_side;  // vertices whose out-copy is on the source side
  std::vector<Vertex> in_side;   // vertices whose in-copy is on the source side
};

// Capacity of `cut` in the network for D, computed from D alone.
long long cut_capacity(const Digraph& d, const FlowCut& cut);

struct RegularSubdigraphReport {
  int max_r = 0;
  std::vector<Edge> witness;  // spanning, every in/out-degree exactly max_r
  FlowCut infeasible;         // for max_r + 1
};

RegularSubdigraphReport max_regular_degree(const Digraph& d);

// Only for n <= 12 (GuardError otherwise).
struct PackingResult {
  int count = 0;
  std::vector<Cycle> cycles;
  long long hamilton_cycles = 0;  // distinct Hamilton cycles enumerated
};
PackingResult max_hamilton_packing(const Digraph& t);

struct ExtremalReport {
  int m = 0, ell = 0, n = 0;
  int kappa = 0;
  bool kappa_lower_ok = false;
  bool claim2_applicable = false;
  std::optional<bool> claim2_ok;
  int max_r = 0;
  int back_edges = 0;          // e(V - A, A) in T_{m,ell}
  bool binomial_ok = false;    // binom(r+1, 2) > 2ell+1 for r = floor(sqrt(4ell)) + 1
  std::optional<int> packing;  // exhaustive count, n <= 12 only
  std::optional<bool> ham_upper_ok;
};

ExtremalReport verify_extremal_claims(int m, int ell);

nlohmann::json to_json(const RegularSubdigraphReport& r);
nlohmann::json to_json(const ExtremalReport& r);

}  // namespace tourney
