#pragma once

#include <utility>
#include <vector>

#include "tourney/graph.hpp"
#include "tourney/paths.hpp"
#include "tourney/sorting.hpp"

namespace tourney {

class LinkFailure : public StageError {
 public:
  using StageError::StageError;
};

// orientation 1: a1->b, b->b1, b->b2, a2->b1, a2->b2
// orientation 2: a2->b, b->b1, b->b2, a1->b1, a1->b2
struct Switch {
  Vertex a1 = -1, a2 = -1, b = -1, b1 = -1, b2 = -1;
  int orientation = 1;
  std::vector<Edge> edges() const;
  // Disjoint paths a1 -> b_{first}, a2 -> b_{other}; `cross` sends a1 to b2.
  std::pair<Path, Path> paths(bool cross) const;
};

bool check_switch(const Digraph& t, const Switch& sw);

// `alive` restricts the search to a subtournament (nullptr: whole graph).
Switch find_switch(const Digraph& t, Vertex a1, Vertex a2, const VertexSet* alive = nullptr);

struct LinkageStructure {
  ComparatorNetwork net;
  std::vector<Vertex> xs;
  std::vector<Vertex> zs;
  VertexSet vertices;
  std::vector<Edge> edges;
  std::vector<Switch> switches;  // one per comparator
  std::vector<std::vector<Vertex>> final_sets;  // Z_0 .. Z_r
};

// Minimum out-degree the construction consumes: 3r + k + 7.
int linkage_degree_requirement(const ComparatorNetwork& net);

LinkageStructure build_linkage_structure(const Digraph& t, const std::vector<Vertex>& xs, const ComparatorNetwork& net,
                                         const VertexSet* alive = nullptr);
bool check_linkage_structure(const Digraph& t, const LinkageStructure& s);

// path i runs x_{pi[i]} -> z_i
PathSystem route(const LinkageStructure& s, const std::vector<int>& pi);

using Pairs = std::vector<std::pair<Vertex, Vertex>>;

PathSystem link(const Digraph& t, const Pairs& pairs, Mode mode = Mode::operational, const VertexSet* alive = nullptr);

enum class LinkBackend { sorting_network, greedy };

struct InternalLinkage {
  PathSystem paths;
  std::vector<bool> degenerate;  // pair (x,x) answered by a single-vertex path
};

// Pairs need not be distinct. Interiors avoid every endpoint and each other.
InternalLinkage link_internally_disjoint(const Digraph& d, const Pairs& pairs, LinkBackend backend = LinkBackend::sorting_network,
                                         const VertexSet* alive = nullptr);
bool check_internally_disjoint(const Digraph& d, const Pairs& pairs, const PathSystem& ps);

PathSystem link_short(const Digraph& d, const Pairs& pairs, int s, LinkBackend backend = LinkBackend::sorting_network,
                      const VertexSet* alive = nullptr);

PathSystem link_with_paths(const Digraph& t, const Pairs& pairs, const std::vector<PathSystem>& qs, int s,
                           LinkBackend backend = LinkBackend::sorting_network, const VertexSet* alive = nullptr);
// Conditions (i)-(iv) of the absorbing linkage; returns the first violated one or 0.
int check_link_with_paths(const Digraph& t, const Pairs& pairs, const std::vector<PathSystem>& qs, int s,
                          const PathSystem& out, int host_order);

// Exhaustive oracles (n <= 10, k <= 2).
bool brute_force_link(const Digraph& d, const Pairs& pairs);
bool brute_force_is_k_linked(const Digraph& d, int k);

}  // namespace tourney
