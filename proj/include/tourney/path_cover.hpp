#pragma once

#include <vector>

#include "tourney/graph.hpp"
#include "tourney/paths.hpp"

namespace tourney {

// Paths are valid in d, pairwise disjoint and cover exactly `alive` (default: all).
bool is_path_cover(const Digraph& d, const PathSystem& ps, const VertexSet* alive = nullptr);

// Cover of D[alive] whose path count is at most the independence number; the
// independent transversal that certifies it is written to `witness` if given.
PathSystem gallai_milgram_cover(const Digraph& d, const VertexSet* alive = nullptr, std::vector<Vertex>* witness = nullptr);

struct CoverPartition {
  PathSystem part1;
  PathSystem part2;
  PathSystem all() const;
};

struct ExtendOptions {
  bool strengthened = false;
  bool enforce_degree_bound = true;
  bool debug = false;  // assert the per-step head count bound
};

struct ExtendResult {
  PathSystem cover;
  std::vector<int> head_trace;  // |h(P^i) n I| for i = 0..r
};

// Reshape a cover so no head lies in I (tails: no tail lies in I), keeping the
// endpoint pattern on I u J and every edge of F.
ExtendResult extend_heads(const Digraph& d, const CoverPartition& cover, const VertexSet& i_set, const VertexSet& j_set,
                          const std::vector<Edge>& f, ExtendOptions opt = {});
ExtendResult extend_tails(const Digraph& d, const CoverPartition& cover, const VertexSet& i_set, const VertexSet& j_set,
                          const std::vector<Edge>& f, ExtendOptions opt = {});

// 0 when (i)-(vi) hold for `out`; otherwise the number of the first failing condition,
// with 7 meaning `out` is not a path cover.
int check_extend_heads(const Digraph& d, const CoverPartition& in, const VertexSet& i_set, const VertexSet& j_set,
                       const std::vector<Edge>& f, bool strengthened, const PathSystem& out);
int check_extend_tails(const Digraph& d, const CoverPartition& in, const VertexSet& i_set, const VertexSet& j_set,
                       const std::vector<Edge>& f, bool strengthened, const PathSystem& out);

}  // namespace tourney
