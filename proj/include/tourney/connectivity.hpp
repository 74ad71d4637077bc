#pragma once

#include <optional>

#include "tourney/graph.hpp"
#include "tourney/paths.hpp"

namespace tourney {

struct MengerResult {
  bool success = false;
  PathSystem paths;  // the k disjoint paths on success
  VertexSet cut;     // separator of size < k on failure
};

// k vertex-disjoint A->B paths inside D[alive] (alive defaults to all of V(D)).
MengerResult menger_paths(const Digraph& d, const VertexSet& a, const VertexSet& b, int k,
                          const VertexSet* alive = nullptr);

bool is_strongly_connected(const Digraph& d);
bool is_strongly_connected(const Digraph& d, const VertexSet& alive);
// A sink strong component of D[alive] (no edges leaving it inside alive).
VertexSet sink_component(const Digraph& d, const VertexSet& alive);
VertexSet reachable_from(const Digraph& d, Vertex s, const VertexSet& alive);

// Number of internally disjoint u->v paths (u->v must not be an edge), capped at `cap`.
int local_vertex_connectivity(const Digraph& d, Vertex u, Vertex v, int cap, VertexSet* cut = nullptr);

struct VertexCutReport {
  int kappa = 0;
  std::optional<VertexSet> witness_cut;
};
VertexCutReport connectivity(const Digraph& d);
bool is_strongly_k_connected(const Digraph& d, int k);

}  // namespace tourney
