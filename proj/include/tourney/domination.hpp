#pragma once

#include <vector>

#include "tourney/graph.hpp"

namespace tourney {

// x->v, v->y and x->y are edges; x->v and v->y are the activating edges.
struct CoveringEdge {
  Vertex v = -1, x = -1, y = -1;
  Edge edge() const { return {x, y}; }
  std::vector<Edge> activating() const { return {{x, v}, {v, y}}; }
  friend bool operator==(const CoveringEdge&, const CoveringEdge&) = default;
};

bool check_covering_edge(const Digraph& t, const CoveringEdge& ce);

// Lexicographically first N-(v) -> N+(v) edge inside T[alive]. With `check`, first
// confirms what the existence argument needs: both neighbourhoods nonempty and
// T[alive] - v strongly connected.
CoveringEdge covering_edge(const Digraph& t, Vertex v, bool check = true, const VertexSet* alive = nullptr);

enum class Direction { out, in };

struct DominatingSet {
  Vertex v = -1;
  std::vector<Vertex> order;       // transitive order, tail first
  std::vector<Vertex> exceptional;  // E
  std::vector<int> trace;           // |E_1|, |E_2|, ...
};

// Transitive set with head v out-dominating all but E (in: tail v, in-dominating).
DominatingSet out_dom_transitive(const Digraph& t, Vertex v, int c, const VertexSet* alive = nullptr,
                                 bool check_hypothesis = true, bool debug = false);
DominatingSet in_dom_transitive(const Digraph& t, Vertex v, int c, const VertexSet* alive = nullptr,
                                bool check_hypothesis = true, bool debug = false);

struct DomFamily {
  Direction direction = Direction::out;
  std::vector<DominatingSet> sets;  // one per element of U, in U order
};

DomFamily out_dom_family(const Digraph& t, const std::vector<Vertex>& u, int c, const VertexSet* alive = nullptr,
                         bool enforce_degree_hypothesis = true);
DomFamily in_dom_family(const Digraph& t, const std::vector<Vertex>& u, int c, const VertexSet* alive = nullptr,
                        bool enforce_degree_hypothesis = true);

// 0 when the family satisfies (i)-(vi) inside T[alive], else the first failing number.
int check_dom_family(const Digraph& t, const std::vector<Vertex>& u, const DomFamily& fam, int c,
                     const VertexSet* alive = nullptr);

}  // namespace tourney
