#include "tourney/paths.hpp"

#include <algorithm>

namespace tourney {

std::vector<Edge> Path::edges() const {
  std::vector<Edge> r;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) r.push_back({vertices[i], vertices[i + 1]});
  return r;
}

std::vector<Edge> Cycle::edges() const {
  std::vector<Edge> r;
  std::size_t m = vertices.size();
  if (m < 2) return r;
  for (std::size_t i = 0; i < m; ++i) r.push_back({vertices[i], vertices[(i + 1) % m]});
  return r;
}

std::vector<Vertex> heads(const PathSystem& ps) {
  std::vector<Vertex> r;
  for (const Path& p : ps) r.push_back(p.head());
  return r;
}

std::vector<Vertex> tails(const PathSystem& ps) {
  std::vector<Vertex> r;
  for (const Path& p : ps) r.push_back(p.tail());
  return r;
}

VertexSet covered(int n, const PathSystem& ps) {
  VertexSet s(n);
  for (const Path& p : ps)
    for (Vertex v : p.vertices) s.set(v);
  return s;
}

std::size_t total_order(const PathSystem& ps) {
  std::size_t t = 0;
  for (const Path& p : ps) t += p.size();
  return t;
}

Path reversed(const Path& p) {
  Path r = p;
  std::reverse(r.vertices.begin(), r.vertices.end());
  return r;
}

}  // namespace tourney
