#pragma once

#include <vector>

#include "tourney/graph.hpp"

namespace tourney {

struct Path {
  std::vector<Vertex> vertices;

  Path() = default;
  explicit Path(std::vector<Vertex> vs) : vertices(std::move(vs)) {}
  Vertex tail() const { return vertices.front(); }
  Vertex head() const { return vertices.back(); }
  std::size_t size() const { return vertices.size(); }
  std::vector<Edge> edges() const;
  friend bool operator==(const Path&, const Path&) = default;
};

using PathSystem = std::vector<Path>;

struct Cycle {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges() const;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

std::vector<Vertex> heads(const PathSystem& ps);
std::vector<Vertex> tails(const PathSystem& ps);
VertexSet covered(int n, const PathSystem& ps);
std::size_t total_order(const PathSystem& ps);
Path reversed(const Path& p);

}  // namespace tourney
