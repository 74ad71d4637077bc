#pragma once

#include <optional>

#include "tourney/graph.hpp"
#include "tourney/paths.hpp"

namespace tourney {

class NotStronglyConnected : public Error {
 public:
  NotStronglyConnected(VertexSet sink) : Error("tournament is not strongly connected"), sink_(std::move(sink)) {}
  const VertexSet& sink_component() const { return sink_; }

 private:
  VertexSet sink_;
};

Path hamilton_path(const Digraph& t);
Cycle hamilton_cycle_camion(const Digraph& t);

bool validate_path(const Digraph& d, const Path& p, bool hamilton = false);
bool validate_cycle(const Digraph& d, const Cycle& c, bool hamilton = true);
bool edge_disjoint(const std::vector<Cycle>& cycles);
bool vertex_disjoint(const PathSystem& ps);

// Held-Karp over subsets; n <= 14.
std::optional<Cycle> brute_force_hamilton(const Digraph& t);

}  // namespace tourney
