#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tourney/error.hpp"

namespace tourney {

using Vertex = int;
using VertexSet = boost::dynamic_bitset<std::uint64_t>;

struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::vector<Vertex> members(const VertexSet& s);
VertexSet make_set(int n, const std::vector<Vertex>& vs);
VertexSet full_set(int n);

// Immutable loop-free digraph on 0..n-1 backed by out/in bit rows.
class Digraph {
 public:
  Digraph() = default;

  int n() const { return n_; }
  bool has_edge(Vertex u, Vertex v) const { return out_[u].test(v); }
  const VertexSet& out(Vertex v) const { return out_[v]; }
  const VertexSet& in(Vertex v) const { return in_[v]; }
  int out_degree(Vertex v) const { return dout_[v]; }
  int in_degree(Vertex v) const { return din_[v]; }
  std::size_t edge_count() const { return m_; }
  bool is_oriented() const { return oriented_; }
  bool is_tournament() const { return tournament_; }
  std::vector<Edge> edges() const;

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.n_ == b.n_ && a.out_ == b.out_; }

 private:
  friend class DigraphBuilder;
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<VertexSet> out_, in_;
  std::vector<int> dout_, din_;
  bool oriented_ = true;
  bool tournament_ = true;
};

class DigraphBuilder {
 public:
  explicit DigraphBuilder(int n);
  explicit DigraphBuilder(const Digraph& d);

  int n() const { return n_; }
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const { return out_[u].test(v); }
  Digraph build() const;

 private:
  int n_;
  std::vector<VertexSet> out_;
};

Digraph from_adjacency(const std::vector<std::vector<bool>>& m);

struct DegreeSummary {
  std::vector<int> out, in;
  int min_out = 0, min_in = 0, min_semi = 0, min_total = 0, max_out = 0, max_in = 0;
};
DegreeSummary degrees(const Digraph& d);

// Relabelled subdigraph; to_parent[i] is the parent index of vertex i,
// from_parent[v] is -1 for dropped vertices.
struct InducedSubgraph {
  Digraph graph;
  std::vector<Vertex> to_parent;
  std::vector<Vertex> from_parent;
};
InducedSubgraph induced(const Digraph& d, const VertexSet& keep);
InducedSubgraph remove_vertices(const Digraph& d, const VertexSet& drop);
Digraph remove_edges(const Digraph& d, const std::vector<Edge>& es);
Digraph reversed(const Digraph& d);

// Tail-to-head order of a transitive tournament, nullopt otherwise.
std::optional<std::vector<Vertex>> transitive_order(const Digraph& t);
// Same test restricted to the subtournament on `s`.
std::optional<std::vector<Vertex>> transitive_order(const Digraph& t, const std::vector<Vertex>& s);

// mt19937_64 keyed through one splitmix64 round; the standard pins its output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  bool bit() { return (next() >> 63) != 0; }
  std::uint64_t below(std::uint64_t bound);
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

Digraph gen_random(int n, std::uint64_t seed);
Digraph gen_transitive(int n);
Digraph gen_rotational(int ell);
// Blocks: A = [0, 2l+1), B = [2l+1, 4l+2), C = [4l+2, 4l+2+m).
Digraph gen_extremal(int m, int ell);

std::string to_text(const Digraph& d);
void write_text(std::ostream& os, const Digraph& d);
Digraph parse_text(const std::string& text);
Digraph read_text(std::istream& is);
Digraph read_file(const std::string& path);

}  // namespace tourney
