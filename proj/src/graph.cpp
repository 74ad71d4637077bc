#include "tourney/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tourney {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::strict: return "strict";
    case Mode::operational: return "operational";
    case Mode::best_effort: return "best-effort";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "strict") return Mode::strict;
  if (s == "operational") return Mode::operational;
  if (s == "best-effort" || s == "best_effort") return Mode::best_effort;
  throw Error("unknown mode '" + s + "'");
}

std::vector<Vertex> members(const VertexSet& s) {
  std::vector<Vertex> r;
  r.reserve(s.count());
  for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) r.push_back(static_cast<Vertex>(i));
  return r;
}

VertexSet make_set(int n, const std::vector<Vertex>& vs) {
  VertexSet s(n);
  for (Vertex v : vs) s.set(v);
  return s;
}

VertexSet full_set(int n) {
  VertexSet s(n);
  s.set();
  return s;
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> r;
  r.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (Vertex v : members(out_[u])) r.push_back({u, v});
  return r;
}

DigraphBuilder::DigraphBuilder(int n) : n_(n), out_(n, VertexSet(n)) {
  if (n < 0) throw PreconditionError("n >= 0", "negative vertex count");
}

DigraphBuilder::DigraphBuilder(const Digraph& d) : n_(d.n()), out_(d.n_ ? d.out_ : std::vector<VertexSet>{}) {}

void DigraphBuilder::add_edge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw PreconditionError("vertex range", "edge endpoint out of range");
  if (u == v) throw PreconditionError("loop", "loop at vertex " + std::to_string(u));
  out_[u].set(v);
}

void DigraphBuilder::remove_edge(Vertex u, Vertex v) { out_[u].reset(v); }

Digraph DigraphBuilder::build() const {
  Digraph d;
  d.n_ = n_;
  d.out_ = out_;
  d.in_.assign(n_, VertexSet(n_));
  for (int u = 0; u < n_; ++u)
    for (auto v = out_[u].find_first(); v != VertexSet::npos; v = out_[u].find_next(v)) d.in_[v].set(u);
  d.dout_.resize(n_);
  d.din_.resize(n_);
  for (int v = 0; v < n_; ++v) {
    d.dout_[v] = static_cast<int>(d.out_[v].count());
    d.din_[v] = static_cast<int>(d.in_[v].count());
    d.m_ += d.dout_[v];
    if (d.out_[v].intersects(d.in_[v])) d.oriented_ = false;
    if (d.dout_[v] + d.din_[v] != n_ - 1) d.tournament_ = false;
  }
  d.tournament_ = d.tournament_ && d.oriented_;
  return d;
}

Digraph from_adjacency(const std::vector<std::vector<bool>>& m) {
  int n = static_cast<int>(m.size());
  DigraphBuilder b(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) throw PreconditionError("square", "row " + std::to_string(i) + " has wrong length");
    if (m[i][i]) throw PreconditionError("loop", "loop at vertex " + std::to_string(i));
    for (int j = 0; j < n; ++j)
      if (m[i][j]) b.add_edge(i, j);
  }
  return b.build();
}

DegreeSummary degrees(const Digraph& d) {
  DegreeSummary s;
  int n = d.n();
  s.out.resize(n);
  s.in.resize(n);
  if (n == 0) return s;
  s.min_out = s.min_in = s.min_total = n * 2;
  for (int v = 0; v < n; ++v) {
    s.out[v] = d.out_degree(v);
    s.in[v] = d.in_degree(v);
    s.min_out = std::min(s.min_out, s.out[v]);
    s.min_in = std::min(s.min_in, s.in[v]);
    s.max_out = std::max(s.max_out, s.out[v]);
    s.max_in = std::max(s.max_in, s.in[v]);
    s.min_total = std::min(s.min_total, s.out[v] + s.in[v]);
  }
  s.min_semi = std::min(s.min_out, s.min_in);
  return s;
}

InducedSubgraph induced(const Digraph& d, const VertexSet& keep) {
  if (static_cast<int>(keep.size()) != d.n()) throw PreconditionError("subset", "vertex set sized for a different graph");
  InducedSubgraph r;
  r.from_parent.assign(d.n(), -1);
  r.to_parent = members(keep);
  for (std::size_t i = 0; i < r.to_parent.size(); ++i) r.from_parent[r.to_parent[i]] = static_cast<Vertex>(i);
  DigraphBuilder b(static_cast<int>(r.to_parent.size()));
  for (std::size_t i = 0; i < r.to_parent.size(); ++i) {
    VertexSet o = d.out(r.to_parent[i]) & keep;
    for (auto v = o.find_first(); v != VertexSet::npos; v = o.find_next(v)) b.add_edge(static_cast<Vertex>(i), r.from_parent[v]);
  }
  r.graph = b.build();
  return r;
}

InducedSubgraph remove_vertices(const Digraph& d, const VertexSet& drop) { return induced(d, ~drop); }

Digraph remove_edges(const Digraph& d, const std::vector<Edge>& es) {
  DigraphBuilder b(d);
  for (const Edge& e : es) {
    if (!d.has_edge(e.from, e.to))
      throw PreconditionError("edge present", std::to_string(e.from) + "->" + std::to_string(e.to) + " not in graph");
    b.remove_edge(e.from, e.to);
  }
  return b.build();
}

Digraph reversed(const Digraph& d) {
  DigraphBuilder b(d.n());
  for (const Edge& e : d.edges()) b.add_edge(e.to, e.from);
  return b.build();
}

std::optional<std::vector<Vertex>> transitive_order(const Digraph& t, const std::vector<Vertex>& s) {
  // In a transitive tournament on s the out-degrees inside s are exactly 0..|s|-1.
  int m = static_cast<int>(s.size());
  VertexSet in_s = make_set(t.n(), s);
  std::vector<Vertex> order(m, -1);
  for (Vertex v : s) {
    int d = static_cast<int>((t.out(v) & in_s).count());
    int e = static_cast<int>((t.in(v) & in_s).count());
    if (d + e != m - 1) return std::nullopt;
    int pos = m - 1 - d;
    if (order[pos] != -1) return std::nullopt;
    order[pos] = v;
  }
  for (int i = 0; i + 1 < m; ++i)
    if (!t.has_edge(order[i], order[i + 1])) return std::nullopt;
  return order;
}

std::optional<std::vector<Vertex>> transitive_order(const Digraph& t) {
  if (!t.is_tournament()) throw PreconditionError("tournament", "transitive_order needs a tournament");
  std::vector<Vertex> all(t.n());
  for (int i = 0; i < t.n(); ++i) all[i] = i;
  return transitive_order(t, all);
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

std::uint64_t Rng::next() { return eng_(); }

std::uint64_t Rng::below(std::uint64_t bound) {
  // rejection sampling keeps this exact and portable (std distributions are not)
  if (bound <= 1) return 0;
  std::uint64_t lim = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
  for (;;) {
    std::uint64_t x = next();
    if (x < lim) return x % bound;
  }
}

Digraph gen_random(int n, std::uint64_t seed) {
  Rng rng(seed);
  DigraphBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (rng.bit())
        b.add_edge(i, j);
      else
        b.add_edge(j, i);
    }
  return b.build();
}

Digraph gen_transitive(int n) {
  DigraphBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
  return b.build();
}

Digraph gen_rotational(int ell) {
  if (ell < 1) throw PreconditionError("ell >= 1", "rotational tournament needs ell >= 1");
  int n = 2 * ell + 1;
  DigraphBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int t = 1; t <= ell; ++t) b.add_edge(i, (i + t) % n);
  return b.build();
}

Digraph gen_extremal(int m, int ell) {
  if (m < 1 || ell < 1) throw PreconditionError("m, ell >= 1", "extremal tournament parameters");
  int q = 2 * ell + 1;
  int n = 2 * q + m;
  DigraphBuilder b(n);
  auto a = [](int i) { return i; };
  auto bb = [q](int i) { return q + i; };
  auto c = [q](int i) { return 2 * q + i; };
  for (int i = 0; i < q; ++i)
    for (int t = 1; t <= ell; ++t) {
      b.add_edge(a(i), a((i + t) % q));
      b.add_edge(bb(i), bb((i + t) % q));
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) b.add_edge(c(i), c(j));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < m; ++j) {
      b.add_edge(a(i), c(j));
      b.add_edge(c(j), bb(i));
    }
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      if (i == j)
        b.add_edge(bb(j), a(i));
      else
        b.add_edge(a(i), bb(j));
    }
  return b.build();
}

void write_text(std::ostream& os, const Digraph& d) {
  os << d.n() << '\n';
  std::string row(d.n(), '0');
  for (int i = 0; i < d.n(); ++i) {
    for (int j = 0; j < d.n(); ++j) row[j] = d.has_edge(i, j) ? '1' : '0';
    os << row << '\n';
  }
}

std::string to_text(const Digraph& d) {
  std::ostringstream os;
  write_text(os, d);
  return os.str();
}

Digraph read_text(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(is, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next_line()) throw ParseError(1, 1, "empty input");
  std::size_t k = 0;
  while (k < line.size() && line[k] == ' ') ++k;
  std::size_t start = k;
  long long n = 0;
  while (k < line.size() && line[k] >= '0' && line[k] <= '9') {
    n = n * 10 + (line[k] - '0');
    if (n > 1000000) throw ParseError(lineno, start + 1, "vertex count too large");
    ++k;
  }
  if (k == start) throw ParseError(lineno, k + 1, "expected vertex count");
  while (k < line.size() && line[k] == ' ') ++k;
  if (k != line.size()) throw ParseError(lineno, k + 1, "trailing characters after vertex count");
  int nn = static_cast<int>(n);
  DigraphBuilder b(nn);
  for (int i = 0; i < nn; ++i) {
    if (!next_line()) throw ParseError(lineno + 1, 1, "missing row " + std::to_string(i));
    if (line.size() < static_cast<std::size_t>(nn))
      throw ParseError(lineno, line.size() + 1, "row too short");
    for (int j = 0; j < nn; ++j) {
      char ch = line[j];
      if (ch != '0' && ch != '1') throw ParseError(lineno, j + 1, std::string("unexpected character '") + ch + "'");
      if (ch == '1') {
        if (i == j) throw ParseError(lineno, j + 1, "loop on the diagonal");
        b.add_edge(i, j);
      }
    }
    if (line.size() > static_cast<std::size_t>(nn)) throw ParseError(lineno, nn + 1, "row too long");
  }
  while (next_line())
    if (line.find_first_not_of(" \t") != std::string::npos) throw ParseError(lineno, 1, "trailing data after matrix");
  return b.build();
}

Digraph parse_text(const std::string& text) {
  std::istringstream is(text);
  return read_text(is);
}

Digraph read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  return read_text(f);
}

}  // namespace tourney
