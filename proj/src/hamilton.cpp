#include "tourney/hamilton.hpp"

#include <algorithm>
#include <set>

#include "tourney/connectivity.hpp"

namespace tourney {

Path hamilton_path(const Digraph& t) {
  if (!t.is_tournament()) throw PreconditionError("tournament", "hamilton_path needs a tournament");
  std::vector<Vertex> p;
  for (Vertex v = 0; v < t.n(); ++v) {
    if (p.empty() || t.has_edge(v, p.front())) {
      p.insert(p.begin(), v);
      continue;
    }
    if (t.has_edge(p.back(), v)) {
      p.push_back(v);
      continue;
    }
    std::size_t lo = 0, hi = p.size() - 1;  // invariant p[lo]->v, v->p[hi]
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (t.has_edge(p[mid], v))
        lo = mid;
      else
        hi = mid;
    }
    p.insert(p.begin() + static_cast<std::ptrdiff_t>(hi), v);
  }
  return Path(std::move(p));
}

Cycle hamilton_cycle_camion(const Digraph& t) {
  if (!t.is_tournament()) throw PreconditionError("tournament", "camion needs a tournament");
  int n = t.n();
  VertexSet all = full_set(n);
  if (n < 3 || !is_strongly_connected(t)) throw NotStronglyConnected(sink_component(t, all));

  // Seed with a directed triangle through 0: 0 -> a -> b -> 0.
  std::vector<Vertex> c;
  for (Vertex a : members(t.out(0))) {
    VertexSet back = t.out(a) & t.in(0);
    auto b = back.find_first();
    if (b != VertexSet::npos) {
      c = {0, a, static_cast<Vertex>(b)};
      break;
    }
  }
  VertexSet on(n);
  for (Vertex v : c) on.set(v);

  while (static_cast<int>(c.size()) < n) {
    bool grown = false;
    VertexSet off = ~on;
    for (auto u = off.find_first(); u != VertexSet::npos && !grown; u = off.find_next(u)) {
      if (!t.in(u).intersects(on) || !t.out(u).intersects(on)) continue;
      for (std::size_t i = 0; i < c.size(); ++i) {
        Vertex x = c[i], y = c[(i + 1) % c.size()];
        if (t.has_edge(x, static_cast<Vertex>(u)) && t.has_edge(static_cast<Vertex>(u), y)) {
          c.insert(c.begin() + static_cast<std::ptrdiff_t>(i + 1), static_cast<Vertex>(u));
          on.set(u);
          grown = true;
          break;
        }
      }
    }
    if (grown) continue;
    // Every outside vertex is dominated by C or dominates C. Strong connectivity gives
    // an edge u->w with u dominated by C and w dominating C: c0 -> u -> w -> c1.
    VertexSet dominated(n), dominating(n);
    for (auto u = off.find_first(); u != VertexSet::npos; u = off.find_next(u)) {
      if (t.in(u).intersects(on))
        dominated.set(u);
      else
        dominating.set(u);
    }
    for (auto u = dominated.find_first(); u != VertexSet::npos && !grown; u = dominated.find_next(u)) {
      VertexSet ws = t.out(u) & dominating;
      auto w = ws.find_first();
      if (w == VertexSet::npos) continue;
      c.insert(c.begin() + 1, {static_cast<Vertex>(u), static_cast<Vertex>(w)});
      on.set(u);
      on.set(w);
      grown = true;
    }
    if (!grown) throw NotStronglyConnected(sink_component(t, all));
  }
  return Cycle{std::move(c)};
}

bool validate_path(const Digraph& d, const Path& p, bool hamilton) {
  if (p.vertices.empty()) return false;
  VertexSet seen(d.n());
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    Vertex v = p.vertices[i];
    if (v < 0 || v >= d.n() || seen.test(v)) return false;
    seen.set(v);
    if (i > 0 && !d.has_edge(p.vertices[i - 1], v)) return false;
  }
  return !hamilton || static_cast<int>(p.vertices.size()) == d.n();
}

bool validate_cycle(const Digraph& d, const Cycle& c, bool hamilton) {
  std::size_t m = c.vertices.size();
  if (m < 2) return false;
  VertexSet seen(d.n());
  for (std::size_t i = 0; i < m; ++i) {
    Vertex v = c.vertices[i];
    if (v < 0 || v >= d.n() || seen.test(v)) return false;
    seen.set(v);
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!d.has_edge(c.vertices[i], c.vertices[(i + 1) % m])) return false;
  return !hamilton || static_cast<int>(m) == d.n();
}

bool edge_disjoint(const std::vector<Cycle>& cycles) {
  std::set<Edge> used;
  for (const Cycle& c : cycles)
    for (const Edge& e : c.edges())
      if (!used.insert(e).second) return false;
  return true;
}

bool vertex_disjoint(const PathSystem& ps) {
  std::set<Vertex> used;
  for (const Path& p : ps)
    for (Vertex v : p.vertices)
      if (!used.insert(v).second) return false;
  return true;
}

std::optional<Cycle> brute_force_hamilton(const Digraph& t) {
  int n = t.n();
  if (n > 14) throw GuardError("brute_force_hamilton: n > 14");
  if (n < 2) return std::nullopt;
  // reach[mask][v]: a path from 0 through mask ending at v (0 in mask).
  std::size_t full = std::size_t{1} << n;
  std::vector<std::uint16_t> ends(full, 0);
  std::vector<std::int8_t> from(full * n, -1);
  ends[1] = 1;
  for (std::size_t mask = 1; mask < full; mask += 2) {
    if (!ends[mask]) continue;
    for (int v = 0; v < n; ++v) {
      if (!(ends[mask] >> v & 1)) continue;
      for (int w = 1; w < n; ++w) {
        if ((mask >> w & 1) || !t.has_edge(v, w)) continue;
        std::size_t nm = mask | (std::size_t{1} << w);
        if (!(ends[nm] >> w & 1)) {
          ends[nm] |= static_cast<std::uint16_t>(1u << w);
          from[nm * n + w] = static_cast<std::int8_t>(v);
        }
      }
    }
  }
  std::size_t all = full - 1;
  for (int v = 1; v < n; ++v) {
    if (!(ends[all] >> v & 1) || !t.has_edge(v, 0)) continue;
    std::vector<Vertex> seq;
    std::size_t mask = all;
    int x = v;
    while (x != 0) {
      seq.push_back(x);
      int px = from[mask * n + x];
      mask &= ~(std::size_t{1} << x);
      x = px;
    }
    seq.push_back(0);
    std::reverse(seq.begin(), seq.end());
    return Cycle{seq};
  }
  return std::nullopt;
}

}  // namespace tourney
