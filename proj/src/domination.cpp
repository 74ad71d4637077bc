#include "tourney/domination.hpp"

#include <cmath>

#include "tourney/connectivity.hpp"

namespace tourney {

namespace {
VertexSet alive_or_all(const Digraph& d, const VertexSet* alive) { return alive ? *alive : full_set(d.n()); }
}  // namespace

bool check_covering_edge(const Digraph& t, const CoveringEdge& ce) {
  int n = t.n();
  if (ce.v < 0 || ce.x < 0 || ce.y < 0 || ce.v >= n || ce.x >= n || ce.y >= n) return false;
  if (ce.v == ce.x || ce.v == ce.y || ce.x == ce.y) return false;
  return t.has_edge(ce.x, ce.v) && t.has_edge(ce.v, ce.y) && t.has_edge(ce.x, ce.y);
}

CoveringEdge covering_edge(const Digraph& t, Vertex v, bool check, const VertexSet* alive_p) {
  VertexSet alive = alive_or_all(t, alive_p);
  VertexSet in = t.in(v) & alive, out = t.out(v) & alive;
  if (check) {
    if (in.none() || out.none()) throw PreconditionError("N+(v), N-(v) nonempty", "vertex " + std::to_string(v));
    VertexSet rest = alive;
    rest.reset(v);
    if (!is_strongly_connected(t, rest))
      throw PreconditionError("T-v strongly connected", "removing " + std::to_string(v) + " disconnects the host");
  }
  for (auto x = in.find_first(); x != VertexSet::npos; x = in.find_next(x)) {
    VertexSet ys = t.out(x) & out;
    auto y = ys.find_first();
    if (y != VertexSet::npos) return {v, static_cast<Vertex>(x), static_cast<Vertex>(y)};
  }
  throw StageError("covering edge", "no edge from N-(v) to N+(v) for v=" + std::to_string(v), {v});
}

DominatingSet out_dom_transitive(const Digraph& t, Vertex v, int c, const VertexSet* alive_p, bool check_hypothesis, bool debug) {
  VertexSet alive = alive_or_all(t, alive_p);
  if (!alive.test(v)) throw PreconditionError("v in T", "vertex outside the host");
  VertexSet e = t.in(v) & alive;
  long long dm = static_cast<long long>(e.count());
  if (check_hypothesis && (c < 2 || (1LL << std::min(c + 1, 62)) > dm))
    throw PreconditionError("2 <= c <= log d-(v) - 1",
                            "c=" + std::to_string(c) + " with d-(v)=" + std::to_string(dm));
  DominatingSet r;
  r.v = v;
  std::vector<Vertex> picked{v};
  r.trace.push_back(static_cast<int>(e.count()));
  for (int i = 1; i < c; ++i) {
    if (e.count() < 4) break;
    // minimum in-degree inside T[E], lowest index on ties
    Vertex best = -1;
    std::size_t best_deg = 0;
    for (auto w = e.find_first(); w != VertexSet::npos; w = e.find_next(w)) {
      std::size_t dg = (t.in(w) & e).count();
      if (best < 0 || dg < best_deg) {
        best = static_cast<Vertex>(w);
        best_deg = dg;
      }
    }
    std::size_t before = e.count();
    picked.push_back(best);
    e &= t.in(best);
    r.trace.push_back(static_cast<int>(e.count()));
    if (debug && 2 * e.count() > before)
      throw StageError("dominating set", "common in-neighbourhood did not halve at step " + std::to_string(i));
  }
  if (picked.size() < 2) throw StageError("dominating set", "in-degree too small to find a second vertex", {v});
  r.order.assign(picked.rbegin(), picked.rend());
  r.exceptional = members(e);
  return r;
}

DominatingSet in_dom_transitive(const Digraph& t, Vertex v, int c, const VertexSet* alive, bool check_hypothesis, bool debug) {
  Digraph rt = reversed(t);
  DominatingSet r;
  try {
    r = out_dom_transitive(rt, v, c, alive, check_hypothesis, debug);
  } catch (const PreconditionError& e) {
    throw PreconditionError("2 <= c <= log d+(v) - 1", std::string(e.what()).substr(e.condition().size() + 2));
  }
  std::reverse(r.order.begin(), r.order.end());
  return r;
}

namespace {

DomFamily family(const Digraph& t, const std::vector<Vertex>& u, int c, const VertexSet* alive_p, bool enforce, Direction dir) {
  VertexSet alive = alive_or_all(t, alive_p);
  int n = t.n();
  VertexSet uset = make_set(n, u);
  if (!uset.is_subset_of(alive)) throw PreconditionError("U in V(T)", "U leaves the host");
  if (enforce) {
    long long need = (1LL << (c + 1)) + static_cast<long long>(c) * static_cast<long long>(u.size());
    for (auto w = alive.find_first(); w != VertexSet::npos; w = alive.find_next(w)) {
      long long dg = static_cast<long long>(((dir == Direction::out ? t.in(w) : t.out(w)) & alive).count());
      if (dg < need)
        throw PreconditionError(dir == Direction::out ? "delta-(T) >= 2^(c+1) + c|U|" : "delta+(T) >= 2^(c+1) + c|U|",
                                "vertex " + std::to_string(w) + " has degree " + std::to_string(dg) + " < " +
                                    std::to_string(need));
    }
  }
  DomFamily fam;
  fam.direction = dir;
  VertexSet used(n);
  for (Vertex v : u) {
    VertexSet host = alive - used - uset;
    host.set(v);
    DominatingSet ds = dir == Direction::out ? out_dom_transitive(t, v, c, &host, enforce) : in_dom_transitive(t, v, c, &host, enforce);
    VertexSet av = make_set(n, ds.order);
    for (DominatingSet& prev : fam.sets) {
      std::vector<Vertex> keep;
      for (Vertex x : prev.exceptional)
        if (!av.test(x)) keep.push_back(x);
      prev.exceptional = std::move(keep);
    }
    used |= av;
    fam.sets.push_back(std::move(ds));
  }
  return fam;
}

}  // namespace

DomFamily out_dom_family(const Digraph& t, const std::vector<Vertex>& u, int c, const VertexSet* alive, bool enforce) {
  return family(t, u, c, alive, enforce, Direction::out);
}

DomFamily in_dom_family(const Digraph& t, const std::vector<Vertex>& u, int c, const VertexSet* alive, bool enforce) {
  return family(t, u, c, alive, enforce, Direction::in);
}

int check_dom_family(const Digraph& t, const std::vector<Vertex>& u, const DomFamily& fam, int c, const VertexSet* alive_p) {
  VertexSet alive = alive_or_all(t, alive_p);
  int n = t.n();
  if (fam.sets.size() != u.size()) return 2;
  bool out = fam.direction == Direction::out;
  VertexSet all_a(n);
  std::vector<VertexSet> as, es;
  for (const DominatingSet& ds : fam.sets) {
    VertexSet a = make_set(n, ds.order);
    if (a.intersects(all_a) || a.count() != ds.order.size()) return 6;
    all_a |= a;
    as.push_back(a);
    es.push_back(make_set(n, ds.exceptional));
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    const DominatingSet& ds = fam.sets[i];
    // (ii) transitive with the right end at v
    if (ds.v != u[i]) return 2;
    auto ord = transitive_order(t, ds.order);
    if (!ord || *ord != ds.order) return 2;
    if ((out ? ord->back() : ord->front()) != u[i]) return 2;
    if (!as[i].is_subset_of(alive)) return 2;
    // (iv)
    if (ds.order.size() < 2 || static_cast<int>(ds.order.size()) > c) return 4;
    // (iii)
    double deg = static_cast<double>(((out ? t.in(u[i]) : t.out(u[i])) & alive).count());
    if (static_cast<double>(ds.exceptional.size()) > deg / std::pow(2.0, c - 1)) return 3;
    // (i) literal scan of every vertex outside E_v and the union of the sets
    VertexSet rest = alive - es[i] - all_a;
    for (auto w = rest.find_first(); w != VertexSet::npos; w = rest.find_next(w))
      if (!(out ? t.in(w) : t.out(w)).intersects(as[i])) return 1;
  }
  // (v)
  for (std::size_t i = 0; i < u.size(); ++i)
    if (all_a.intersects(es[i])) return 5;
  return 0;
}

}  // namespace tourney
