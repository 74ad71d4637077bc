#include "tourney/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "tourney/connectivity.hpp"
#include "tourney/hamilton.hpp"

namespace tourney {

namespace {

VertexSet alive_or_all(const Digraph& d, const VertexSet* alive) { return alive ? *alive : full_set(d.n()); }

std::vector<Vertex> lowest(const VertexSet& s, int cnt) {
  std::vector<Vertex> r;
  for (auto v = s.find_first(); v != VertexSet::npos && static_cast<int>(r.size()) < cnt; v = s.find_next(v))
    r.push_back(static_cast<Vertex>(v));
  return r;
}

int min_out_degree(const Digraph& d, const VertexSet& alive) {
  int best = d.n();
  for (auto v = alive.find_first(); v != VertexSet::npos; v = alive.find_next(v))
    best = std::min(best, static_cast<int>((d.out(v) & alive).count()));
  return best;
}

Path concat(const Path& a, const Path& b) {
  Path r = a;
  r.vertices.insert(r.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
  return r;
}

// Shortest x->y path whose interior lies in `interior`.
std::optional<Path> shortest_path(const Digraph& d, Vertex x, Vertex y, const VertexSet& interior) {
  if (x == y) return Path({x});
  if (d.has_edge(x, y)) return Path({x, y});
  std::vector<Vertex> parent(d.n(), -1);
  VertexSet seen(d.n());
  seen.set(x);
  std::vector<Vertex> frontier{x};
  while (!frontier.empty()) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      if (u != x && d.has_edge(u, y)) {
        std::vector<Vertex> p{y};
        for (Vertex w = u; w != -1; w = parent[w]) p.push_back(w);
        std::reverse(p.begin(), p.end());
        return Path(std::move(p));
      }
      VertexSet nb = d.out(u) & interior;
      nb -= seen;
      for (auto w = nb.find_first(); w != VertexSet::npos; w = nb.find_next(w)) {
        seen.set(w);
        parent[w] = u;
        next.push_back(static_cast<Vertex>(w));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

// Vertex-disjoint linkage of distinct pairs by repeated shortest paths.
PathSystem greedy_link(const Digraph& d, const Pairs& pairs, const VertexSet& alive) {
  int k = static_cast<int>(pairs.size());
  VertexSet ends(d.n());
  for (auto [x, y] : pairs) {
    ends.set(x);
    ends.set(y);
  }
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  int attempts = 3 * k + 3;
  for (int a = 0; a < attempts; ++a) {
    VertexSet free = alive - ends;
    PathSystem out(k);
    int failed = -1;
    for (int idx = 0; idx < k && failed < 0; ++idx) {
      int i = order[idx];
      auto p = shortest_path(d, pairs[i].first, pairs[i].second, free);
      if (!p) {
        failed = idx;
        break;
      }
      for (std::size_t j = 1; j + 1 < p->size(); ++j) free.reset(p->vertices[j]);
      out[i] = std::move(*p);
    }
    if (failed < 0) return out;
    std::rotate(order.begin(), order.begin() + failed, order.begin() + failed + 1);
  }
  throw LinkFailure("greedy", "no disjoint shortest-path linkage found");
}

}  // namespace

std::vector<Edge> Switch::edges() const {
  if (orientation == 1) return {{a1, b}, {b, b1}, {b, b2}, {a2, b1}, {a2, b2}};
  return {{a2, b}, {b, b1}, {b, b2}, {a1, b1}, {a1, b2}};
}

std::pair<Path, Path> Switch::paths(bool cross) const {
  Vertex t1 = cross ? b2 : b1, t2 = cross ? b1 : b2;
  if (orientation == 1) return {Path({a1, b, t1}), Path({a2, t2})};
  return {Path({a1, t1}), Path({a2, b, t2})};
}

bool check_switch(const Digraph& t, const Switch& sw) {
  std::set<Vertex> vs{sw.a1, sw.a2, sw.b, sw.b1, sw.b2};
  if (vs.size() != 5 || *vs.begin() < 0 || *vs.rbegin() >= t.n()) return false;
  if (sw.orientation != 1 && sw.orientation != 2) return false;
  for (const Edge& e : sw.edges())
    if (!t.has_edge(e.from, e.to)) return false;
  for (bool cross : {false, true}) {
    auto [p, q] = sw.paths(cross);
    if (!validate_path(t, p) || !validate_path(t, q) || !vertex_disjoint({p, q})) return false;
  }
  return true;
}

Switch find_switch(const Digraph& t, Vertex a1, Vertex a2, const VertexSet* alive_p) {
  VertexSet alive = alive_or_all(t, alive_p);
  if (a1 == a2) throw PreconditionError("a1 != a2", "switch entries coincide");
  VertexSet n1 = t.out(a1) & alive, n2 = t.out(a2) & alive;
  if (n1.count() < 7 || n2.count() < 7)
    throw PreconditionError("d+ >= 7", "entry " + std::to_string(n1.count() < 7 ? a1 : a2) + " has out-degree " +
                                           std::to_string(std::min(n1.count(), n2.count())));
  n1.reset(a2);
  std::vector<Vertex> s1 = lowest(n1, 3);
  VertexSet in1 = make_set(t.n(), s1);
  n2.reset(a1);
  n2 -= in1;
  std::vector<Vertex> s2 = lowest(n2, 3);
  VertexSet in2 = make_set(t.n(), s2);
  for (int side = 0; side < 2; ++side) {
    const auto& from = side == 0 ? s1 : s2;
    const VertexSet& other = side == 0 ? in2 : in1;
    for (Vertex b : from) {
      std::vector<Vertex> outs = lowest(t.out(b) & other, 2);
      if (outs.size() < 2) continue;
      Switch sw{a1, a2, b, outs[0], outs[1], side == 0 ? 1 : 2};
      return sw;
    }
  }
  throw LinkFailure("switch", "no middle vertex with two cross out-neighbours (input not a tournament?)");
}

int linkage_degree_requirement(const ComparatorNetwork& net) {
  return 3 * static_cast<int>(net.comparators.size()) + net.k + 7;
}

LinkageStructure build_linkage_structure(const Digraph& t, const std::vector<Vertex>& xs, const ComparatorNetwork& net,
                                         const VertexSet* alive_p) {
  VertexSet alive = alive_or_all(t, alive_p);
  int k = static_cast<int>(xs.size());
  if (k != net.k) throw PreconditionError("k", "network register count differs from number of entries");
  LinkageStructure s;
  s.net = net;
  s.xs = xs;
  s.zs = xs;
  s.vertices = VertexSet(t.n());
  for (Vertex x : xs) {
    if (x < 0 || x >= t.n() || !alive.test(x)) throw PreconditionError("entries", "entry vertex outside the host");
    if (s.vertices.test(x)) throw PreconditionError("distinct", "entry vertices repeat");
    s.vertices.set(x);
  }
  s.final_sets.push_back(s.zs);
  for (std::size_t q = 0; q < net.comparators.size(); ++q) {
    const Comparator& c = net.comparators[q];
    VertexSet host = alive - s.vertices;
    host.set(s.zs[c.s]);
    host.set(s.zs[c.t]);
    Switch sw;
    try {
      sw = find_switch(t, s.zs[c.s], s.zs[c.t], &host);
    } catch (const Error& e) {
      throw LinkFailure("comparator " + std::to_string(q), e.what(), {s.zs[c.s], s.zs[c.t]});
    }
    s.switches.push_back(sw);
    for (Vertex v : {sw.b, sw.b1, sw.b2}) s.vertices.set(v);
    for (const Edge& e : sw.edges()) s.edges.push_back(e);
    s.zs[c.s] = sw.b1;
    s.zs[c.t] = sw.b2;
    s.final_sets.push_back(s.zs);
  }
  return s;
}

bool check_linkage_structure(const Digraph& t, const LinkageStructure& s) {
  int k = s.net.k;
  int r = static_cast<int>(s.net.comparators.size());
  if (static_cast<int>(s.vertices.count()) != 3 * r + k) return false;
  if (static_cast<int>(s.switches.size()) != r || static_cast<int>(s.final_sets.size()) != r + 1) return false;
  if (std::set<Vertex>(s.zs.begin(), s.zs.end()).size() != s.zs.size()) return false;
  for (Vertex x : s.xs)
    if (!s.vertices.test(x)) return false;
  for (const Edge& e : s.edges)
    if (!t.has_edge(e.from, e.to) || !s.vertices.test(e.from) || !s.vertices.test(e.to)) return false;
  VertexSet seen = make_set(t.n(), s.xs);
  for (int q = 0; q < r; ++q) {
    const Switch& sw = s.switches[q];
    const Comparator& c = s.net.comparators[q];
    if (!check_switch(t, sw)) return false;
    if (sw.a1 != s.final_sets[q][c.s] || sw.a2 != s.final_sets[q][c.t]) return false;
    for (Vertex v : {sw.b, sw.b1, sw.b2}) {
      if (seen.test(v)) return false;
      seen.set(v);
    }
  }
  return s.final_sets.back() == s.zs;
}

PathSystem route(const LinkageStructure& s, const std::vector<int>& pi) {
  int k = s.net.k;
  PermutationTrace tr = trace_permutation(s.net, pi);
  PathSystem paths(k);
  // paths[v] belongs to value v; reg[v] is its current register.
  for (int v = 0; v < k; ++v) paths[v] = Path({s.xs[pi[v]]});
  std::vector<int> value_at(k);
  for (int v = 0; v < k; ++v) value_at[pi[v]] = v;
  for (std::size_t q = 0; q < s.net.comparators.size(); ++q) {
    const Comparator& c = s.net.comparators[q];
    int vs = value_at[c.s], vt = value_at[c.t];
    bool sw = tr.swapped[q];
    auto [ps, pt] = s.switches[q].paths(sw);
    paths[vs] = concat(paths[vs], ps);
    paths[vt] = concat(paths[vt], pt);
    if (sw) std::swap(value_at[c.s], value_at[c.t]);
  }
  return paths;
}

PathSystem link(const Digraph& t, const Pairs& pairs, Mode mode, const VertexSet* alive_p) {
  VertexSet alive = alive_or_all(t, alive_p);
  int k = static_cast<int>(pairs.size());
  if (k == 0) return {};
  std::vector<Vertex> xs, ys;
  VertexSet ends(t.n());
  for (auto [x, y] : pairs) {
    for (Vertex v : {x, y}) {
      if (v < 0 || v >= t.n() || !alive.test(v)) throw PreconditionError("endpoints", "endpoint outside the host");
      if (ends.test(v)) throw PreconditionError("distinct", "link needs 2k distinct endpoints");
      ends.set(v);
    }
    xs.push_back(x);
    ys.push_back(y);
  }
  ComparatorNetwork net = k >= 2 ? batcher(k) : ComparatorNetwork{1, {}};
  VertexSet noy = alive - make_set(t.n(), ys);

  if (mode == Mode::strict) {
    long long need = k == 1 ? 1 : static_cast<long long>(std::ceil(1e4 * k * std::log2(static_cast<double>(k))));
    int order = static_cast<int>(alive.count());
    bool ok = need < order && is_strongly_k_connected(induced(t, alive).graph, static_cast<int>(need));
    if (!ok) throw PreconditionError("kappa >= 10^4 k log k", "host is not strongly " + std::to_string(need) + "-connected");
  }
  if (mode == Mode::operational) {
    int need = linkage_degree_requirement(net);
    int got = min_out_degree(t, noy);
    if (k >= 2 && got < need)
      throw PreconditionError("delta+(T-Y) >= 3r+k+7", "min out-degree " + std::to_string(got) + " < " + std::to_string(need));
  }

  LinkageStructure s = build_linkage_structure(t, xs, net, &noy);
  VertexSet host = alive - s.vertices;
  for (Vertex z : s.zs) host.set(z);
  if (mode == Mode::operational && k >= 2 && !is_strongly_k_connected(induced(t, host).graph, k))
    throw PreconditionError("kappa(T - (V(D)\\Z)) >= k", "remaining host is not strongly " + std::to_string(k) + "-connected");
  MengerResult m = menger_paths(t, make_set(t.n(), s.zs), make_set(t.n(), ys), k, &host);
  if (!m.success) throw LinkFailure("menger", "Z cannot be joined to Y", members(m.cut));

  std::map<Vertex, int> z_index, y_index;
  for (int i = 0; i < k; ++i) {
    z_index[s.zs[i]] = i;
    y_index[ys[i]] = i;
  }
  std::vector<int> pi(k, -1);
  std::vector<Path> tail_of(k);
  for (const Path& p : m.paths) {
    int i = z_index.at(p.tail());
    pi[i] = y_index.at(p.head());
    tail_of[i] = p;
  }
  PathSystem q = route(s, pi);
  PathSystem out(k);
  for (int i = 0; i < k; ++i) out[pi[i]] = concat(q[i], tail_of[i]);
  return out;
}

InternalLinkage link_internally_disjoint(const Digraph& d, const Pairs& pairs, LinkBackend backend, const VertexSet* alive_p) {
  VertexSet alive = alive_or_all(d, alive_p);
  int k = static_cast<int>(pairs.size());
  VertexSet ends(d.n());
  for (auto [x, y] : pairs) {
    for (Vertex v : {x, y})
      if (v < 0 || v >= d.n() || !alive.test(v)) throw PreconditionError("endpoints", "endpoint outside the host");
    ends.set(x);
    ends.set(y);
  }
  InternalLinkage out;
  out.paths.assign(k, Path());
  out.degenerate.assign(k, false);

  // Repeated endpoint occurrences are moved onto private neighbours (clones).
  VertexSet taken(d.n());  // endpoints of the distinct linkage
  VertexSet clones(d.n());
  Pairs distinct;
  std::vector<int> slot(k, -1);
  std::vector<Vertex> pre(k, -1), post(k, -1);
  auto clone = [&](Vertex v, bool forward) {
    VertexSet cand = (forward ? d.out(v) : d.in(v)) & alive;
    cand -= ends;
    cand -= clones;
    auto w = cand.find_first();
    if (w == VertexSet::npos) throw LinkFailure("clone", "no free neighbour to split repeated endpoint " + std::to_string(v), {v});
    clones.set(w);
    return static_cast<Vertex>(w);
  };
  for (int i = 0; i < k; ++i) {
    auto [x, y] = pairs[i];
    if (x == y) {
      out.paths[i] = Path({x});
      out.degenerate[i] = true;
      continue;
    }
    Vertex xx = x, yy = y;
    if (taken.test(x)) {
      xx = clone(x, true);
      pre[i] = x;
    }
    taken.set(x);
    if (taken.test(y)) {
      yy = clone(y, false);
      post[i] = y;
    }
    taken.set(y);
    slot[i] = static_cast<int>(distinct.size());
    distinct.push_back({xx, yy});
  }
  // endpoints used only by degenerate pairs stay out of every interior
  VertexSet host = alive - (ends - taken);
  PathSystem lp;
  if (!distinct.empty())
    lp = backend == LinkBackend::greedy ? greedy_link(d, distinct, host) : link(d, distinct, Mode::best_effort, &host);
  for (int i = 0; i < k; ++i) {
    if (slot[i] < 0) continue;
    Path p = lp[slot[i]];
    if (pre[i] >= 0) p.vertices.insert(p.vertices.begin(), pre[i]);
    if (post[i] >= 0) p.vertices.push_back(post[i]);
    out.paths[i] = std::move(p);
  }
  return out;
}

bool check_internally_disjoint(const Digraph& d, const Pairs& pairs, const PathSystem& ps) {
  if (ps.size() != pairs.size()) return false;
  VertexSet ends(d.n()), used(d.n());
  for (auto [x, y] : pairs) {
    ends.set(x);
    ends.set(y);
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Path& p = ps[i];
    if (!validate_path(d, p) || p.tail() != pairs[i].first || p.head() != pairs[i].second) return false;
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      Vertex v = p.vertices[j];
      if (ends.test(v) || used.test(v)) return false;
      used.set(v);
    }
  }
  return true;
}

PathSystem link_short(const Digraph& d, const Pairs& pairs, int s, LinkBackend backend, const VertexSet* alive_p) {
  if (s < 1) throw PreconditionError("s >= 1", "shortness parameter");
  VertexSet alive = alive_or_all(d, alive_p);
  int k = static_cast<int>(pairs.size());
  // with s = 1 the bound |P| <= |D| is automatic, so one family suffices
  int families = s == 1 ? 1 : 2 * s;
  Pairs expanded;
  for (int j = 0; j < families; ++j) expanded.insert(expanded.end(), pairs.begin(), pairs.end());
  InternalLinkage all = link_internally_disjoint(d, expanded, backend, &alive);
  int best = -1;
  std::size_t best_size = 0;
  for (int j = 0; j < families; ++j) {
    PathSystem fam(all.paths.begin() + j * k, all.paths.begin() + (j + 1) * k);
    std::size_t sz = covered(d.n(), fam).count();
    if (best < 0 || sz < best_size) {
      best = j;
      best_size = sz;
    }
  }
  if (k > 0 && best_size * static_cast<std::size_t>(s) > alive.count())
    throw LinkFailure("short bound", "shortest family has " + std::to_string(best_size) + " vertices, above |D|/s");
  if (k == 0) return {};
  return PathSystem(all.paths.begin() + best * k, all.paths.begin() + (best + 1) * k);
}

PathSystem link_with_paths(const Digraph& t, const Pairs& pairs, const std::vector<PathSystem>& qs, int s, LinkBackend backend,
                           const VertexSet* alive_p) {
  VertexSet alive = alive_or_all(t, alive_p);
  int k = static_cast<int>(pairs.size());
  if (static_cast<int>(qs.size()) != k) throw PreconditionError("systems", "one path system per pair required");
  VertexSet ends(t.n()), qv(t.n()), qends(t.n());
  for (auto [x, y] : pairs) {
    if (ends.test(x) || ends.test(y) || x == y) throw PreconditionError("distinct", "pairs need 2k distinct vertices");
    ends.set(x);
    ends.set(y);
  }
  std::set<Edge> qedges;
  for (int i = 0; i < k; ++i) {
    if (!vertex_disjoint(qs[i])) throw PreconditionError("path system", "system " + std::to_string(i) + " is not vertex-disjoint");
    for (const Path& q : qs[i]) {
      if (!validate_path(t, q)) throw PreconditionError("path system", "system " + std::to_string(i) + " has an invalid path");
      for (Vertex v : q.vertices) {
        if (ends.test(v)) throw PreconditionError("avoid endpoints", "path system meets a terminal");
        if (!alive.test(v)) throw PreconditionError("host", "path system leaves the host");
        qv.set(v);
      }
      qends.set(q.tail());
      qends.set(q.head());
    }
  }
  for (int i = 0; i < k; ++i)
    for (const Path& q : qs[i])
      for (const Edge& e : q.edges())
        if (!qedges.insert(e).second) throw PreconditionError("edge-disjoint", "two path systems share an edge");

  // T': drop interiors of the given paths and every edge they use.
  VertexSet host = (alive - qv) | qends;
  Digraph tp = remove_edges(t, std::vector<Edge>(qedges.begin(), qedges.end()));

  Pairs x_pairs;
  std::vector<std::vector<int>> order(k);
  for (int i = 0; i < k; ++i) {
    std::vector<int> left(qs[i].size());
    for (std::size_t j = 0; j < left.size(); ++j) left[j] = static_cast<int>(j);
    Vertex cur = pairs[i].first;
    while (!left.empty()) {
      // prefer a path whose tail is already an out-neighbour of the current end
      auto it = std::find_if(left.begin(), left.end(), [&](int j) { return tp.has_edge(cur, qs[i][j].tail()); });
      if (it == left.end()) it = left.begin();
      x_pairs.push_back({cur, qs[i][*it].tail()});
      cur = qs[i][*it].head();
      order[i].push_back(*it);
      left.erase(it);
    }
    x_pairs.push_back({cur, pairs[i].second});
  }
  PathSystem links = link_short(tp, x_pairs, s, backend, &host);
  PathSystem out(k);
  std::size_t at = 0;
  for (int i = 0; i < k; ++i) {
    Path p = links[at++];
    for (int j : order[i]) {
      p = concat(p, qs[i][j]);
      p = concat(p, links[at++]);
    }
    out[i] = std::move(p);
  }
  return out;
}

int check_link_with_paths(const Digraph& t, const Pairs& pairs, const std::vector<PathSystem>& qs, int s,
                          const PathSystem& out, int host_order) {
  int k = static_cast<int>(pairs.size());
  if (static_cast<int>(out.size()) != k) return 1;
  for (int i = 0; i < k; ++i)
    if (!validate_path(t, out[i]) || out[i].tail() != pairs[i].first || out[i].head() != pairs[i].second) return 1;
  for (int i = 0; i < k; ++i)
    for (const Path& q : qs[i]) {
      const auto& pv = out[i].vertices;
      auto it = std::search(pv.begin(), pv.end(), q.vertices.begin(), q.vertices.end());
      if (it == pv.end()) return 2;
    }
  std::vector<VertexSet> pv, qv;
  VertexSet all_q(t.n()), all_p(t.n());
  for (int i = 0; i < k; ++i) {
    pv.push_back(make_set(t.n(), out[i].vertices));
    qv.push_back(covered(t.n(), qs[i]));
    all_q |= qv.back();
    all_p |= pv.back();
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!(pv[i] & pv[j]).is_subset_of(qv[i] & qv[j])) return 3;
  if (static_cast<double>(all_p.count()) > static_cast<double>(host_order) / s + static_cast<double>(all_q.count())) return 4;
  std::set<Edge> es;
  for (const Path& p : out)
    for (const Edge& e : p.edges())
      if (!es.insert(e).second) return 5;
  return 0;
}

namespace {
bool search_pair(const Digraph& d, const Pairs& pairs, std::size_t i, VertexSet& used, Vertex u) {
  Vertex y = pairs[i].second;
  if (u == y) {
    if (i + 1 == pairs.size()) return true;
    return search_pair(d, pairs, i + 1, used, pairs[i + 1].first);
  }
  for (Vertex w : members(d.out(u))) {
    if (used.test(w) && w != y) continue;
    if (w == y) {
      if (search_pair(d, pairs, i, used, y)) return true;
      continue;
    }
    used.set(w);
    if (search_pair(d, pairs, i, used, w)) return true;
    used.reset(w);
  }
  return false;
}
}  // namespace

bool brute_force_link(const Digraph& d, const Pairs& pairs) {
  if (d.n() > 10 || pairs.size() > 2) throw GuardError("brute_force_link: n <= 10 and k <= 2 only");
  if (pairs.empty()) return true;
  VertexSet used(d.n());
  for (auto [x, y] : pairs) {
    used.set(x);
    used.set(y);
  }
  return search_pair(d, pairs, 0, used, pairs[0].first);
}

bool brute_force_is_k_linked(const Digraph& d, int k) {
  int n = d.n();
  if (n > 10 || k > 2) throw GuardError("brute_force_is_k_linked: n <= 10 and k <= 2 only");
  if (n < 2 * k) return false;
  std::vector<Vertex> tup(2 * k);
  auto rec = [&](auto&& self, int pos, std::uint32_t usedm) -> bool {
    if (pos == 2 * k) {
      Pairs ps;
      for (int i = 0; i < k; ++i) ps.push_back({tup[i], tup[k + i]});
      return brute_force_link(d, ps);
    }
    for (int v = 0; v < n; ++v) {
      if (usedm >> v & 1) continue;
      tup[pos] = v;
      if (!self(self, pos + 1, usedm | (1u << v))) return false;
    }
    return true;
  };
  return rec(rec, 0, 0);
}

}  // namespace tourney
