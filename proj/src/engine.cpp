#include "tourney/engine.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "tourney/connectivity.hpp"
#include "tourney/hamilton.hpp"
#include "tourney/linkage.hpp"
#include "tourney/path_cover.hpp"

namespace tourney {

namespace {

std::string str(long long v) { return std::to_string(v); }

VertexSet union_of(int n, const std::vector<std::vector<Vertex>>& sets) {
  VertexSet r(n);
  for (const auto& s : sets)
    for (Vertex v : s) r.set(v);
  return r;
}

std::set<Edge> edge_set(const std::vector<Path>& ps) {
  std::set<Edge> es;
  for (const Path& p : ps)
    for (const Edge& e : p.edges()) es.insert(e);
  return es;
}

std::vector<Edge> edges_of(const std::vector<CoveringEdge>& f) {
  std::vector<Edge> r;
  for (const auto& ce : f) r.push_back(ce.edge());
  return r;
}

// Collects one condition: a structural error always fails, a quantitative one fails
// unless waived.
class Recorder {
 public:
  explicit Recorder(ConditionReport& rep) : rep_(rep) {}
  void begin(std::string name) {
    name_ = std::move(name);
    hard_.clear();
    soft_.clear();
  }
  void hard(bool ok, const std::string& what) {
    if (!ok && hard_.empty()) hard_ = what;
  }
  void soft(bool ok, const std::string& what) {
    if (!ok && soft_.empty()) soft_ = what;
  }
  bool end(bool waive) {
    ConditionResult r;
    r.name = name_;
    if (!hard_.empty()) {
      r.status = CheckStatus::fail;
      r.detail = hard_;
    } else if (!soft_.empty()) {
      r.status = waive ? CheckStatus::waived : CheckStatus::fail;
      r.detail = soft_;
    }
    rep_.conditions.push_back(r);
    return hard_.empty();
  }

 private:
  ConditionReport& rep_;
  std::string name_, hard_, soft_;
};

bool transitive_as_stored(const Digraph& t, const std::vector<Vertex>& s) {
  auto ord = transitive_order(t, s);
  return ord && *ord == s;
}

// Every vertex of `targets` has an in-neighbour (out) / out-neighbour (in) in `set`.
bool dominates(const Digraph& t, const std::vector<Vertex>& set, const VertexSet& targets, bool out, Vertex* miss) {
  VertexSet s = make_set(t.n(), set);
  for (auto w = targets.find_first(); w != VertexSet::npos; w = targets.find_next(w))
    if (!(out ? t.in(w) : t.out(w)).intersects(s)) {
      if (miss) *miss = static_cast<Vertex>(w);
      return false;
    }
  return true;
}

}  // namespace

EngineConfig default_config(Mode mode, const Digraph& t, int k) {
  EngineConfig cfg;
  cfg.mode = mode;
  if (mode != Mode::best_effort) {
    cfg.C = 1e7;
    cfg.t = 164 * k;
    cfg.c = static_cast<int>(std::ceil(std::log2(50.0 * cfg.t) + 1));
    cfg.s = 30;
    return cfg;
  }
  int n = std::max(t.n(), 2);
  int d0 = std::max(degrees(t).min_semi, 1);
  // 2kt sets of size c plus two covering-edge endpoints per member must fit, so
  // shrink t before letting c fall below 3
  cfg.t = 2 * k + 2;
  if (8 * k * cfg.t * 3 > n) cfg.t = std::max(2, n / (24 * k));
  int c = static_cast<int>(std::ceil(std::log2(n)));
  c = std::min(c, static_cast<int>(std::floor(std::log2(d0))) - 1);
  c = std::min(c, n / (8 * k * cfg.t));
  cfg.c = std::max(c, 2);
  cfg.s = 1;
  return cfg;
}

nlohmann::json to_json(const EngineConfig& cfg) {
  return {{"C", cfg.C}, {"t", cfg.t}, {"c", cfg.c}, {"s", cfg.s}, {"mode", to_string(cfg.mode)}, {"debug", cfg.debug}};
}

std::vector<Vertex> GoodStructure::heads_A() const {
  std::vector<Vertex> r;
  for (const auto& row : A)
    for (const auto& s : row) r.push_back(s.back());
  return r;
}
std::vector<Vertex> GoodStructure::tails_A() const {
  std::vector<Vertex> r;
  for (const auto& row : A)
    for (const auto& s : row) r.push_back(s.front());
  return r;
}
std::vector<Vertex> GoodStructure::heads_B() const {
  std::vector<Vertex> r;
  for (const auto& row : B)
    for (const auto& s : row) r.push_back(s.back());
  return r;
}
std::vector<Vertex> GoodStructure::tails_B() const {
  std::vector<Vertex> r;
  for (const auto& row : B)
    for (const auto& s : row) r.push_back(s.front());
  return r;
}
VertexSet GoodStructure::star(int n, int i) const { return union_of(n, A[i]) | union_of(n, B[i]); }
VertexSet GoodStructure::star(int n) const {
  VertexSet r(n);
  for (int i = 0; i < static_cast<int>(A.size()); ++i) r |= star(n, i);
  return r;
}
std::vector<Edge> GoodStructure::activating(int i) const {
  std::vector<Edge> r;
  for (const auto& ce : F[i])
    for (const Edge& e : ce.activating()) r.push_back(e);
  return r;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::waived: return "waived";
  }
  return "?";
}

bool ConditionReport::ok() const { return first_failure() == nullptr; }

const ConditionResult* ConditionReport::first_failure() const {
  for (const auto& c : conditions)
    if (c.status == CheckStatus::fail) return &c;
  return nullptr;
}

const ConditionResult& ConditionReport::at(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  throw Error("no condition named " + name);
}

// ---------------------------------------------------------------- validation

ConditionReport validate_good_structure(const Digraph& t, const GoodStructure& gs, const EngineConfig& cfg) {
  ConditionReport rep;
  Recorder rec(rep);
  int n = t.n(), k = gs.k, tt = gs.t, c = gs.c;
  bool waive = cfg.mode == Mode::best_effort;
  bool waive_c = cfg.mode != Mode::strict;

  auto shape_ok = [&] {
    if (k < 1 || tt < 1) return false;
    if (static_cast<int>(gs.A.size()) != k || static_cast<int>(gs.B.size()) != k || static_cast<int>(gs.P.size()) != k ||
        static_cast<int>(gs.EA.size()) != k || static_cast<int>(gs.EB.size()) != k || static_cast<int>(gs.F.size()) != k)
      return false;
    for (int i = 0; i < k; ++i) {
      if (static_cast<int>(gs.A[i].size()) != tt || static_cast<int>(gs.B[i].size()) != tt ||
          static_cast<int>(gs.P[i].size()) != tt)
        return false;
      for (int l = 0; l < tt; ++l) {
        if (gs.A[i][l].empty() || gs.B[i][l].empty() || gs.P[i][l].vertices.empty()) return false;
        for (Vertex v : gs.A[i][l])
          if (v < 0 || v >= n) return false;
        for (Vertex v : gs.B[i][l])
          if (v < 0 || v >= n) return false;
      }
    }
    return true;
  }();
  if (!shape_ok) {
    for (int g = 1; g <= 9; ++g) rep.conditions.push_back({"G" + str(g), CheckStatus::fail, "structure incomplete"});
    return rep;
  }

  VertexSet astar = VertexSet(n), bstar = VertexSet(n);
  for (int i = 0; i < k; ++i) {
    astar |= union_of(n, gs.A[i]);
    bstar |= union_of(n, gs.B[i]);
  }
  VertexSet all = astar | bstar;
  VertexSet heads_a = make_set(n, gs.heads_A()), tails_b = make_set(n, gs.tails_B());
  VertexSet special = heads_a | tails_b;
  DegreeSummary deg = degrees(t);

  // G1
  rec.begin("G1");
  bool sets_disjoint = true;
  {
    VertexSet seen(n);
    for (int i = 0; i < k; ++i)
      for (int l = 0; l < tt; ++l) {
        const auto& s = gs.A[i][l];
        VertexSet ss = make_set(n, s);
        if (ss.count() != s.size() || ss.intersects(seen)) sets_disjoint = false;
        seen |= ss;
        rec.hard(s.size() >= 2 && static_cast<int>(s.size()) <= c, "|A_" + str(i) + "^" + str(l) + "| = " + str(s.size()));
        rec.hard(transitive_as_stored(t, s), "A_" + str(i) + "^" + str(l) + " is not transitive in stored order");
        rec.soft(5LL * t.out_degree(s.back()) >= 2LL * n,
                 "head " + str(s.back()) + " has out-degree " + str(t.out_degree(s.back())) + " < 2n/5");
      }
    rec.hard(sets_disjoint, "A sets overlap");
  }
  rec.end(waive);

  // G2
  rec.begin("G2");
  {
    VertexSet seen = astar;
    for (int i = 0; i < k; ++i)
      for (int l = 0; l < tt; ++l) {
        const auto& s = gs.B[i][l];
        VertexSet ss = make_set(n, s);
        bool ok = ss.count() == s.size() && !ss.intersects(seen);
        if (!ok) sets_disjoint = false;
        rec.hard(ok, "B_" + str(i) + "^" + str(l) + " meets another set");
        seen |= ss;
        rec.hard(s.size() >= 2 && static_cast<int>(s.size()) <= c, "|B_" + str(i) + "^" + str(l) + "| = " + str(s.size()));
        rec.hard(transitive_as_stored(t, s), "B_" + str(i) + "^" + str(l) + " is not transitive in stored order");
        rec.soft(5LL * t.in_degree(s.front()) >= 2LL * n,
                 "tail " + str(s.front()) + " has in-degree " + str(t.in_degree(s.front())) + " < 2n/5");
      }
  }
  rec.end(waive);

  int dm = n, dp = n;
  for (int v = 0; v < n; ++v)
    if (!special.test(v)) {
      dm = std::min(dm, t.in_degree(v));
      dp = std::min(dp, t.out_degree(v));
    }

  bool except_disjoint = true;
  for (int dir = 0; dir < 2; ++dir) {
    bool out = dir == 0;
    rec.begin(out ? "G3" : "G4");
    for (int i = 0; i < k; ++i) {
      const auto& e = out ? gs.EA[i] : gs.EB[i];
      VertexSet es = make_set(n, e);
      bool disj = !es.intersects(gs.star(n, i));
      except_disjoint = except_disjoint && disj;
      rec.hard(disj, "exceptional set " + str(i) + " meets A_i* u B_i*");
      VertexSet targets = full_set(n) - all - es;
      for (int l = 0; l < tt; ++l) {
        Vertex miss = -1;
        rec.hard(dominates(t, out ? gs.A[i][l] : gs.B[i][l], targets, out, &miss),
                 std::string(out ? "A_" : "B_") + str(i) + "^" + str(l) + " misses " + str(miss));
      }
      rec.soft(50LL * static_cast<long long>(e.size()) <= (out ? dm : dp),
               "|E_" + str(i) + "| = " + str(e.size()) + " > " + (out ? "d-" : "d+") + "/50 = " +
                   str(out ? dm : dp) + "/50");
    }
    rec.end(waive);
  }

  // G5
  rec.begin("G5");
  bool paths_ok = true;
  {
    VertexSet allp(n);
    std::vector<std::set<Edge>> es(k);
    for (int i = 0; i < k; ++i) {
      VertexSet own(n);
      VertexSet allowed = special - gs.star(n, i);
      for (int l = 0; l < tt; ++l) {
        const Path& p = gs.P[i][l];
        bool ok = validate_path(t, p) && p.tail() == gs.B[i][l].back() && p.head() == gs.A[i][l].front();
        rec.hard(ok, "P_" + str(i) + "^" + str(l) + " is not a path from b to a'");
        VertexSet pv = make_set(n, p.vertices);
        rec.hard(!pv.intersects(own), "paths of round " + str(i) + " share a vertex");
        own |= pv;
        allp |= pv;
        for (std::size_t a = 1; a + 1 < p.size(); ++a)
          if (all.test(p.vertices[a]) && !allowed.test(p.vertices[a])) {
            ok = false;
            rec.hard(false, "interior of P_" + str(i) + "^" + str(l) + " meets " + str(p.vertices[a]));
          }
        paths_ok = paths_ok && ok;
        for (const Edge& e : p.edges()) es[i].insert(e);
      }
    }
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (const Edge& e : es[i])
          if (es[j].count(e)) {
            paths_ok = false;
            rec.hard(false, "rounds " + str(i) + " and " + str(j) + " share edge " + str(e.from) + "->" + str(e.to));
          }
    rec.soft(20LL * static_cast<long long>(allp.count()) <= n, "|V(P)| = " + str(allp.count()) + " > n/20");
  }
  paths_ok = rec.end(waive) && paths_ok;

  // G6
  rec.begin("G6");
  for (int i = 0; i < k; ++i) {
    const Path& last = gs.P[i][tt - 1];
    auto es = edge_set({last});
    for (const auto& ce : gs.F[i]) rec.hard(es.count(ce.edge()) > 0, "F_" + str(i) + " edge not on P_i^t");
    VertexSet need = special - gs.star(n, i);
    rec.hard(need.is_subset_of(make_set(n, last.vertices)), "(A u B') \\ star not covered by P_" + str(i) + "^t");
  }
  rec.end(waive);

  // G7
  rec.begin("G7");
  bool matching_ok = true;
  {
    VertexSet used(n);
    std::set<Edge> fe;
    for (int i = 0; i < k; ++i) {
      VertexSet vs(n);
      for (const auto& ce : gs.F[i]) {
        bool ok = check_covering_edge(t, ce) && !all.test(ce.x) && !all.test(ce.y) && !used.test(ce.x) &&
                  !used.test(ce.y) && fe.insert(ce.edge()).second && !vs.test(ce.v);
        matching_ok = matching_ok && ok;
        rec.hard(ok, "covering edge for " + str(ce.v) + " breaks the matching");
        used.set(ce.x);
        used.set(ce.y);
        vs.set(ce.v);
      }
      rec.hard(vs == gs.star(n, i), "F_" + str(i) + " does not cover A_i* u B_i* exactly");
    }
    std::set<Edge> pe;
    for (const auto& row : gs.P)
      for (const Path& p : row)
        for (const Edge& e : p.edges()) pe.insert(e);
    for (int i = 0; i < k; ++i)
      for (const Edge& e : gs.activating(i))
        rec.hard(!pe.count(e), "activating edge " + str(e.from) + "->" + str(e.to) + " lies on a path");
  }
  rec.end(waive);

  // G8
  rec.begin("G8");
  {
    double need = cfg.C * k * k * std::log2(std::max(k, 1));
    rec.soft(deg.min_semi >= need, "delta0 = " + str(deg.min_semi) + " < C k^2 log k = " + str(static_cast<long long>(need)));
  }
  rec.end(waive_c);

  rec.begin("G9");
  rec.hard(sets_disjoint, "dominating sets overlap");
  rec.hard(except_disjoint, "an exceptional set meets its own round");
  rec.hard(matching_ok, "F is not a matching outside A* u B*");
  rec.hard(paths_ok, "path disjointness");
  rec.end(waive);
  return rep;
}

// ---------------------------------------------------------------- construction

GoodStructure build_good_structure(const Digraph& t, int k, const EngineConfig& cfg) {
  int n = t.n();
  if (k < 1) throw PreconditionError("k >= 1", "k = " + str(k));
  if (!t.is_tournament()) throw PreconditionError("tournament", "input is not a tournament");
  bool strict_steps = cfg.mode != Mode::best_effort;
  DegreeSummary deg = degrees(t);
  if (cfg.mode == Mode::strict) {
    double need = cfg.C * k * k * std::log2(std::max(k, 1));
    if (deg.min_semi < need)
      throw StageError("G8", "delta0 = " + str(deg.min_semi) + " < C k^2 log k = " + str(static_cast<long long>(need)));
  }
  GoodStructure gs;
  gs.k = k;
  gs.t = cfg.t;
  gs.c = cfg.c;
  int kt = k * cfg.t;
  if (cfg.t < 1 || cfg.c < 2) throw PreconditionError("t >= 1, c >= 2", "t = " + str(cfg.t) + ", c = " + str(cfg.c));
  if (2 * kt > n) throw StageError("choose A, B'", "2kt = " + str(2 * kt) + " exceeds n = " + str(n));

  // kt least in-degree vertices, then kt least out-degree vertices outside them
  std::vector<Vertex> by_in(n), by_out(n);
  for (int v = 0; v < n; ++v) by_in[v] = by_out[v] = v;
  std::stable_sort(by_in.begin(), by_in.end(), [&](Vertex a, Vertex b) { return t.in_degree(a) < t.in_degree(b); });
  std::stable_sort(by_out.begin(), by_out.end(), [&](Vertex a, Vertex b) { return t.out_degree(a) < t.out_degree(b); });
  std::vector<Vertex> a_heads(by_in.begin(), by_in.begin() + kt);
  VertexSet aset = make_set(n, a_heads);
  std::vector<Vertex> b_tails;
  for (Vertex v : by_out)
    if (static_cast<int>(b_tails.size()) < kt && !aset.test(v)) b_tails.push_back(v);
  VertexSet bset = make_set(n, b_tails);
  gs.d_minus = gs.d_plus = n;
  for (int v = 0; v < n; ++v)
    if (!aset.test(v) && !bset.test(v)) {
      gs.d_minus = std::min(gs.d_minus, t.in_degree(v));
      gs.d_plus = std::min(gs.d_plus, t.out_degree(v));
    }

  auto stage = [&](const std::string& name, auto&& fn) {
    try {
      return fn();
    } catch (const StageError& e) {
      throw StageError(name, e.what(), e.witness());
    } catch (const PreconditionError& e) {
      throw StageError(name, e.what());
    }
  };

  VertexSet not_b = full_set(n) - bset;
  DomFamily fa = stage("A* families", [&] { return out_dom_family(t, a_heads, cfg.c, &not_b, strict_steps); });
  gs.A.assign(k, {});
  gs.EA.assign(k, {});
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < cfg.t; ++l) gs.A[i].push_back(fa.sets[i * cfg.t + l].order);
  VertexSet astar(n);
  for (const auto& row : gs.A) astar |= union_of(n, row);

  VertexSet not_a = full_set(n) - astar;
  DomFamily fb = stage("B* families", [&] { return in_dom_family(t, b_tails, cfg.c, &not_a, strict_steps); });
  gs.B.assign(k, {});
  gs.EB.assign(k, {});
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < cfg.t; ++l) gs.B[i].push_back(fb.sets[i * cfg.t + l].order);
  VertexSet bstar(n);
  for (const auto& row : gs.B) bstar |= union_of(n, row);
  VertexSet all = astar | bstar;

  for (int i = 0; i < k; ++i) {
    VertexSet ea(n), eb(n);
    for (int l = 0; l < cfg.t; ++l) {
      ea |= make_set(n, fa.sets[i * cfg.t + l].exceptional);
      eb |= make_set(n, fb.sets[i * cfg.t + l].exceptional);
    }
    gs.EA[i] = members(ea - bstar);
    gs.EB[i] = members(eb);
  }

  // covering edges, each in T minus the other special vertices and earlier endpoints
  gs.F.assign(k, {});
  VertexSet used(n);
  for (int i = 0; i < k; ++i) {
    std::vector<Vertex> order;
    for (const auto& s : gs.A[i]) order.insert(order.end(), s.begin(), s.end());
    for (const auto& s : gs.B[i]) order.insert(order.end(), s.begin(), s.end());
    for (Vertex v : order) {
      VertexSet host = full_set(n) - all - used;
      host.set(v);
      CoveringEdge ce = stage("covering edges", [&] { return covering_edge(t, v, strict_steps, &host); });
      used.set(ce.x);
      used.set(ce.y);
      gs.F[i].push_back(ce);
    }
  }

  // path covers of (A u B') \ (A_i* u B_i*), each avoiding the edges of the earlier ones
  VertexSet special = aset | bset;
  std::vector<PathSystem> qcov(k);
  std::vector<Edge> spent;
  for (int i = 0; i < k; ++i) {
    VertexSet part = special - gs.star(n, i);
    Digraph h = remove_edges(t, spent);
    qcov[i] = gallai_milgram_cover(h, &part);
    if (static_cast<int>(qcov[i].size()) > 2 * k && strict_steps)
      throw StageError("path covers Q", "|Q_" + str(i) + "| = " + str(qcov[i].size()) + " > 2k");
    for (const Path& p : qcov[i])
      for (const Edge& e : p.edges()) spent.push_back(e);
  }

  Pairs pairs;
  std::vector<PathSystem> qs;
  VertexSet keep = full_set(n) - all;
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < cfg.t; ++l) {
      Vertex b = gs.B[i][l].back(), ap = gs.A[i][l].front();
      pairs.push_back({b, ap});
      keep.set(b);
      keep.set(ap);
      PathSystem q;
      if (l == cfg.t - 1) {
        for (const auto& ce : gs.F[i]) q.push_back(Path({ce.x, ce.y}));
        q.insert(q.end(), qcov[i].begin(), qcov[i].end());
      }
      qs.push_back(std::move(q));
    }
  // A and B' stay only where a cover Q_i uses them, which is all of them once k >= 2
  for (const PathSystem& qc : qcov) keep |= covered(n, qc);
  PathSystem ps = stage("linkage P", [&] { return link_with_paths(t, pairs, qs, cfg.s, LinkBackend::greedy, &keep); });
  gs.P.assign(k, {});
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < cfg.t; ++l) gs.P[i].push_back(ps[i * cfg.t + l]);

  ConditionReport rep = validate_good_structure(t, gs, cfg);
  if (const ConditionResult* bad = rep.first_failure()) throw StageError(bad->name, bad->detail);
  return gs;
}

// ---------------------------------------------------------------- one round

EngineSlice engine_slice(const Digraph& t, const GoodStructure& gs, int i, const std::vector<Cycle>& earlier) {
  int n = t.n(), k = gs.k;
  EngineSlice sl;
  sl.k = k;
  DigraphBuilder b(t);
  auto drop = [&](const Edge& e) {
    if (b.has_edge(e.from, e.to)) b.remove_edge(e.from, e.to);
  };
  for (const Cycle& c : earlier)
    for (const Edge& e : c.edges()) drop(e);
  for (int j = i + 1; j < k; ++j) {
    for (const Edge& e : gs.activating(j)) drop(e);
    for (int l = 0; l < gs.t; ++l) {
      for (const Edge& e : gs.P[j][l].edges()) drop(e);
      for (const auto* s : {&gs.A[j][l], &gs.B[j][l]})
        for (Vertex u : *s)
          for (Vertex w : *s)
            if (u != w) drop({u, w});
    }
  }
  sl.T = b.build();
  sl.A = gs.A[i];
  sl.B = gs.B[i];
  sl.P = gs.P[i];
  sl.F = gs.F[i];

  VertexSet own = gs.star(n, i), all = gs.star(n);
  VertexSet ai = union_of(n, gs.A[i]), bi = union_of(n, gs.B[i]);
  VertexSet extra_a = all, extra_b = all;
  auto neighbours_on = [&](const std::vector<Vertex>& seq, bool closed, const VertexSet& of, bool succ, VertexSet& into) {
    int m = static_cast<int>(seq.size());
    for (int a = 0; a < m; ++a) {
      if (!of.test(seq[a])) continue;
      int nb = succ ? a + 1 : a - 1;
      if (closed) nb = (nb + m) % m;
      if (nb >= 0 && nb < m) into.set(seq[nb]);
    }
  };
  for (const Cycle& c : earlier) {
    neighbours_on(c.vertices, true, ai, true, extra_a);
    neighbours_on(c.vertices, true, bi, false, extra_b);
  }
  for (int j = i + 1; j < k; ++j)
    for (int l = 0; l < gs.t; ++l) {
      neighbours_on(gs.P[j][l].vertices, false, ai, true, extra_a);
      neighbours_on(gs.P[j][l].vertices, false, bi, false, extra_b);
    }
  sl.EA = make_set(n, gs.EA[i]) | (extra_a - own);
  sl.EB = make_set(n, gs.EB[i]) | (extra_b - own);
  sl.X = (make_set(n, gs.heads_A()) | make_set(n, gs.tails_B())) - own;
  return sl;
}

namespace {

EngineSlice reverse_slice(const EngineSlice& s) {
  EngineSlice r;
  r.T = reversed(s.T);
  r.k = s.k;
  for (const auto& b : s.B) r.A.emplace_back(b.rbegin(), b.rend());
  for (const auto& a : s.A) r.B.emplace_back(a.rbegin(), a.rend());
  for (const Path& p : s.P) r.P.push_back(reversed(p));
  r.EA = s.EB;
  r.EB = s.EA;
  r.X = s.X;
  for (const auto& ce : s.F) r.F.push_back({ce.v, ce.y, ce.x});
  return r;
}

int min_degree_over(const Digraph& t, const VertexSet& s, bool in) {
  int best = t.n();
  for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v))
    best = std::min(best, in ? t.in_degree(static_cast<Vertex>(v)) : t.out_degree(static_cast<Vertex>(v)));
  return best;
}

ConditionReport engine_hypotheses(const EngineSlice& s, const EngineConfig& cfg) {
  ConditionReport rep;
  Recorder rec(rep);
  const Digraph& t = s.T;
  int n = t.n(), tt = static_cast<int>(s.A.size()), c = cfg.c, k = s.k;
  bool waive = cfg.mode == Mode::best_effort;
  bool waive_c = cfg.mode != Mode::strict;
  VertexSet astar = union_of(n, s.A), bstar = union_of(n, s.B), star = astar | bstar;
  VertexSet pv(n);
  for (const Path& p : s.P) pv |= make_set(n, p.vertices);

  bool shape = tt >= 1 && static_cast<int>(s.B.size()) == tt && static_cast<int>(s.P.size()) == tt;
  for (int dir = 0; dir < 2; ++dir) {
    bool a = dir == 0;
    rec.begin(a ? "(i)" : "(iii)");
    rec.hard(shape, "set counts differ");
    VertexSet seen = a ? VertexSet(n) : astar;
    for (const auto& set : a ? s.A : s.B) {
      VertexSet ss = make_set(n, set);
      rec.hard(ss.count() == set.size() && !ss.intersects(seen), "sets are not disjoint");
      seen |= ss;
      rec.hard(set.size() >= 2 && static_cast<int>(set.size()) <= c, "set size " + str(set.size()) + " outside [2, c]");
      rec.hard(transitive_as_stored(t, set), "set is not transitive in stored order");
      if (!set.empty()) {
        Vertex end = a ? set.back() : set.front();
        int d = a ? t.out_degree(end) : t.in_degree(end);
        rec.soft(3LL * d >= n, "vertex " + str(end) + " has degree " + str(d) + " < n/3");
      }
    }
    rec.end(waive);
    rec.begin(a ? "(ii)" : "(iv)");
    const VertexSet& e = a ? s.EA : s.EB;
    rec.hard(!e.intersects(star), "exceptional set meets A* u B*");
    VertexSet targets = full_set(n) - star - e;
    for (const auto& set : a ? s.A : s.B) {
      Vertex miss = -1;
      rec.hard(dominates(t, set, targets, a, &miss), "vertex " + str(miss) + " is not dominated");
    }
    int d = min_degree_over(t, e - s.X, a);
    rec.soft(40LL * static_cast<long long>(e.count()) <= d,
             "|E| = " + str(e.count()) + " > " + (a ? "d-" : "d+") + "/40 = " + str(d) + "/40");
    rec.end(waive);
  }

  rec.begin("(v)");
  if (shape) {
    VertexSet seen(n);
    for (int l = 0; l < tt; ++l) {
      const Path& p = s.P[l];
      bool ok = !p.vertices.empty() && validate_path(t, p) && p.tail() == s.B[l].back() && p.head() == s.A[l].front();
      rec.hard(ok, "P_" + str(l) + " is not a path from b to a' in T");
      VertexSet ps = make_set(n, p.vertices);
      rec.hard(!ps.intersects(seen), "paths are not vertex-disjoint");
      seen |= ps;
      for (std::size_t a = 1; a + 1 < p.size(); ++a) rec.hard(!star.test(p.vertices[a]), "interior meets A* u B*");
    }
  }
  rec.soft(20LL * static_cast<long long>(pv.count()) <= n, "|V(P)| = " + str(pv.count()) + " > n/20");
  rec.end(waive);

  rec.begin("(vi)");
  {
    auto pe = edge_set(s.P);
    VertexSet used(n), vs(n);
    for (const auto& ce : s.F) {
      rec.hard(check_covering_edge(t, ce), "invalid covering edge for " + str(ce.v));
      rec.hard(pe.count(ce.edge()) > 0, "F edge off the paths");
      rec.hard(!star.test(ce.x) && !star.test(ce.y), "F meets A* u B*");
      rec.hard(!used.test(ce.x) && !used.test(ce.y) && !vs.test(ce.v), "F is not a matching with one edge per vertex");
      used.set(ce.x);
      used.set(ce.y);
      vs.set(ce.v);
    }
    rec.hard(vs == star, "F does not cover A* u B*");
  }
  rec.end(waive);

  rec.begin("(vii)");
  rec.hard(s.X.is_subset_of(pv) && !s.X.intersects(star), "X must lie on the paths and avoid A* u B*");
  rec.soft(static_cast<long long>(s.X.count()) <= 2LL * k * tt, "|X| > 2kt");
  rec.end(waive);

  DegreeSummary deg = degrees(t);
  rec.begin("delta");
  rec.soft(deg.min_total > n - 4 * k, "delta = " + str(deg.min_total) + " <= n - 4k");
  rec.end(waive);
  rec.begin("delta0");
  double need = cfg.C / 10 * k * k;
  rec.soft(deg.min_semi >= need, "delta0 = " + str(deg.min_semi) + " < (C/10) k^2");
  rec.end(waive_c);
  return rep;
}

// Runs a head/tail extension on T[host] and maps the result back.
PathSystem extend_on(const Digraph& t, const VertexSet& host, bool heads, const PathSystem& p1, const PathSystem& p2,
                     const VertexSet& i_set, const VertexSet& j_set, const std::vector<Edge>& f, bool strengthened,
                     const EngineConfig& cfg) {
  InducedSubgraph sub = induced(t, host);
  auto down_set = [&](const VertexSet& s) {
    VertexSet r(sub.graph.n());
    for (auto v = s.find_first(); v != VertexSet::npos; v = s.find_next(v))
      if (sub.from_parent[v] >= 0) r.set(sub.from_parent[v]);
    return r;
  };
  auto down_ps = [&](const PathSystem& ps) {
    PathSystem r;
    for (const Path& p : ps) {
      Path q;
      for (Vertex v : p.vertices) q.vertices.push_back(sub.from_parent[v]);
      r.push_back(q);
    }
    return r;
  };
  std::vector<Edge> fl;
  for (const Edge& e : f) fl.push_back({sub.from_parent[e.from], sub.from_parent[e.to]});
  ExtendOptions opt;
  opt.strengthened = strengthened;
  opt.enforce_degree_bound = cfg.mode != Mode::best_effort;
  opt.debug = cfg.debug;
  CoverPartition cp{down_ps(p1), down_ps(p2)};
  ExtendResult er = heads ? extend_heads(sub.graph, cp, down_set(i_set), down_set(j_set), fl, opt)
                          : extend_tails(sub.graph, cp, down_set(i_set), down_set(j_set), fl, opt);
  PathSystem out;
  for (const Path& p : er.cover) {
    Path q;
    for (Vertex v : p.vertices) q.vertices.push_back(sub.to_parent[v]);
    out.push_back(q);
  }
  return out;
}

bool in_list(const Path& p, const std::vector<Path>& ps) { return std::find(ps.begin(), ps.end(), p) != ps.end(); }

void split_by(const PathSystem& q, const std::vector<Path>& p2, PathSystem& rest, PathSystem& kept) {
  rest.clear();
  kept.clear();
  for (const Path& p : q) (in_list(p, p2) ? kept : rest).push_back(p);
}

Path concat_at(Path a, const Path& b) {
  if (a.vertices.empty()) return b;
  if (a.head() != b.tail()) throw StageError("stitch", "paths do not meet");
  a.vertices.insert(a.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
  return a;
}

SingleResult single_hamilton_oriented(const EngineSlice& s, const EngineConfig& cfg, ConditionReport hyp) {
  const Digraph& t = s.T;
  int n = t.n(), tt = static_cast<int>(s.A.size()), k = s.k;
  SingleResult res;
  res.trace.hypotheses = std::move(hyp);
  bool waive = cfg.mode == Mode::best_effort;

  VertexSet astar = union_of(n, s.A), bstar = union_of(n, s.B), star = astar | bstar;
  std::vector<Vertex> a(tt), ap(tt), b(tt), bp(tt);
  for (int l = 0; l < tt; ++l) {
    a[l] = s.A[l].back();
    ap[l] = s.A[l].front();
    b[l] = s.B[l].back();
    bp[l] = s.B[l].front();
  }
  VertexSet aset = make_set(n, a), apset = make_set(n, ap), bset = make_set(n, b), bpset = make_set(n, bp);
  VertexSet nset = full_set(n) - star;
  VertexSet tprime = nset | apset | bset;
  std::vector<Edge> f = edges_of(s.F);
  const PathSystem& p2 = s.P;

  VertexSet rest = nset;
  for (const Path& p : p2) rest -= make_set(n, p.vertices);
  PathSystem p1 = gallai_milgram_cover(t, &rest);
  res.trace.p1 = static_cast<int>(p1.size());
  int q1 = static_cast<int>(p1.size() + p2.size());
  res.trace.q1 = q1;

  auto stage = [&](const std::string& name, auto&& fn) {
    try {
      return fn();
    } catch (const StageError& e) {
      throw StageError(name, e.what(), e.witness());
    } catch (const PreconditionError& e) {
      throw StageError(name, e.what());
    }
  };

  // Q2: tails out of E_A
  PathSystem q = stage("Q2", [&] {
    return extend_on(t, tprime, false, p1, p2, s.EA - s.X, s.X | apset | bset, f, false, cfg);
  });
  // Q3: heads out of E_B
  PathSystem r_part, s_part;
  split_by(q, p2, r_part, s_part);
  q = stage("Q3", [&] {
    return extend_on(t, tprime, true, r_part, s_part, s.EB - s.X, (s.EA - s.EB) | s.X | apset | bset, f, false, cfg);
  });
  // Q4: step into A and B'
  split_by(q, p2, r_part, s_part);
  for (Path& p : r_part) {
    for (int l = 0; l < tt; ++l)
      if (p.head() == ap[l]) {
        p.vertices.push_back(a[l]);
        break;
      }
    for (int l = 0; l < tt; ++l)
      if (p.tail() == b[l]) {
        p.vertices.insert(p.vertices.begin(), bp[l]);
        break;
      }
  }
  q = r_part;
  q.insert(q.end(), s_part.begin(), s_part.end());
  VertexSet tpp = covered(n, q);
  // Q5: tails out of B', Q6: heads out of A
  split_by(q, p2, r_part, s_part);
  q = stage("Q5", [&] {
    return extend_on(t, tpp, false, r_part, s_part, bpset & tpp, (s.EA | s.EB | apset | aset | bset) & tpp, f, true, cfg);
  });
  split_by(q, p2, r_part, s_part);
  q = stage("Q6", [&] {
    return extend_on(t, tpp, true, r_part, s_part, aset & tpp, (s.EA | s.EB | apset | bpset | bset) & tpp, f, true, cfg);
  });
  split_by(q, p2, r_part, s_part);

  // (Q1)-(Q7)
  {
    ConditionReport& rep = res.trace.claims;
    Recorder rec(rep);
    rec.begin("cover");
    rec.hard(is_path_cover(t, q, &tpp) && tprime.is_subset_of(tpp) && tpp.is_subset_of(tprime | aset | bpset),
             "Q is not a path cover of some T'' between T' and T[V(T') u A u B']");
    rec.end(waive);
    auto qe = edge_set(q);
    rec.begin("Q1");
    for (const Edge& e : f) rec.hard(qe.count(e) > 0, "F edge " + str(e.from) + "->" + str(e.to) + " lost");
    rec.end(waive);
    rec.begin("Q2");
    for (const Path& p : q) rec.hard(!s.EA.test(p.tail()), "tail " + str(p.tail()) + " in E_A");
    rec.end(waive);
    rec.begin("Q3");
    for (const Path& p : q) rec.hard(!s.EB.test(p.head()), "head " + str(p.head()) + " in E_B");
    rec.end(waive);
    rec.begin("Q4");
    rec.soft(static_cast<int>(s_part.size()) >= q1 - 20 * k, "|Q n P2| = " + str(s_part.size()) + " < |Q1| - 20k");
    rec.end(waive);
    rec.begin("Q5");
    for (int l = 0; l < tt; ++l)
      if (tpp.test(a[l]) || tpp.test(bp[l])) rec.hard(!in_list(p2[l], q), "P_" + str(l) + " kept although a or b' is used");
    rec.end(waive);
    rec.begin("Q6");
    rec.soft(static_cast<int>(q.size()) <= q1 + 124 * k, "|Q| = " + str(q.size()) + " > |Q1| + 124k");
    rec.end(waive);
    rec.begin("Q7");
    for (const Path& p : r_part) rec.hard(!star.test(p.tail()) && !star.test(p.head()), "path of R ends in A* u B*");
    rec.end(waive);
    if (const ConditionResult* bad = rep.first_failure()) throw StageError(bad->name, bad->detail);
  }

  // order S by index and make |R| = |S|
  std::vector<int> s_idx;
  for (int l = 0; l < tt; ++l)
    if (in_list(p2[l], s_part)) s_idx.push_back(l);
  int ell = static_cast<int>(s_idx.size());
  res.trace.r = static_cast<int>(r_part.size());
  res.trace.s = ell;
  if (ell == 0) throw StageError("split", "no path of P2 survived");
  if (static_cast<int>(r_part.size()) > ell)
    throw StageError("split", "|R| = " + str(r_part.size()) + " exceeds |S| = " + str(ell));
  if (r_part.empty()) throw StageError("split", "R is empty");
  {
    VertexSet protect = star | s.EA | s.EB;
    std::set<Edge> fset(f.begin(), f.end());
    std::vector<Edge> cand;
    for (const Path& p : r_part)
      for (const Edge& e : p.edges())
        if (!protect.test(e.from) && !protect.test(e.to) && !fset.count(e)) cand.push_back(e);
    std::sort(cand.rbegin(), cand.rend());
    std::size_t need = ell - r_part.size();
    if (cand.size() < need) throw StageError("split", "only " + str(cand.size()) + " removable edges, need " + str(need));
    std::set<Edge> cut(cand.begin(), cand.begin() + need);
    PathSystem split;
    for (const Path& p : r_part) {
      Path cur;
      for (Vertex v : p.vertices) {
        if (!cur.vertices.empty() && cut.count({cur.head(), v})) {
          split.push_back(cur);
          cur.vertices.clear();
        }
        cur.vertices.push_back(v);
      }
      split.push_back(cur);
    }
    r_part = split;
  }

  // stitch R'_j between A_{j-1} and B_j, alternating with the kept paths
  Path cyc;
  for (int j = 0; j < ell; ++j) {
    int prev = s_idx[(j + ell - 1) % ell], cur = s_idx[j];
    const Path& rj = r_part[j];
    Vertex x = rj.tail(), y = rj.head();
    Vertex xp = -1, yp = -1;
    for (Vertex u : s.A[prev])
      if (t.has_edge(u, x) && (xp < 0 || u < xp)) xp = u;
    for (Vertex u : s.B[cur])
      if (t.has_edge(y, u) && (yp < 0 || u < yp)) yp = u;
    if (xp < 0) throw StageError("stitch", "no vertex of A_" + str(prev) + " reaches " + str(x), {x});
    if (yp < 0) throw StageError("stitch", "no vertex of B_" + str(cur) + " is reached from " + str(y), {y});
    Path seg;
    if (xp != ap[prev]) seg.vertices.push_back(ap[prev]);
    seg.vertices.push_back(xp);
    seg.vertices.insert(seg.vertices.end(), rj.vertices.begin(), rj.vertices.end());
    seg.vertices.push_back(yp);
    if (yp != b[cur]) seg.vertices.push_back(b[cur]);
    if (j == 0) cyc = seg;
    else cyc = concat_at(cyc, seg);
    cyc = concat_at(cyc, p2[cur]);
  }
  if (cyc.head() != cyc.tail()) throw StageError("stitch", "cycle does not close");
  cyc.vertices.pop_back();
  Cycle c{cyc.vertices};
  if (!validate_cycle(t, c, false)) throw StageError("stitch", "stitched sequence is not a cycle of T");

  // absorb the remaining special vertices through their covering edges
  {
    VertexSet on(n);
    for (Vertex v : c.vertices) on.set(v);
    auto cedges = c.edges();
    std::set<Edge> ce(cedges.begin(), cedges.end());
    std::map<Vertex, const CoveringEdge*> by_x;
    bool ok = true;
    for (const auto& e : s.F)
      if (!on.test(e.v)) {
        if (!ce.count(e.edge())) throw StageError("insert", "covering edge of " + str(e.v) + " is not on C", {e.v});
        for (const Edge& act : e.activating()) ok = ok && !ce.count(act);
        by_x[e.x] = &e;
      }
    std::vector<Vertex> out;
    int m = static_cast<int>(c.vertices.size());
    for (int i = 0; i < m; ++i) {
      Vertex u = c.vertices[i], w = c.vertices[(i + 1) % m];
      out.push_back(u);
      auto it = by_x.find(u);
      if (it != by_x.end() && it->second->y == w) {
        out.push_back(it->second->v);
        ++res.trace.inserted;
      }
    }
    c.vertices = out;
    VertexSet seen(n);
    for (Vertex v : c.vertices) {
      ok = ok && !seen.test(v);
      seen.set(v);
    }
    res.trace.insertion_ok = ok && static_cast<int>(seen.count()) == n;
    if (!res.trace.insertion_ok) throw StageError("insert", "covering-edge insertion postcondition failed");
  }
  if (!validate_cycle(t, c, true)) throw StageError("insert", "result is not a Hamilton cycle of T_i");
  res.cycle = std::move(c);
  return res;
}

}  // namespace

SingleResult single_hamilton(const EngineSlice& slice, const EngineConfig& cfg) {
  ConditionReport hyp = engine_hypotheses(slice, cfg);
  if (const ConditionResult* bad = hyp.first_failure()) throw PreconditionError(bad->name, bad->detail);
  int dm = min_degree_over(slice.T, slice.EA - slice.X, true);
  int dp = min_degree_over(slice.T, slice.EB - slice.X, false);
  if (dm <= dp) return single_hamilton_oriented(slice, cfg, std::move(hyp));
  SingleResult r = single_hamilton_oriented(reverse_slice(slice), cfg, std::move(hyp));
  std::reverse(r.cycle.vertices.begin(), r.cycle.vertices.end());
  r.trace.reversed = true;
  return r;
}

// ---------------------------------------------------------------- k cycles

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string input_sha(const Digraph& t) { return sha256_hex(to_text(t)); }

namespace {

void fill_validity(const Digraph& t, HamiltonCertificate& cert) {
  cert.cycle_valid.clear();
  bool all = true;
  for (const Cycle& c : cert.cycles) {
    bool ok = validate_cycle(t, c, true);
    cert.cycle_valid.push_back(ok);
    all = all && ok;
  }
  cert.edge_disjoint = edge_disjoint(cert.cycles);
  cert.valid = all && cert.edge_disjoint && static_cast<int>(cert.cycles.size()) == cert.k;
}

}  // namespace

HamiltonCertificate k_hamilton_cycles(const Digraph& t, int k, const EngineConfig& cfg, std::vector<EngineTrace>* traces) {
  HamiltonCertificate cert;
  cert.n = t.n();
  cert.input_sha = input_sha(t);
  cert.k = k;
  cert.mode = cfg.mode;
  cert.config = cfg;
  auto finish = [&] {
    fill_validity(t, cert);
    return cert;
  };
  if (k < 1) throw PreconditionError("k >= 1", "k = " + str(k));
  if (!t.is_tournament()) throw PreconditionError("tournament", "input is not a tournament");
  if (!is_strongly_connected(t)) {
    cert.failures.push_back("not strongly connected");
    return finish();
  }
  if (k == 1) {
    cert.cycles.push_back(hamilton_cycle_camion(t));
    return finish();
  }
  if (degrees(t).min_semi < k) {
    cert.failures.push_back("delta0 < k: no k edge-disjoint Hamilton cycles exist");
    return finish();
  }
  GoodStructure gs;
  try {
    gs = build_good_structure(t, k, cfg);
  } catch (const Error& e) {
    cert.failures.push_back(std::string("build_good_structure: ") + e.what());
    return finish();
  }
  std::vector<Cycle> found;
  for (int i = 0; i < k; ++i) {
    try {
      EngineSlice sl = engine_slice(t, gs, i, found);
      SingleResult r = single_hamilton(sl, cfg);
      if (!validate_cycle(t, r.cycle, true)) throw StageError("round " + str(i), "cycle is not Hamilton in T");
      // (a) and (b): nothing reserved for later rounds was used
      auto cedges = r.cycle.edges();
      std::set<Edge> ce(cedges.begin(), cedges.end());
      for (int j = i + 1; j < k; ++j) {
        for (const Edge& e : gs.activating(j))
          if (ce.count(e)) throw StageError("round " + str(i), "cycle uses an activating edge of round " + str(j));
        for (int l = 0; l < gs.t; ++l) {
          for (const Edge& e : gs.P[j][l].edges())
            if (ce.count(e)) throw StageError("round " + str(i), "cycle uses a path edge of round " + str(j));
          for (const auto* s : {&gs.A[j][l], &gs.B[j][l]})
            for (Vertex u : *s)
              for (Vertex w : *s)
                if (ce.count({u, w})) throw StageError("round " + str(i), "cycle uses a reserved set edge");
        }
      }
      found.push_back(std::move(r.cycle));
      if (traces) traces->push_back(r.trace);
      // each removed cycle lowers every total degree by exactly two
      DigraphBuilder resid(t);
      for (const Cycle& c : found)
        for (const Edge& e : c.edges()) resid.remove_edge(e.from, e.to);
      if (degrees(resid.build()).min_total < t.n() - 1 - 2 * static_cast<int>(found.size()))
        throw StageError("round " + str(i), "residual degree dropped too far");
    } catch (const Error& e) {
      cert.failures.push_back("round " + str(i) + ": " + e.what());
      if (cfg.mode != Mode::best_effort) found.clear();
      break;
    }
  }
  cert.cycles = found;
  return finish();
}

bool verify_certificate(const Digraph& t, HamiltonCertificate& cert) {
  if (cert.n != t.n() || cert.input_sha != input_sha(t)) {
    cert.valid = false;
    return false;
  }
  fill_validity(t, cert);
  return cert.valid;
}

nlohmann::json to_json(const HamiltonCertificate& cert) {
  nlohmann::json cycles = nlohmann::json::array();
  for (const Cycle& c : cert.cycles) cycles.push_back(c.vertices);
  return {{"n", cert.n},           {"input_sha", cert.input_sha}, {"k", cert.k},
          {"mode", to_string(cert.mode)}, {"config", to_json(cert.config)}, {"cycles", cycles},
          {"valid", cert.valid},   {"failures", cert.failures}};
}

HamiltonCertificate certificate_from_json(const nlohmann::json& j) {
  HamiltonCertificate c;
  try {
    c.n = j.at("n").get<int>();
    c.input_sha = j.at("input_sha").get<std::string>();
    c.k = j.at("k").get<int>();
    c.mode = parse_mode(j.at("mode").get<std::string>());
    const auto& cf = j.at("config");
    c.config.C = cf.at("C").get<double>();
    c.config.t = cf.at("t").get<int>();
    c.config.c = cf.at("c").get<int>();
    c.config.s = cf.at("s").get<int>();
    c.config.mode = parse_mode(cf.at("mode").get<std::string>());
    c.config.debug = cf.value("debug", false);
    for (const auto& cy : j.at("cycles")) c.cycles.push_back(Cycle{cy.get<std::vector<Vertex>>()});
    c.valid = j.at("valid").get<bool>();
    c.failures = j.at("failures").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, 0, std::string("certificate: ") + e.what());
  }
  return c;
}

}  // namespace tourney
