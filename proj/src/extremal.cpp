#include "tourney/extremal.hpp"

#include <bitset>
#include <cmath>
#include <unordered_map>

#include "flow.hpp"
#include "tourney/connectivity.hpp"
#include "tourney/error.hpp"

namespace tourney {

namespace {

constexpr int kMaxPackingN = 12;
constexpr int kMaxExtremalN = 200;

struct Network {
  detail::Dinic g;
  std::vector<std::pair<Edge, int>> arcs;
  int s, t;
  explicit Network(int n) : g(2 * n + 2), s(2 * n), t(2 * n + 1) {}
};

// source -> u_out (r), u_out -> v_in per edge (1), v_in -> sink (r)
Network build(const Digraph& d, int r) {
  int n = d.n();
  Network net(n);
  for (Vertex u = 0; u < n; ++u) {
    net.g.add_arc(net.s, u, r);
    net.g.add_arc(n + u, net.t, r);
    for (Vertex v : members(d.out(u))) net.arcs.push_back({{u, v}, net.g.add_arc(u, n + v, 1)});
  }
  return net;
}

int isqrt(int x) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

using EdgeMask = std::bitset<kMaxPackingN * kMaxPackingN>;

struct Packer {
  int n;
  std::vector<std::vector<EdgeMask>> groups;  // by the out-neighbour of vertex 0
  std::vector<std::vector<std::vector<Vertex>>> cycles;
  std::unordered_map<std::string, int> memo;

  // Best packing from group g on, with `used` edges taken.
  int best(std::size_t g, const EdgeMask& used) {
    if (g == groups.size()) return 0;
    std::string key = std::to_string(g) + used.to_string();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int b = best(g + 1, used);
    for (const EdgeMask& c : groups[g])
      if ((c & used).none()) b = std::max(b, 1 + best(g + 1, used | c));
    memo.emplace(std::move(key), b);
    return b;
  }

  void collect(std::size_t g, const EdgeMask& used, std::vector<Cycle>& out) {
    if (g == groups.size()) return;
    int want = best(g, used);
    if (want == 0) return;
    for (std::size_t i = 0; i < groups[g].size(); ++i) {
      const EdgeMask& c = groups[g][i];
      if ((c & used).none() && 1 + best(g + 1, used | c) == want) {
        out.push_back(Cycle{cycles[g][i]});
        collect(g + 1, used | c, out);
        return;
      }
    }
    collect(g + 1, used, out);
  }
};

}  // namespace

long long cut_capacity(const Digraph& d, const FlowCut& cut) {
  int n = d.n();
  VertexSet so = make_set(n, cut.out_side), si = make_set(n, cut.in_side);
  long long cap = static_cast<long long>(cut.r) * (n - static_cast<long long>(so.count()));
  cap += static_cast<long long>(cut.r) * static_cast<long long>(si.count());
  for (Vertex u : cut.out_side) cap += static_cast<long long>((d.out(u) - si).count());
  return cap;
}

RegularSubdigraphReport max_regular_degree(const Digraph& d) {
  int n = d.n();
  RegularSubdigraphReport rep;
  // feasibility is monotone in r (an r-regular bipartite double splits into r matchings)
  for (int r = 1;; ++r) {
    Network net = build(d, r);
    int f = net.g.max_flow(net.s, net.t);
    if (n == 0 || f < n * r) {
      FlowCut& c = rep.infeasible;
      c.r = r;
      c.flow = f;
      std::vector<char> reach = net.g.residual_reach(net.s);
      for (Vertex v = 0; v < n; ++v) {
        if (reach[v]) c.out_side.push_back(v);
        if (reach[n + v]) c.in_side.push_back(v);
      }
      return rep;
    }
    rep.max_r = r;
    rep.witness.clear();
    for (const auto& [e, id] : net.arcs)
      if (net.g.flow_on(id) > 0) rep.witness.push_back(e);
  }
}

PackingResult max_hamilton_packing(const Digraph& t) {
  int n = t.n();
  if (n > kMaxPackingN) throw GuardError("exhaustive packing needs n <= 12, got " + std::to_string(n));
  PackingResult res;
  if (n < 3) return res;
  Packer pk;
  pk.n = n;
  std::vector<Vertex> firsts = members(t.out(0));
  std::vector<int> group_of(n, -1);
  for (std::size_t i = 0; i < firsts.size(); ++i) group_of[firsts[i]] = static_cast<int>(i);
  pk.groups.resize(firsts.size());
  pk.cycles.resize(firsts.size());

  std::vector<Vertex> path{0};
  std::vector<char> on(n, 0);
  on[0] = 1;
  auto dfs = [&](auto&& self) -> void {
    Vertex u = path.back();
    if (static_cast<int>(path.size()) == n) {
      if (!t.has_edge(u, 0)) return;
      EdgeMask m;
      for (int i = 0; i < n; ++i) m.set(path[i] * kMaxPackingN + path[(i + 1) % n]);
      int g = group_of[path[1]];
      pk.groups[g].push_back(m);
      pk.cycles[g].push_back(path);
      ++res.hamilton_cycles;
      return;
    }
    for (Vertex v : members(t.out(u))) {
      if (on[v]) continue;
      on[v] = 1;
      path.push_back(v);
      self(self);
      path.pop_back();
      on[v] = 0;
    }
  };
  dfs(dfs);

  res.count = pk.best(0, EdgeMask{});
  pk.collect(0, EdgeMask{}, res.cycles);
  return res;
}

ExtremalReport verify_extremal_claims(int m, int ell) {
  ExtremalReport rep;
  rep.m = m;
  rep.ell = ell;
  rep.n = m + 4 * ell + 2;
  if (rep.n > kMaxExtremalN) throw GuardError("extremal check needs n <= 200, got " + std::to_string(rep.n));
  Digraph t = gen_extremal(m, ell);

  rep.kappa = connectivity(t).kappa;
  rep.kappa_lower_ok = rep.kappa >= ell;

  RegularSubdigraphReport reg = max_regular_degree(t);
  rep.max_r = reg.max_r;
  // m > sqrt(4 ell)  <=>  m^2 > 4 ell
  rep.claim2_applicable = static_cast<long long>(m) * m > 4LL * ell;
  if (rep.claim2_applicable) rep.claim2_ok = static_cast<long long>(reg.max_r) * reg.max_r <= 4LL * ell;

  int q = 2 * ell + 1;
  for (Vertex u = q; u < t.n(); ++u)
    for (Vertex v = 0; v < q; ++v) rep.back_edges += t.has_edge(u, v);
  int r = isqrt(4 * ell) + 1;
  rep.binomial_ok = r * (r + 1) / 2 > q;

  if (rep.n <= kMaxPackingN) {
    rep.packing = max_hamilton_packing(t).count;
    rep.ham_upper_ok = *rep.packing <= reg.max_r;
  }
  return rep;
}

nlohmann::json to_json(const RegularSubdigraphReport& r) {
  nlohmann::json w = nlohmann::json::array();
  for (const Edge& e : r.witness) w.push_back({e.from, e.to});
  return {{"max_r", r.max_r},
          {"witness", w},
          {"infeasible",
           {{"r", r.infeasible.r},
            {"flow", r.infeasible.flow},
            {"out_side", r.infeasible.out_side},
            {"in_side", r.infeasible.in_side}}}};
}

nlohmann::json to_json(const ExtremalReport& r) {
  auto opt = [](const auto& o) -> nlohmann::json { return o ? nlohmann::json(*o) : nlohmann::json(nullptr); };
  return {{"m", r.m},
          {"ell", r.ell},
          {"n", r.n},
          {"kappa", r.kappa},
          {"kappa_lower_ok", r.kappa_lower_ok},
          {"claim2_applicable", r.claim2_applicable},
          {"claim2_ok", opt(r.claim2_ok)},
          {"max_r", r.max_r},
          {"back_edges", r.back_edges},
          {"binomial_ok", r.binomial_ok},
          {"packing", opt(r.packing)},
          {"ham_upper_ok", opt(r.ham_upper_ok)}};
}

}  // namespace tourney
