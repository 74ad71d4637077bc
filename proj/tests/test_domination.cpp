#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "oracles.hpp"
#include "tourney/domination.hpp"

using namespace tourney;

namespace {

// Lexicographically first (x, y) straight from the adjacency matrix.
std::optional<std::pair<int, int>> naive_covering(const Digraph& d, int v) {
  for (int x = 0; x < d.n(); ++x)
    for (int y = 0; y < d.n(); ++y)
      if (x != v && y != v && x != y && d.has_edge(x, v) && d.has_edge(v, y) && d.has_edge(x, y)) return {{x, y}};
  return std::nullopt;
}

// Literal (i)-(vi) for the out case with has_edge only.
bool naive_family_ok(const Digraph& d, const std::vector<Vertex>& u, const DomFamily& fam, int c) {
  int n = d.n();
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < fam.sets.size(); ++i)
    for (Vertex a : fam.sets[i].order) {
      if (owner[a] >= 0) return false;
      owner[a] = static_cast<int>(i);
    }
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& s = fam.sets[i];
    if (s.order.size() < 2 || static_cast<int>(s.order.size()) > c) return false;
    if (s.order.back() != u[i]) return false;
    for (std::size_t a = 0; a < s.order.size(); ++a)
      for (std::size_t b = a + 1; b < s.order.size(); ++b)
        if (!d.has_edge(s.order[a], s.order[b])) return false;
    int indeg = 0;
    for (int w = 0; w < n; ++w) indeg += d.has_edge(w, u[i]);
    if (s.exceptional.size() * std::pow(2.0, c - 1) > indeg) return false;
    for (Vertex e : s.exceptional)
      if (owner[e] >= 0) return false;
    for (int w = 0; w < n; ++w) {
      if (owner[w] >= 0 || std::count(s.exceptional.begin(), s.exceptional.end(), w)) continue;
      bool hit = false;
      for (Vertex a : s.order) hit |= d.has_edge(a, w);
      if (!hit) return false;
    }
  }
  return true;
}

Vertex min_in_degree_vertex(const Digraph& d) {
  Vertex best = 0;
  for (int v = 1; v < d.n(); ++v)
    if (d.in_degree(v) < d.in_degree(best)) best = v;
  return best;
}

}  // namespace

TEST_CASE("covering edge on the rotational tournament") {
  Digraph t = gen_rotational(2);
  CoveringEdge ce = covering_edge(t, 0);
  CHECK(ce.x == 4);
  CHECK(ce.y == 1);
  CHECK(check_covering_edge(t, ce));
  auto act = ce.activating();
  CHECK(act[0] == Edge{4, 0});
  CHECK(act[1] == Edge{0, 1});
}

TEST_CASE("covering edge needs T-v strongly connected") {
  Digraph tri = from_adjacency({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  CHECK_THROWS_AS(covering_edge(tri, 0), PreconditionError);
  CHECK_THROWS_AS(covering_edge(gen_transitive(5), 2), PreconditionError);
}

TEST_CASE("covering edges of rotational(3) and random tournaments match the naive scan") {
  Digraph t = gen_rotational(3);
  for (int v = 0; v < 7; ++v) {
    CoveringEdge ce = covering_edge(t, v);
    CHECK(check_covering_edge(t, ce));
    auto nv = naive_covering(t, v);
    REQUIRE(nv);
    CHECK(ce.x == nv->first);
    CHECK(ce.y == nv->second);
  }
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Digraph d = gen_random(12, seed);
    for (int v = 0; v < 12; ++v) {
      auto nv = naive_covering(d, v);
      if (!nv) {
        CHECK_THROWS(covering_edge(d, v, false));
        continue;
      }
      CoveringEdge ce = covering_edge(d, v, false);
      CHECK(std::make_pair(ce.x, ce.y) == *nv);
    }
  }
}

TEST_CASE("out_dom_transitive on a transitive tournament") {
  Digraph t = gen_transitive(20);
  DominatingSet a = out_dom_transitive(t, 19, 3);
  CHECK(a.order == std::vector<Vertex>{0, 19});
  CHECK(a.exceptional.empty());
  CHECK(a.trace == std::vector<int>{19, 0});
  DominatingSet b = in_dom_transitive(t, 0, 3);
  CHECK(b.order == std::vector<Vertex>{0, 19});
  CHECK(b.exceptional.empty());
}

TEST_CASE("out_dom_transitive precondition") {
  // vertex 4 of transitive(5) has in-degree 4; log 4 - 1 = 1 < 2
  CHECK_THROWS_AS(out_dom_transitive(gen_transitive(5), 4, 2), PreconditionError);
  CHECK_THROWS_AS(in_dom_transitive(gen_transitive(5), 0, 2), PreconditionError);
  CHECK_THROWS_AS(out_dom_transitive(gen_transitive(40), 39, 1), PreconditionError);
}

TEST_CASE("out_dom_transitive on a random tournament") {
  Digraph t = gen_random(200, 13);
  Vertex v = min_in_degree_vertex(t);
  DominatingSet a = out_dom_transitive(t, v, 4, nullptr, true, true);
  CHECK(a.exceptional.size() * 8 <= static_cast<std::size_t>(t.in_degree(v)));
  DomFamily fam{Direction::out, {a}};
  CHECK(check_dom_family(t, {v}, fam, 4) == 0);
  CHECK(naive_family_ok(t, {v}, fam, 4));
}

TEST_CASE("property: single sets halve and dominate, in and out agree under reversal") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    int n = 20 + static_cast<int>(rng.below(120));
    Digraph t = gen_random(n, seed + 1000);
    Vertex v = static_cast<Vertex>(rng.below(n));
    int dm = t.in_degree(v);
    int cmax = static_cast<int>(std::floor(std::log2(dm))) - 1;
    if (cmax < 2) continue;
    int c = 2 + static_cast<int>(rng.below(std::min(cmax, 6) - 1));
    DominatingSet a = out_dom_transitive(t, v, c, nullptr, true, true);
    for (std::size_t i = 1; i < a.trace.size(); ++i) CHECK(2 * a.trace[i] <= a.trace[i - 1]);
    CHECK(naive_family_ok(t, {v}, DomFamily{Direction::out, {a}}, c));
    Digraph r = reversed(t);
    DominatingSet b = in_dom_transitive(r, v, c);
    std::vector<Vertex> rev(a.order.rbegin(), a.order.rend());
    CHECK(b.order == rev);
    CHECK(b.exceptional == a.exceptional);
  }
}

TEST_CASE("families") {
  Digraph t = gen_random(200, 13);
  Vertex v = min_in_degree_vertex(t);
  DomFamily one = out_dom_family(t, {v}, 4);
  REQUIRE(one.sets.size() == 1);
  CHECK(one.sets[0].order == out_dom_transitive(t, v, 4).order);

  std::vector<Vertex> u{3, 50, 7, 120, 199, 0};
  DomFamily fam = out_dom_family(t, u, 4);
  CHECK(check_dom_family(t, u, fam, 4) == 0);
  CHECK(naive_family_ok(t, u, fam, 4));
  DomFamily inf = in_dom_family(t, u, 4);
  CHECK(check_dom_family(t, u, inf, 4) == 0);
  CHECK(naive_family_ok(reversed(t), u, DomFamily{Direction::out, [&] {
                          auto s = inf.sets;
                          for (auto& d : s) std::reverse(d.order.begin(), d.order.end());
                          return s;
                        }()},
                        4));

  CHECK_THROWS_AS(out_dom_family(gen_random(30, 1), {0, 1}, 4), PreconditionError);
}

TEST_CASE("family checker catches mutations") {
  Digraph t = gen_random(200, 13);
  std::vector<Vertex> u{3, 50, 7};
  DomFamily fam = out_dom_family(t, u, 4);
  REQUIRE(check_dom_family(t, u, fam, 4) == 0);
  DomFamily m = fam;
  m.sets[1].order.push_back(m.sets[0].order.front());
  CHECK(check_dom_family(t, u, m, 4) == 6);
  m = fam;
  m.sets[0].order.erase(m.sets[0].order.begin(), m.sets[0].order.end() - 1);
  CHECK(check_dom_family(t, u, m, 4) != 0);
  m = fam;
  m.sets[0].exceptional.clear();
  if (!fam.sets[0].exceptional.empty()) CHECK(check_dom_family(t, u, m, 4) == 1);
  m = fam;
  m.sets[2].exceptional.push_back(fam.sets[0].order.front());
  CHECK(check_dom_family(t, u, m, 4) != 0);
}
