#include "doctest.h"

#include "oracles.hpp"
#include "tourney/connectivity.hpp"
#include "tourney/hamilton.hpp"
#include "tourney/linkage.hpp"

using namespace tourney;

namespace {
std::vector<int> random_perm(Rng& rng, int k) {
  std::vector<int> p(k);
  for (int i = 0; i < k; ++i) p[i] = i;
  rng.shuffle(p);
  return p;
}

void check_routing(const Digraph& t, const LinkageStructure& s, const std::vector<int>& pi) {
  PathSystem ps = route(s, pi);
  REQUIRE(static_cast<int>(ps.size()) == s.net.k);
  CHECK(vertex_disjoint(ps));
  for (int i = 0; i < s.net.k; ++i) {
    CHECK(validate_path(t, ps[i]));
    CHECK(ps[i].tail() == s.xs[pi[i]]);
    CHECK(ps[i].head() == s.zs[i]);
    for (Vertex v : ps[i].vertices) CHECK(s.vertices.test(v));
  }
}

std::vector<Vertex> distinct_vertices(Rng& rng, int n, int cnt) {
  std::vector<Vertex> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  rng.shuffle(all);
  all.resize(cnt);
  return all;
}
}  // namespace

TEST_CASE("a switch inside a switch") {
  // orientation-1 switch on a1=0, a2=1, b=2, b1=3, b2=4, completed to a tournament:
  // both entries also beat 5..11 so they have out-degree >= 7.
  DigraphBuilder b(12);
  auto add = [&](int u, int v) { b.add_edge(u, v); };
  add(0, 2); add(2, 3); add(2, 4); add(1, 3); add(1, 4);
  add(0, 1); add(3, 0); add(4, 0); add(2, 1); add(3, 4);
  for (int u = 0; u < 5; ++u)
    for (int v = 5; v < 12; ++v) add(u < 2 ? u : v, u < 2 ? v : u);
  for (int u = 5; u < 12; ++u)
    for (int v = u + 1; v < 12; ++v) add(u, v);
  Digraph t = b.build();
  REQUIRE(t.is_tournament());
  Switch sw = find_switch(t, 0, 1);
  CHECK(check_switch(t, sw));
  // N+(0)\{1} lowest three = {2,5,6}; N+(1)\{0} minus those = {3,4,7}; 2 beats 3 and 4 first
  CHECK(sw.b == 2);
  CHECK(sw.b1 == 3);
  CHECK(sw.b2 == 4);
  CHECK(sw.orientation == 1);
}

TEST_CASE("find_switch on random tournaments") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Digraph t = gen_random(40, 11 + seed);
    Switch sw = find_switch(t, 0, 1);
    CHECK(check_switch(t, sw));
    CHECK(sw.a1 == 0);
    CHECK(sw.a2 == 1);
  }
  Digraph tr = gen_transitive(20);
  CHECK_THROWS_AS(find_switch(tr, 16, 17), PreconditionError);  // out-degrees 3 and 2
  CHECK_THROWS_AS(find_switch(tr, 3, 3), PreconditionError);
}

TEST_CASE("switch mutation is detected") {
  Digraph t = gen_random(40, 11);
  Switch sw = find_switch(t, 0, 1);
  Switch bad = sw;
  bad.orientation = 3 - sw.orientation;
  CHECK_FALSE(check_switch(t, bad));
  bad = sw;
  bad.b1 = sw.a1;
  CHECK_FALSE(check_switch(t, bad));
}

TEST_CASE("linkage structure") {
  Digraph t = gen_random(400, 5);
  auto net = batcher(3);
  LinkageStructure s = build_linkage_structure(t, {0, 1, 2}, net);
  CHECK(check_linkage_structure(t, s));
  CHECK(static_cast<int>(s.vertices.count()) == 3 * static_cast<int>(net.comparators.size()) + 3);

  LinkageStructure e = build_linkage_structure(t, {4, 9}, ComparatorNetwork{2, {}});
  CHECK(e.zs == std::vector<Vertex>{4, 9});
  CHECK(e.vertices.count() == 2);
  PathSystem triv = route(e, {0, 1});
  CHECK(triv[0].vertices == std::vector<Vertex>{4});
  CHECK(triv[1].vertices == std::vector<Vertex>{9});

  Rng rng(1);
  for (int rep = 0; rep < 100; ++rep) check_routing(t, s, random_perm(rng, 3));
}

TEST_CASE("one comparator: crossing goes through the middle vertex when a1 swaps") {
  Digraph t = gen_random(100, 3);
  LinkageStructure s = build_linkage_structure(t, {10, 20}, batcher(2));
  REQUIRE(s.switches.size() == 1);
  const Switch& sw = s.switches[0];
  PathSystem ps = route(s, {1, 0});  // value 0 starts in register 1: swap
  check_routing(t, s, {1, 0});
  // value 1 sits at x_0 and must end at z_1 = b2
  CHECK(ps[1].tail() == 10);
  CHECK(ps[1].head() == sw.b2);
  VertexSet on = covered(t.n(), ps);
  CHECK(on.test(sw.b));
}

TEST_CASE("linkage structure on a transitive tournament runs out of room") {
  Digraph t = gen_transitive(30);
  CHECK_THROWS_AS(build_linkage_structure(t, {27, 28}, batcher(2)), LinkFailure);
  try {
    build_linkage_structure(t, {27, 28}, batcher(2));
  } catch (const LinkFailure& f) {
    CHECK(f.stage() == "comparator 0");
  }
}

TEST_CASE("link") {
  Digraph t = gen_random(600, 2);
  Rng rng(2);
  for (int rep = 0; rep < 3; ++rep) {
    auto v = distinct_vertices(rng, 600, 4);
    Pairs pairs{{v[0], v[1]}, {v[2], v[3]}};
    PathSystem ps = link(t, pairs);
    REQUIRE(ps.size() == 2);
    CHECK(vertex_disjoint(ps));
    for (int i = 0; i < 2; ++i) {
      CHECK(validate_path(t, ps[i]));
      CHECK(ps[i].tail() == pairs[i].first);
      CHECK(ps[i].head() == pairs[i].second);
    }
  }
  Digraph small = gen_random(30, 4);
  if (is_strongly_connected(small)) {
    PathSystem one = link(small, {{3, 17}});
    CHECK(validate_path(small, one[0]));
  }
  CHECK_THROWS_AS(link(gen_transitive(100), {{99, 0}}), LinkFailure);
  CHECK_THROWS_AS(link(t, {{1, 2}, {2, 3}}), PreconditionError);
  CHECK_THROWS_AS(link(t, {{1, 2}, {3, 4}}, Mode::strict), PreconditionError);
}

TEST_CASE("link with k = 4 on 500 vertices") {
  Digraph t = gen_random(500, 77);
  Pairs pairs{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  PathSystem ps = link(t, pairs);
  CHECK(vertex_disjoint(ps));
  for (int i = 0; i < 4; ++i) CHECK(validate_path(t, ps[i]));
}

TEST_CASE("internally disjoint linkage") {
  Digraph t = gen_random(200, 8);
  for (LinkBackend be : {LinkBackend::sorting_network, LinkBackend::greedy}) {
    Pairs plain{{1, 2}, {3, 4}};
    auto a = link_internally_disjoint(t, plain, be);
    CHECK(check_internally_disjoint(t, plain, a.paths));
    CHECK(vertex_disjoint(a.paths));

    Pairs shared{{1, 2}, {1, 3}, {4, 2}};
    auto b = link_internally_disjoint(t, shared, be);
    CHECK(check_internally_disjoint(t, shared, b.paths));

    Pairs degenerate{{5, 5}, {6, 7}};
    auto c = link_internally_disjoint(t, degenerate, be);
    CHECK(c.degenerate == std::vector<bool>{true, false});
    CHECK(c.paths[0].vertices == std::vector<Vertex>{5});
    CHECK(check_internally_disjoint(t, degenerate, c.paths));
  }
}

TEST_CASE("short linkage") {
  Digraph small = gen_random(20, 6);
  if (is_strongly_connected(small)) {
    PathSystem p = link_short(small, {{0, 5}}, 1);
    CHECK(p[0].size() <= 20);
  }
  Digraph t = gen_random(1000, 9);
  PathSystem ps = link_short(t, {{0, 1}, {2, 3}}, 5, LinkBackend::greedy);
  CHECK(check_internally_disjoint(t, {{0, 1}, {2, 3}}, ps));
  CHECK(covered(1000, ps).count() <= 200);
  PathSystem same = link_short(t, {{0, 1}, {0, 1}}, 3, LinkBackend::greedy);
  CHECK(check_internally_disjoint(t, {{0, 1}, {0, 1}}, same));
}

TEST_CASE("link with paths") {
  Digraph t = gen_random(300, 12);
  Pairs pairs{{0, 1}, {2, 3}};
  // empty systems
  auto out = link_with_paths(t, pairs, {{}, {}}, 4, LinkBackend::greedy);
  CHECK(check_link_with_paths(t, pairs, {{}, {}}, 4, out, 300) == 0);

  // one path with two edges for a single pair
  Path q = hamilton_path(induced(t, make_set(300, {10, 11, 12})).graph);
  for (Vertex& v : q.vertices) v += 10;
  REQUIRE(validate_path(t, q));
  auto one = link_with_paths(t, {{0, 1}}, {{q}}, 3, LinkBackend::greedy);
  CHECK(check_link_with_paths(t, {{0, 1}}, {{q}}, 3, one, 300) == 0);

  // overlapping systems: both use vertex 20, on edge-disjoint paths
  Path q1 = hamilton_path(induced(t, make_set(300, {20, 21})).graph);
  Path q2 = hamilton_path(induced(t, make_set(300, {20, 22})).graph);
  for (Vertex& v : q1.vertices) v = v == 0 ? 20 : 21;
  for (Vertex& v : q2.vertices) v = v == 0 ? 20 : 22;
  std::vector<PathSystem> qs{{q1}, {q2}};
  auto two = link_with_paths(t, pairs, qs, 3, LinkBackend::greedy);
  CHECK(check_link_with_paths(t, pairs, qs, 3, two, 300) == 0);
  VertexSet common = make_set(300, two[0].vertices) & make_set(300, two[1].vertices);
  CHECK(common.is_subset_of(make_set(300, {20})));

  auto sn = link_with_paths(t, pairs, qs, 1, LinkBackend::sorting_network);
  CHECK(check_link_with_paths(t, pairs, qs, 1, sn, 300) == 0);
}

TEST_CASE("brute force linkage oracle") {
  CHECK(brute_force_is_k_linked(gen_rotational(1), 1));
  CHECK_FALSE(brute_force_is_k_linked(gen_transitive(4), 1));
  CHECK_THROWS_AS(brute_force_is_k_linked(gen_random(11, 1), 1), GuardError);
  // greedy and sorting-network linkers succeed only on linkable pairs; when the oracle
  // says a 7-vertex tournament is 2-linked, every tuple must be linkable
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Digraph t = seed == 0 ? gen_rotational(3) : gen_random(7, seed);
    if (connectivity(t).kappa < 2) continue;
    bool linked = brute_force_is_k_linked(t, 2);
    std::vector<int> v{0, 1, 2, 3, 4, 5, 6};
    bool all = true;
    do {
      Pairs p{{v[0], v[1]}, {v[2], v[3]}};
      bool ok = brute_force_link(t, p);
      bool greedy_ok = true;
      try {
        auto r = link_internally_disjoint(t, p, LinkBackend::greedy);
        CHECK(check_internally_disjoint(t, p, r.paths));
        CHECK(vertex_disjoint(r.paths));
      } catch (const LinkFailure&) {
        greedy_ok = false;
      }
      if (greedy_ok) CHECK(ok);
      all = all && ok;
    } while (std::next_permutation(v.begin(), v.end()));
    CHECK(all == linked);
    ++agree;
  }
  CHECK(agree > 0);
}
