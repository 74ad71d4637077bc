#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"

#include "oracles.hpp"
#include "tourney/engine.hpp"
#include "tourney/extremal.hpp"
#include "tourney/hamilton.hpp"

using namespace tourney;

namespace {

std::vector<std::pair<int, int>> edge_list(const Digraph& d) {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < d.n(); ++u)
    for (int v = 0; v < d.n(); ++v)
      if (d.has_edge(u, v)) es.push_back({u, v});
  return es;
}

// Largest r such that some edge subset gives every vertex in- and out-degree r.
int naive_max_regular(const Digraph& d) {
  auto es = edge_list(d);
  REQUIRE(es.size() <= 20);
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << es.size()); ++mask) {
    std::vector<int> in(d.n(), 0), out(d.n(), 0);
    for (std::size_t i = 0; i < es.size(); ++i)
      if (mask >> i & 1) ++out[es[i].first], ++in[es[i].second];
    bool reg = true;
    for (int v = 0; v < d.n(); ++v) reg = reg && in[v] == out[0] && out[v] == out[0];
    if (reg) best = std::max(best, out[0]);
  }
  return best;
}

// All Hamilton cycles by permutation, then the largest pairwise edge-disjoint family.
int naive_packing(const Digraph& d) {
  int n = d.n();
  std::vector<std::set<std::pair<int, int>>> cyc;
  std::vector<int> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    std::set<std::pair<int, int>> es;
    int prev = 0;
    bool ok = true;
    for (int v : perm) {
      ok = ok && d.has_edge(prev, v);
      es.insert({prev, v});
      prev = v;
    }
    if (ok && d.has_edge(prev, 0)) {
      es.insert({prev, 0});
      cyc.push_back(es);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  int best = 0;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    best = std::max(best, static_cast<int>(chosen.size()));
    for (std::size_t i = from; i < cyc.size(); ++i) {
      bool disjoint = true;
      for (int j : chosen)
        for (const auto& e : cyc[i]) disjoint = disjoint && !cyc[j].count(e);
      if (!disjoint) continue;
      chosen.push_back(static_cast<int>(i));
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

void check_witness(const Digraph& d, const RegularSubdigraphReport& r) {
  std::vector<int> in(d.n(), 0), out(d.n(), 0);
  std::set<Edge> seen;
  for (const Edge& e : r.witness) {
    CHECK(d.has_edge(e.from, e.to));
    CHECK(seen.insert(e).second);
    ++out[e.from];
    ++in[e.to];
  }
  for (int v = 0; v < d.n(); ++v) {
    CHECK(in[v] == r.max_r);
    CHECK(out[v] == r.max_r);
  }
  CHECK(r.infeasible.r == r.max_r + 1);
  CHECK(cut_capacity(d, r.infeasible) < static_cast<long long>(d.n()) * (r.max_r + 1));
}

}  // namespace

TEST_CASE("max regular degree: small examples") {
  for (int ell = 1; ell <= 4; ++ell) {
    RegularSubdigraphReport r = max_regular_degree(gen_rotational(ell));
    CHECK(r.max_r == ell);
    check_witness(gen_rotational(ell), r);
  }
  RegularSubdigraphReport tr = max_regular_degree(gen_transitive(6));
  CHECK(tr.max_r == 0);
  CHECK(tr.witness.empty());
  check_witness(gen_transitive(6), tr);
  RegularSubdigraphReport e = max_regular_degree(gen_extremal(5, 1));
  CHECK(e.max_r == 2);
  check_witness(gen_extremal(5, 1), e);
}

TEST_CASE("max regular degree agrees with subset enumeration") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + static_cast<int>(rng() % 3);
    Digraph t = gen_random(n, rng());
    RegularSubdigraphReport r = max_regular_degree(t);
    CHECK(r.max_r == naive_max_regular(t));
    check_witness(t, r);
  }
}

TEST_CASE("exhaustive packing agrees with the permutation oracle") {
  CHECK(max_hamilton_packing(gen_rotational(3)).count == 3);
  CHECK(max_hamilton_packing(gen_rotational(2)).count == 2);
  CHECK(max_hamilton_packing(gen_transitive(6)).count == 0);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);
    Digraph t = gen_random(n, rng());
    PackingResult p = max_hamilton_packing(t);
    INFO("n = ", n);
    CHECK(p.count == naive_packing(t));
    CHECK(static_cast<int>(p.cycles.size()) == p.count);
    for (const Cycle& c : p.cycles) CHECK(validate_cycle(t, c, true));
    CHECK(edge_disjoint(p.cycles));
    // cycles embed in a regular spanning subdigraph
    CHECK(max_regular_degree(t).max_r >= p.count);
  }
  CHECK_THROWS_AS(max_hamilton_packing(gen_random(13, 1)), GuardError);
}

TEST_CASE("engine certificates embed in a regular subdigraph") {
  Digraph t = gen_random(300, 11);
  HamiltonCertificate c = k_hamilton_cycles(t, 2, default_config(Mode::best_effort, t, 2));
  REQUIRE(c.valid);
  std::vector<int> in(t.n(), 0), out(t.n(), 0);
  for (const Cycle& cy : c.cycles)
    for (const Edge& e : cy.edges()) ++out[e.from], ++in[e.to];
  for (int v = 0; v < t.n(); ++v) CHECK((in[v] == 2 && out[v] == 2));
  CHECK(max_regular_degree(t).max_r >= 2);
}

TEST_CASE("extremal claims") {
  SUBCASE("(5,1) with exhaustive packing") {
    ExtremalReport r = verify_extremal_claims(5, 1);
    CHECK(r.n == 11);
    CHECK(r.kappa == oracle::kappa(gen_extremal(5, 1)));
    CHECK(r.kappa == 2);
    CHECK(r.kappa_lower_ok);
    CHECK(r.claim2_applicable);
    CHECK(r.claim2_ok == true);
    CHECK(r.max_r == 2);
    CHECK(r.packing == 2);
    CHECK(r.ham_upper_ok == true);
    CHECK(r.back_edges == 3);
    CHECK(r.binomial_ok);
  }
  SUBCASE("(7,2) skips the packing count") {
    ExtremalReport r = verify_extremal_claims(7, 2);
    CHECK(r.n == 17);
    CHECK(r.kappa == oracle::kappa(gen_extremal(7, 2)));
    CHECK(r.kappa == 3);
    CHECK(r.kappa_lower_ok);
    CHECK(r.claim2_ok == true);
    CHECK(r.max_r == 2);
    CHECK_FALSE(r.packing.has_value());
    CHECK_FALSE(r.ham_upper_ok.has_value());
  }
  SUBCASE("(9,3)") {
    ExtremalReport r = verify_extremal_claims(9, 3);
    CHECK(r.kappa == 4);
    CHECK(r.max_r == 3);
    CHECK(r.claim2_ok == true);
  }
  SUBCASE("small m: claim not applicable, and the bound really breaks") {
    ExtremalReport r = verify_extremal_claims(1, 2);
    CHECK_FALSE(r.claim2_applicable);
    CHECK_FALSE(r.claim2_ok.has_value());
    CHECK(r.max_r == 3);  // 9 > 4 * 2
    CHECK(r.packing == 3);
    nlohmann::json j = to_json(r);
    CHECK(j.at("claim2_ok").is_null());
  }
  SUBCASE("guard") { CHECK_THROWS_AS(verify_extremal_claims(150, 20), GuardError); }
}

TEST_CASE("claim 2 counting chain for small ell") {
  for (int ell = 1; ell <= 6; ++ell) {
    Digraph t = gen_extremal(9, ell);
    int q = 2 * ell + 1, back = 0;
    for (int u = q; u < t.n(); ++u)
      for (int v = 0; v < q; ++v) back += t.has_edge(u, v);
    CHECK(back == q);
    int r = 1;
    while (r * r <= 4 * ell) ++r;  // smallest r > sqrt(4 ell)
    CHECK(r * (r + 1) / 2 > q);
    ExtremalReport rep = verify_extremal_claims(9, ell);
    CHECK(rep.back_edges == back);
    CHECK(rep.binomial_ok);
  }
}
