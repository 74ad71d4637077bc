#include <algorithm>
#include <set>

#include "doctest.h"

#include "tourney/engine.hpp"
#include "tourney/hamilton.hpp"

using namespace tourney;

namespace {

EngineConfig best_effort(const Digraph& t, int k) { return default_config(Mode::best_effort, t, k); }

// Hamilton + pairwise edge-disjoint, read through has_edge only.
bool naive_certificate_ok(const Digraph& t, const std::vector<Cycle>& cs) {
  std::set<std::pair<int, int>> used;
  for (const Cycle& c : cs) {
    if (static_cast<int>(c.vertices.size()) != t.n()) return false;
    std::vector<char> seen(t.n(), 0);
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      int u = c.vertices[i], w = c.vertices[(i + 1) % c.vertices.size()];
      if (u < 0 || u >= t.n() || seen[u]) return false;
      seen[u] = 1;
      if (!t.has_edge(u, w) || !used.insert({u, w}).second) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("default configurations") {
  Digraph t = gen_random(600, 1);
  EngineConfig s = default_config(Mode::strict, t, 20);
  CHECK(s.C == 1e7);
  CHECK(s.t == 164 * 20);
  CHECK(s.c == 19);  // ceil(log2(50 * 3280) + 1) = ceil(18.32)
  CHECK(s.s == 30);
  EngineConfig b = best_effort(t, 2);
  CHECK(b.t == 6);
  CHECK(b.c >= 2);
  CHECK(b.s == 1);
  CHECK(8 * 2 * b.t * b.c <= 600);
}

TEST_CASE("strict mode fails at desk scale on G8") {
  Digraph t = gen_random(300, 3);
  EngineConfig cfg = default_config(Mode::strict, t, 2);
  try {
    build_good_structure(t, 2, cfg);
    FAIL("expected a stage failure");
  } catch (const StageError& e) {
    CHECK(e.stage() == "G8");
  }
  HamiltonCertificate cert = k_hamilton_cycles(t, 2, cfg);
  CHECK_FALSE(cert.valid);
  CHECK(cert.cycles.empty());
  REQUIRE(cert.failures.size() == 1);
  CHECK(cert.failures[0].find("G8") != std::string::npos);
}

TEST_CASE("good structure: best-effort build validates, operational reports the literal bounds") {
  Digraph t = gen_random(800, 23);
  EngineConfig cfg = best_effort(t, 1);
  cfg.t = 8;
  cfg.c = 5;
  GoodStructure gs = build_good_structure(t, 1, cfg);
  ConditionReport rep = validate_good_structure(t, gs, cfg);
  CHECK(rep.ok());
  for (const char* g : {"G1", "G2", "G6", "G7", "G9"}) CHECK(rep.at(g).status == CheckStatus::pass);
  // at n = 800 the exceptional sets and path lengths exceed the /50 and n/20 bounds
  CHECK(rep.at("G3").status == CheckStatus::waived);
  CHECK(rep.at("G5").status == CheckStatus::waived);

  EngineConfig op = cfg;
  op.mode = Mode::operational;
  ConditionReport orep = validate_good_structure(t, gs, op);
  CHECK(orep.at("G3").status == CheckStatus::fail);
  CHECK(orep.at("G8").status != CheckStatus::fail);
  try {
    build_good_structure(t, 1, op);
    FAIL("expected a stage failure");
  } catch (const StageError& e) {
    CHECK(e.stage() == "G3");
  }
}

TEST_CASE("good structure mutations are caught") {
  Digraph t = gen_random(500, 7);
  EngineConfig cfg = best_effort(t, 2);
  GoodStructure gs = build_good_structure(t, 2, cfg);
  REQUIRE(validate_good_structure(t, gs, cfg).ok());

  SUBCASE("drop a vertex from a dominating set") {
    GoodStructure m = gs;
    m.A[0][1].erase(m.A[0][1].begin());
    ConditionReport rep = validate_good_structure(t, m, cfg);
    CHECK_FALSE(rep.ok());
    bool flagged = rep.at("G1").status == CheckStatus::fail || rep.at("G3").status == CheckStatus::fail ||
                   rep.at("G5").status == CheckStatus::fail;
    CHECK(flagged);
  }
  SUBCASE("route a path through an activating edge") {
    GoodStructure m = gs;
    const CoveringEdge& ce = m.F[0][0];
    auto& pv = m.P[0][m.t - 1].vertices;
    auto it = std::adjacent_find(pv.begin(), pv.end(), [&](Vertex a, Vertex b) { return a == ce.x && b == ce.y; });
    REQUIRE(it != pv.end());
    pv.insert(it + 1, ce.v);
    CHECK(validate_good_structure(t, m, cfg).at("G7").status == CheckStatus::fail);
  }
  SUBCASE("duplicate covering edge") {
    GoodStructure m = gs;
    m.F[1][1] = m.F[1][0];
    CHECK(validate_good_structure(t, m, cfg).at("G7").status == CheckStatus::fail);
  }
  SUBCASE("empty structure") {
    GoodStructure m;
    m.k = 2;
    m.t = cfg.t;
    m.c = cfg.c;
    CHECK(validate_good_structure(t, m, cfg).at("G1").status == CheckStatus::fail);
  }
}

TEST_CASE("single round: hypotheses, claims and reversal symmetry") {
  Digraph t = gen_random(600, 29);
  EngineConfig cfg = best_effort(t, 2);
  cfg.debug = true;
  GoodStructure gs = build_good_structure(t, 2, cfg);
  EngineSlice sl = engine_slice(t, gs, 0, {});
  SingleResult r = single_hamilton(sl, cfg);
  CHECK(validate_cycle(sl.T, r.cycle, true));
  CHECK(r.trace.hypotheses.ok());
  CHECK(r.trace.claims.ok());
  for (const char* q : {"Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7"}) CHECK(r.trace.claims.at(q).status == CheckStatus::pass);
  CHECK(r.trace.insertion_ok);
  CHECK(r.trace.r <= r.trace.s);

  // the slice and its reversal pick opposite orientations, so the cycles mirror
  SingleResult m = [&] {
    EngineSlice rs;
    rs.T = reversed(sl.T);
    rs.k = sl.k;
    for (const auto& b : sl.B) rs.A.emplace_back(b.rbegin(), b.rend());
    for (const auto& a : sl.A) rs.B.emplace_back(a.rbegin(), a.rend());
    for (const Path& p : sl.P) rs.P.push_back(reversed(p));
    rs.EA = sl.EB;
    rs.EB = sl.EA;
    rs.X = sl.X;
    for (const auto& ce : sl.F) rs.F.push_back({ce.v, ce.y, ce.x});
    return single_hamilton(rs, cfg);
  }();
  CHECK(m.trace.reversed != r.trace.reversed);
  std::vector<Vertex> back(m.cycle.vertices.rbegin(), m.cycle.vertices.rend());
  CHECK(back == r.cycle.vertices);
}

TEST_CASE("single round rejects tampered hypotheses") {
  Digraph t = gen_random(600, 29);
  EngineConfig cfg = best_effort(t, 2);
  GoodStructure gs = build_good_structure(t, 2, cfg);
  EngineSlice sl = engine_slice(t, gs, 0, {});

  SUBCASE("exceptional set too large for the operational bound") {
    EngineConfig op = cfg;
    op.mode = Mode::operational;
    try {
      single_hamilton(sl, op);
      FAIL("expected a precondition failure");
    } catch (const PreconditionError& e) {
      CHECK(e.condition() == "(ii)");
      CHECK(std::string(e.what()).find("/40") != std::string::npos);
    }
  }
  SUBCASE("undominated vertex left out of E_A") {
    EngineSlice m = sl;
    Vertex drop = -1;
    for (auto v = m.EA.find_first(); v != VertexSet::npos; v = m.EA.find_next(v)) {
      VertexSet a0 = make_set(t.n(), m.A[0]);
      if (!m.T.in(static_cast<Vertex>(v)).intersects(a0)) {
        drop = static_cast<Vertex>(v);
        break;
      }
    }
    REQUIRE(drop >= 0);
    m.EA.reset(drop);
    try {
      single_hamilton(m, cfg);
      FAIL("expected a precondition failure");
    } catch (const PreconditionError& e) {
      CHECK(e.condition() == "(ii)");
    }
  }
  SUBCASE("covering edge removed") {
    EngineSlice m = sl;
    m.F.pop_back();
    CHECK_THROWS_AS(single_hamilton(m, cfg), PreconditionError);
  }
}

TEST_CASE("k edge-disjoint Hamilton cycles") {
  SUBCASE("k = 1 uses Camion") {
    Digraph t = gen_random(40, 5);
    HamiltonCertificate c = k_hamilton_cycles(t, 1, best_effort(t, 1));
    CHECK(c.valid);
    CHECK(c.cycles.size() == 1);
  }
  SUBCASE("not strongly connected") {
    Digraph t = gen_transitive(100);
    HamiltonCertificate c = k_hamilton_cycles(t, 2, best_effort(t, 2));
    CHECK_FALSE(c.valid);
    REQUIRE(c.failures.size() == 1);
    CHECK(c.failures[0] == "not strongly connected");
  }
  SUBCASE("k = 2 and k = 3 on random tournaments") {
    for (auto [n, k, seed] : {std::tuple{600, 2, 31}, std::tuple{400, 3, 2}}) {
      Digraph t = gen_random(n, seed);
      HamiltonCertificate c = k_hamilton_cycles(t, k, best_effort(t, k));
      INFO(n, " ", k);
      CHECK(c.valid);
      CHECK(static_cast<int>(c.cycles.size()) == k);
      CHECK(naive_certificate_ok(t, c.cycles));
    }
  }
  SUBCASE("k = 0 is rejected") {
    Digraph t = gen_random(20, 5);
    CHECK_THROWS_AS(k_hamilton_cycles(t, 0, best_effort(t, 1)), PreconditionError);
  }
}

TEST_CASE("certificates round-trip and re-verify") {
  Digraph t = gen_random(300, 11);
  HamiltonCertificate c = k_hamilton_cycles(t, 2, best_effort(t, 2));
  REQUIRE(c.valid);
  CHECK(c.input_sha.size() == 64);
  nlohmann::json j = to_json(c);
  CHECK(j.at("mode") == "best-effort");
  HamiltonCertificate back = certificate_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.cycles == c.cycles);
  CHECK(back.config.t == c.config.t);
  CHECK(verify_certificate(t, back));

  HamiltonCertificate bad = back;
  std::swap(bad.cycles[0].vertices[0], bad.cycles[0].vertices[5]);
  CHECK_FALSE(verify_certificate(t, bad));
  bad = back;
  bad.cycles[1] = bad.cycles[0];
  CHECK_FALSE(verify_certificate(t, bad));
  CHECK_FALSE(bad.edge_disjoint);
  bad = back;
  bad.input_sha[0] = bad.input_sha[0] == '0' ? '1' : '0';
  CHECK_FALSE(verify_certificate(t, bad));

  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS_AS(certificate_from_json(nlohmann::json{{"n", 3}}), ParseError);
}
