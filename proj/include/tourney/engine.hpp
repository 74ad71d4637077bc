#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tourney/domination.hpp"
#include "tourney/error.hpp"
#include "tourney/graph.hpp"
#include "tourney/paths.hpp"

namespace tourney {

struct EngineConfig {
  double C = 1e7;
  int t = 0;
  int c = 0;
  int s = 30;
  Mode mode = Mode::strict;
  bool debug = false;
};

// Strict: the published constants. Operational: same t, c, s but every step's own
// inequality is checked. Best-effort: t = 2k+2, c sized to the host, s = 1.
EngineConfig default_config(Mode mode, const Digraph& t, int k);

nlohmann::json to_json(const EngineConfig& cfg);

// Sets are stored tail first: A[i][l].back() is the head, B[i][l].front() the tail.
struct GoodStructure {
  int k = 0, t = 0, c = 0;
  std::vector<std::vector<std::vector<Vertex>>> A, B;
  std::vector<std::vector<Vertex>> EA, EB;
  std::vector<std::vector<CoveringEdge>> F;
  std::vector<std::vector<Path>> P;
  int d_minus = 0, d_plus = 0;

  std::vector<Vertex> heads_A() const;   // A
  std::vector<Vertex> tails_A() const;   // A'
  std::vector<Vertex> heads_B() const;   // B
  std::vector<Vertex> tails_B() const;   // B'
  VertexSet star(int n, int i) const;    // A_i* u B_i*
  VertexSet star(int n) const;           // A* u B*
  std::vector<Edge> activating(int i) const;
};

enum class CheckStatus { pass, fail, waived };
std::string to_string(CheckStatus s);

struct ConditionResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct ConditionReport {
  std::vector<ConditionResult> conditions;
  bool ok() const;  // nothing failed (waived is fine)
  const ConditionResult* first_failure() const;
  const ConditionResult& at(const std::string& name) const;
};

// (G1)-(G9). Quantitative bounds fail in strict mode, fail in operational mode except
// the (G8) constant, and are waived in best-effort mode.
ConditionReport validate_good_structure(const Digraph& t, const GoodStructure& gs, const EngineConfig& cfg);

GoodStructure build_good_structure(const Digraph& t, int k, const EngineConfig& cfg);

// Everything one round of the single-cycle engine needs, in the coordinates of T_i.
struct EngineSlice {
  Digraph T;
  int k = 0;
  std::vector<std::vector<Vertex>> A, B;
  std::vector<Path> P;
  VertexSet EA, EB, X;
  std::vector<CoveringEdge> F;
};

EngineSlice engine_slice(const Digraph& t, const GoodStructure& gs, int i, const std::vector<Cycle>& earlier);

struct EngineTrace {
  ConditionReport hypotheses;  // (i)-(vii) and the degree bounds
  ConditionReport claims;      // (Q1)-(Q7) after the last reshaping stage
  bool reversed = false;
  int p1 = 0, q1 = 0, r = 0, s = 0;
  int inserted = 0;
  bool insertion_ok = false;
};

struct SingleResult {
  Cycle cycle;
  EngineTrace trace;
};

SingleResult single_hamilton(const EngineSlice& slice, const EngineConfig& cfg);

struct HamiltonCertificate {
  int n = 0;
  std::string input_sha;
  int k = 0;
  Mode mode = Mode::strict;
  EngineConfig config;
  std::vector<Cycle> cycles;
  std::vector<bool> cycle_valid;
  bool edge_disjoint = false;
  bool valid = false;
  std::vector<std::string> failures;
};

std::string sha256_hex(const std::string& data);
// Hash of the canonical text form, so any file that parses to T hashes the same.
std::string input_sha(const Digraph& t);

// `traces`, if given, receives one entry per completed engine round.
HamiltonCertificate k_hamilton_cycles(const Digraph& t, int k, const EngineConfig& cfg,
                                      std::vector<EngineTrace>* traces = nullptr);

// Recomputes cycle_valid, edge_disjoint and valid from T alone; false on a hash mismatch.
bool verify_certificate(const Digraph& t, HamiltonCertificate& cert);

nlohmann::json to_json(const HamiltonCertificate& cert);
HamiltonCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace tourney
