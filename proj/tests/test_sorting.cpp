#include "doctest.h"

#include <cmath>

#include "tourney/graph.hpp"
#include "tourney/sorting.hpp"

using namespace tourney;

namespace {
// direct register simulation: returns final value_at[] and per-step swaps
std::pair<std::vector<int>, std::vector<bool>> simulate(const ComparatorNetwork& net, std::vector<int> value_at) {
  std::vector<bool> sw;
  for (auto c : net.comparators) {
    bool s = value_at[c.s] > value_at[c.t];
    if (s) std::swap(value_at[c.s], value_at[c.t]);
    sw.push_back(s);
  }
  return {value_at, sw};
}
}  // namespace

TEST_CASE("batcher small cases") {
  auto b2 = batcher(2);
  REQUIRE(b2.comparators.size() == 1);
  CHECK(b2.comparators[0] == Comparator{0, 1});
  CHECK(batcher(4).comparators.size() == 5);
  CHECK(batcher(8).comparators.size() == 19);
  CHECK(batcher(16).comparators.size() == 63);
  CHECK_THROWS_AS(batcher(1), PreconditionError);
}

TEST_CASE("zero-one verification") {
  for (int k = 2; k <= 16; ++k) CHECK(verify_zero_one(batcher(k)));
  CHECK_FALSE(verify_zero_one(ComparatorNetwork{3, {}}));
  CHECK(verify_zero_one(ComparatorNetwork{3, {{0, 1}, {1, 2}, {0, 1}}}));
  CHECK_FALSE(verify_zero_one(ComparatorNetwork{3, {{0, 1}, {1, 2}}}));
  CHECK_THROWS_AS(verify_zero_one(ComparatorNetwork{25, {}}), GuardError);
}

TEST_CASE("comparator count bound") {
  for (int k = 3; k <= 64; ++k) {
    auto net = batcher(k);
    double l = std::log2(static_cast<double>(k));
    CHECK(static_cast<double>(net.comparators.size()) <= 2.0 * k * l * l);
    for (auto c : net.comparators) {
      CHECK(c.s < c.t);
      CHECK(c.t < k);
    }
  }
}

TEST_CASE("trace permutation") {
  auto id2 = trace_permutation(batcher(2), {0, 1});
  CHECK(id2.perms.back() == std::vector<int>{0, 1});
  CHECK(id2.swapped == std::vector<bool>{false});
  auto sw2 = trace_permutation(batcher(2), {1, 0});
  CHECK(sw2.perms.back() == std::vector<int>{0, 1});
  CHECK(sw2.swapped == std::vector<bool>{true});

  // reversal on 4 registers: value i starts in register 3-i.
  // By hand: [3,2,1,0] -(0,1)-> [2,3,1,0] -(2,3)-> [2,3,0,1] -(0,2)-> [0,3,2,1] -(1,3)-> [0,1,2,3], then (1,2) idle.
  auto net4 = batcher(4);
  auto tr = trace_permutation(net4, {3, 2, 1, 0});
  CHECK(tr.perms.size() == 6);
  CHECK(tr.perms.back() == std::vector<int>{0, 1, 2, 3});
  auto sim = simulate(net4, {3, 2, 1, 0});
  CHECK(tr.swapped == sim.second);
  CHECK(tr.swapped == std::vector<bool>{true, true, true, true, false});
  CHECK_THROWS_AS(trace_permutation(net4, {0, 0, 1, 2}), PreconditionError);
}

TEST_CASE("random permutations end sorted and agree with simulation") {
  Rng rng(5);
  for (int k = 2; k <= 10; ++k) {
    auto net = batcher(k);
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<int> pi(k);
      for (int i = 0; i < k; ++i) pi[i] = i;
      rng.shuffle(pi);
      auto tr = trace_permutation(net, pi);
      std::vector<int> id(k);
      for (int i = 0; i < k; ++i) id[i] = i;
      CHECK(tr.perms.back() == id);
      std::vector<int> value_at(k);
      for (int v = 0; v < k; ++v) value_at[pi[v]] = v;
      auto sim = simulate(net, value_at);
      CHECK(tr.swapped == sim.second);
      for (std::size_t q = 0; q < tr.perms.size(); ++q) {
        // perms[q] is a bijection
        std::vector<int> seen(k, 0);
        for (int v = 0; v < k; ++v) seen[tr.perms[q][v]]++;
        CHECK(std::count(seen.begin(), seen.end(), 1) == k);
      }
    }
  }
}

TEST_CASE("json round trip") {
  auto net = batcher(7);
  auto back = network_from_json(to_json(net));
  CHECK(back.k == 7);
  CHECK(back.comparators == net.comparators);
}
