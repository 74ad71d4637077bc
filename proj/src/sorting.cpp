#include "tourney/sorting.hpp"

#include <algorithm>

#include "tourney/error.hpp"

namespace tourney {

ComparatorNetwork batcher(int k) {
  if (k < 2) throw PreconditionError("k >= 2", "batcher needs at least two registers");
  ComparatorNetwork net;
  net.k = k;
  // Odd-even merge sort over the next power of two; comparators that would touch a
  // padding register (index >= k) are never generated because the loop bounds use k.
  for (int p = 1; p < k; p += p)
    for (int d = p; d >= 1; d /= 2)
      for (int j = d % p; j <= k - 1 - d; j += 2 * d)
        for (int i = 0; i <= std::min(d - 1, k - j - d - 1); ++i)
          if ((i + j) / (2 * p) == (i + j + d) / (2 * p)) net.comparators.push_back({i + j, i + j + d});
  return net;
}

bool verify_zero_one(const ComparatorNetwork& net) {
  if (net.k > 24) throw GuardError("verify_zero_one: k > 24");
  int k = net.k;
  for (const Comparator& c : net.comparators)
    if (c.s < 0 || c.t >= k || c.s >= c.t) return false;
  for (std::uint32_t x = 0; x < (1u << k); ++x) {
    std::uint32_t v = x;
    for (const Comparator& c : net.comparators) {
      std::uint32_t bs = v >> c.s & 1, bt = v >> c.t & 1;
      if (bs && !bt) v ^= (1u << c.s) | (1u << c.t);
    }
    // sorted means all ones sit in the top registers
    int ones = __builtin_popcount(v);
    std::uint32_t want = ones == 0 ? 0 : (((1u << ones) - 1) << (k - ones));
    if (v != want) return false;
  }
  return true;
}

PermutationTrace trace_permutation(const ComparatorNetwork& net, const std::vector<int>& pi) {
  int k = net.k;
  if (static_cast<int>(pi.size()) != k) throw PreconditionError("bijection", "permutation has wrong length");
  std::vector<int> value_at(k, -1);
  for (int v = 0; v < k; ++v) {
    if (pi[v] < 0 || pi[v] >= k || value_at[pi[v]] != -1)
      throw PreconditionError("bijection", "input is not a permutation of registers");
    value_at[pi[v]] = v;
  }
  PermutationTrace tr;
  tr.perms.push_back(pi);
  std::vector<int> cur = pi;
  for (const Comparator& c : net.comparators) {
    bool sw = value_at[c.s] > value_at[c.t];
    if (sw) {
      std::swap(value_at[c.s], value_at[c.t]);
      cur[value_at[c.s]] = c.s;
      cur[value_at[c.t]] = c.t;
    }
    tr.swapped.push_back(sw);
    tr.perms.push_back(cur);
  }
  return tr;
}

nlohmann::json to_json(const ComparatorNetwork& net) {
  nlohmann::json cs = nlohmann::json::array();
  for (const Comparator& c : net.comparators) cs.push_back({c.s, c.t});
  return {{"k", net.k}, {"comparators", cs}};
}

ComparatorNetwork network_from_json(const nlohmann::json& j) {
  ComparatorNetwork net;
  net.k = j.at("k").get<int>();
  for (const auto& c : j.at("comparators")) {
    Comparator x{c.at(0).get<int>(), c.at(1).get<int>()};
    if (x.s < 0 || x.s >= x.t || x.t >= net.k) throw Error("comparator out of range");
    net.comparators.push_back(x);
  }
  return net;
}

}  // namespace tourney
