#pragma once

#include <vector>

#include "json.hpp"

namespace tourney {

// Registers are 0-based: a comparator (s;t) has 0 <= s < t < k.
struct Comparator {
  int s = 0;
  int t = 0;
  friend bool operator==(const Comparator&, const Comparator&) = default;
};

struct ComparatorNetwork {
  int k = 0;
  std::vector<Comparator> comparators;
};

ComparatorNetwork batcher(int k);
bool verify_zero_one(const ComparatorNetwork& net);

// perms[q][value] = register holding `value` after q comparators; perms[0] = pi.
struct PermutationTrace {
  std::vector<std::vector<int>> perms;
  std::vector<bool> swapped;
};
PermutationTrace trace_permutation(const ComparatorNetwork& net, const std::vector<int>& pi);

nlohmann::json to_json(const ComparatorNetwork& net);
ComparatorNetwork network_from_json(const nlohmann::json& j);

}  // namespace tourney
