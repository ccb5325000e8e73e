#pragma once

// Brute-force reference values obtained by filtering every permutation with
// std::next_permutation. Deliberately independent of the library's pruned
// recursive enumeration and of its closed-form tables. Usable up to m = 9
// or so; cost is m! per call.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

// Down-up when reverse is false: p(1) > p(2) < p(3) > ...
inline bool is_zigzag(const std::vector<int>& p, bool reverse) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const bool descent = (i % 2 == 0) != reverse;
    if (descent ? (p[i] < p[i + 1]) : (p[i] > p[i + 1])) return false;
  }
  return true;
}

inline std::vector<std::vector<int>> all_zigzag(int m, bool reverse) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    if (is_zigzag(p, reverse)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline long long count_zigzag(int m, bool reverse) {
  return static_cast<long long>(all_zigzag(m, reverse).size());
}

// Counts by value at a 1-based position: out[v-1] = #{p : p(pos) = v}.
inline std::vector<long long> zigzag_position_counts(int m, bool reverse,
                                                     int pos) {
  std::vector<long long> out(m, 0);
  for (const auto& p : all_zigzag(m, reverse)) ++out[p[pos - 1] - 1];
  return out;
}

inline double zigzag_position_mean(int m, bool reverse, int pos) {
  auto perms = all_zigzag(m, reverse);
  long long total = 0;
  for (const auto& p : perms) total += p[pos - 1];
  return double(total) / double(perms.size());
}

}  // namespace oracle
