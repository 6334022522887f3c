#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>

#include "d2ca/error.hpp"

namespace d2ca {

/// Adjusted Rand index from the pair-counting contingency table. Returns 1 when
/// the chance-corrected denominator vanishes (both labelings trivial).
inline double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw LengthMismatch("adjusted_rand_index: labelings differ in length");
  if (a.size() < 2) throw LengthMismatch("adjusted_rand_index: need at least two points");
  std::map<std::pair<int, int>, std::uint64_t> table;
  std::map<int, std::uint64_t> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++table[{a[i], b[i]}];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  auto pairs = [](std::uint64_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); };
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, n] : table) index += pairs(n);
  for (const auto& [key, n] : rows) sum_a += pairs(n);
  for (const auto& [key, n] : cols) sum_b += pairs(n);
  const double expected = sum_a * sum_b / pairs(a.size());
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace d2ca
