#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gmzi/phase_config.hpp"

namespace gmzi {

// Coupler pairs of one pairing level of the power-of-two interferometer.
// Levels are 1-based; level 1 sits next to the phase layer and couples ports
// that are n/2 apart, while the outermost level couples nearest neighbours.
// Concretely, level l pairs port k with port k + n/2^l inside every
// consecutive block of n/2^(l-1) ports:
//   n=8, l=1: (1,5)(2,6)(3,7)(4,8)
//   n=8, l=2: (1,3)(2,4)(5,7)(6,8)
//   n=8, l=3: (1,2)(3,4)(5,6)(7,8)
inline std::vector<std::pair<int, int>> butterfly_layer_pairs(int n, int level) {
  if (n < 2 || !is_power_of_two(static_cast<std::uint64_t>(n))) {
    throw std::invalid_argument("butterfly_layer_pairs: n must be a power of two >= 2");
  }
  const int levels = log2_exact(static_cast<std::uint64_t>(n));
  if (level < 1 || level > levels) {
    throw std::invalid_argument("butterfly_layer_pairs: level " +
                                std::to_string(level) + " out of range 1.." +
                                std::to_string(levels));
  }
  const int block = n >> (level - 1);   // size of each repeating block
  const int offset = n >> level;        // distance between paired ports
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(n / 2));
  for (int start = 0; start < n; start += block) {
    for (int k = 1; k <= offset; ++k) {
      pairs.emplace_back(start + k, start + k + offset);
    }
  }
  return pairs;
}

inline int butterfly_levels(int n) {
  if (n < 1 || !is_power_of_two(static_cast<std::uint64_t>(n))) {
    throw std::invalid_argument("butterfly_levels: n must be a power of two");
  }
  return log2_exact(static_cast<std::uint64_t>(n));
}

}  // namespace gmzi
