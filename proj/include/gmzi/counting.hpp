#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gmzi {

namespace detail {

inline std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b,
                                     const char* what) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error(std::string(what) + ": result exceeds 64 bits");
  }
  return out;
}

}  // namespace detail

// Number of injective port assignments of n senders into m receivers,
// i.e. the falling factorial m * (m-1) * ... * (m-n+1), with the number of
// factors capped at min(n, m). For n = m it is m!.
inline std::uint64_t count_permutations(std::uint64_t n, std::uint64_t m) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < std::min(n, m); ++i) {
    result = detail::checked_mul_u64(result, m - i, "count_permutations");
  }
  return result;
}

// Number of perfect matchings on n labelled endpoints (n even):
// (n-1) * (n-3) * ... * 1.
inline std::uint64_t count_perfect_matchings(std::uint64_t n) {
  if (n % 2 != 0) {
    throw std::invalid_argument("count_perfect_matchings: need an even count, got " +
                                std::to_string(n));
  }
  std::uint64_t result = 1;
  for (std::uint64_t k = n; k >= 2; k -= 2) {
    result = detail::checked_mul_u64(result, k - 1, "count_perfect_matchings");
  }
  return result;
}

}  // namespace gmzi
