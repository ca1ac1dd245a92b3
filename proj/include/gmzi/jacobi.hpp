#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace gmzi {

// Binomial coefficient as a double. Returns 0 when k < 0 or k > n, and
// requires n >= 0. Intermediate products are themselves binomial
// coefficients, so the result is exact as long as it stays below 2^53.
inline double binomial(long long n, long long k) {
  if (n < 0) {
    throw std::invalid_argument("binomial: negative row " + std::to_string(n));
  }
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double result = 1.0;
  for (long long i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
    result = std::round(result);
  }
  return result;
}

// Jacobi polynomial P^{(p,q)}_r(x) in the finite-sum form
//
//   P^{(p,q)}_r(x) = sum_{s=0}^{r} C(r+p, r-s) C(r+q, s)
//                    ((x-1)/2)^s ((x+1)/2)^{r-s}.
//
// The degree r must be a non-negative integer. The parameters p and q may be
// negative integers as long as r+p >= 0 and r+q >= 0, which is the domain the
// interferometer matrix elements need.
inline double jacobi_poly(int p, int q, int r, double x) {
  if (r < 0) {
    throw std::invalid_argument("jacobi_poly: degree r must be >= 0, got " +
                                std::to_string(r));
  }
  if (r + p < 0 || r + q < 0) {
    throw std::invalid_argument(
        "jacobi_poly: requires r+p >= 0 and r+q >= 0, got p=" +
        std::to_string(p) + " q=" + std::to_string(q) + " r=" +
        std::to_string(r));
  }
  const double minus = (x - 1.0) / 2.0;
  const double plus = (x + 1.0) / 2.0;
  double sum = 0.0;
  for (int s = 0; s <= r; ++s) {
    const double c1 = binomial(r + p, r - s);
    const double c2 = binomial(r + q, s);
    if (c1 == 0.0 || c2 == 0.0) continue;
    sum += c1 * c2 * std::pow(minus, s) * std::pow(plus, r - s);
  }
  return sum;
}

}  // namespace gmzi
