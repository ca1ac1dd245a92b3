#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmzi/jacobi.hpp"

namespace gmzi {

// Dense real (2j+1) x (2j+1) block. Row r corresponds to mu = j - r and
// column c to nu = j - c, so the top-left entry carries (mu, nu) = (j, j).
// In the two-mode photon-number picture the same index r labels the basis
// state |n - r, r> with n = 2j photons shared by the mode pair.
struct WignerBlock {
  int two_j = 0;
  double theta = 0.0;
  std::vector<double> entries;  // row-major, dim() x dim()

  int dim() const { return two_j + 1; }

  double at(int r, int c) const { return entries[static_cast<size_t>(r) * dim() + c]; }

  double& at(int r, int c) { return entries[static_cast<size_t>(r) * dim() + c]; }
};

namespace detail {

inline double factorial_as_double(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// sqrt((j+mu)! (j-mu)! / ((j+nu)! (j-nu)!)) with the four arguments given
// directly as non-negative integers.
inline double rotation_prefactor(int j_plus_mu, int j_minus_mu, int j_plus_nu,
                                 int j_minus_nu) {
  const int largest = std::max(std::max(j_plus_mu, j_minus_mu),
                               std::max(j_plus_nu, j_minus_nu));
  if (largest <= 170) {
    return std::sqrt(factorial_as_double(j_plus_mu) *
                     factorial_as_double(j_minus_mu) /
                     (factorial_as_double(j_plus_nu) *
                      factorial_as_double(j_minus_nu)));
  }
  return std::exp(0.5 * (std::lgamma(j_plus_mu + 1.0) +
                         std::lgamma(j_minus_mu + 1.0) -
                         std::lgamma(j_plus_nu + 1.0) -
                         std::lgamma(j_minus_nu + 1.0)));
}

// Single matrix element d^{(j)}_{mu,nu}(theta) of the two-mode rotation.
// Inputs are in doubled half-integer units (two_mu = 2*mu etc).
//
// The closed form
//
//   d_{mu,nu} = sqrt((j+mu)!(j-mu)! / ((j+nu)!(j-nu)!))
//               (sin th/2)^{mu-nu} (cos th/2)^{mu+nu}
//               P^{(mu-nu, mu+nu)}_{j-mu}(cos th)
//
// carries negative powers of sin or cos when mu-nu < 0 or mu+nu < 0. Those
// regions are reached through the rotation symmetries
//   d_{mu,nu} = d_{-nu,-mu}   and   d_{mu,nu} = (-1)^{mu-nu} d_{nu,mu},
// after which both exponents are non-negative and the form above applies
// directly.
inline double wigner_entry(int two_j, int two_mu, int two_nu, double theta) {
  double sign = 1.0;
  if (two_mu + two_nu < 0) {
    const int m = -two_nu;
    const int n = -two_mu;
    two_mu = m;
    two_nu = n;
  }
  if (two_mu - two_nu < 0) {
    if (((two_nu - two_mu) / 2) % 2 != 0) sign = -sign;
    std::swap(two_mu, two_nu);
  }
  const int a = (two_mu - two_nu) / 2;  // sin exponent, >= 0
  const int b = (two_mu + two_nu) / 2;  // cos exponent, >= 0
  const int r = (two_j - two_mu) / 2;   // polynomial degree, >= 0
  const double pref = rotation_prefactor((two_j + two_mu) / 2,
                                         (two_j - two_mu) / 2,
                                         (two_j + two_nu) / 2,
                                         (two_j - two_nu) / 2);
  const double s = std::sin(theta / 2.0);
  const double c = std::cos(theta / 2.0);
  return sign * pref * std::pow(s, a) * std::pow(c, b) *
         jacobi_poly(a, b, r, std::cos(theta));
}

}  // namespace detail

// Rotation matrix d^{(j)}(theta) for total spin j = two_j / 2. Row r holds
// mu = j - r and column c holds nu = j - c.
inline WignerBlock wigner_d(int two_j, double theta) {
  if (two_j < 0) {
    throw std::invalid_argument("wigner_d: two_j must be >= 0, got " +
                                std::to_string(two_j));
  }
  WignerBlock block;
  block.two_j = two_j;
  block.theta = theta;
  const int dim = two_j + 1;
  block.entries.assign(static_cast<size_t>(dim) * dim, 0.0);
  for (int r = 0; r < dim; ++r) {
    const int two_mu = two_j - 2 * r;
    for (int c = 0; c < dim; ++c) {
      const int two_nu = two_j - 2 * c;
      block.at(r, c) = detail::wigner_entry(two_j, two_mu, two_nu, theta);
    }
  }
  return block;
}

// Matrix a 50/50-style two-mode coupler applies to amplitude column vectors.
// Index r labels |n - r, r> with n = two_j photons in the mode pair. This is
// the transpose of wigner_d(two_j, theta) and equals the exponential
// exp[-(theta/2)(J+ - J-)] in the same index convention, so at(r, c) is the
// coefficient taking input state c to output state r.
inline WignerBlock beam_splitter_matrix(int two_j, double theta) {
  WignerBlock d = wigner_d(two_j, theta);
  WignerBlock action;
  action.two_j = two_j;
  action.theta = theta;
  const int dim = d.dim();
  action.entries.assign(static_cast<size_t>(dim) * dim, 0.0);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      action.at(r, c) = d.at(c, r);
    }
  }
  return action;
}

}  // namespace gmzi
