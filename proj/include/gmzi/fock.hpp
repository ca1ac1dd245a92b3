#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmzi/errors.hpp"

namespace gmzi {

// Hard ceiling on basis dimension, overridable through the environment
// variable GMZI_FABRIC_MAX_DIM.
inline std::uint64_t max_fock_dimension() {
  if (const char* env = std::getenv("GMZI_FABRIC_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw std::invalid_argument(
        "GMZI_FABRIC_MAX_DIM must be a positive integer, got \"" +
        std::string(env) + "\"");
  }
  return 200000;
}

// C(n, k) in unsigned 64-bit arithmetic with overflow detection.
inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i is integral at each step; divide by
    // gcd pieces first to delay overflow.
    std::uint64_t num = n - k + i;
    std::uint64_t den = i;
    const std::uint64_t g1 = std::gcd(result, den);
    std::uint64_t r = result / g1;
    den /= g1;
    const std::uint64_t g2 = std::gcd(num, den);
    num /= g2;
    den /= g2;
    if (den != 1) {
      throw std::overflow_error("binomial_u64: internal reduction failed");
    }
    if (num != 0 && r > UINT64_MAX / num) {
      throw std::overflow_error("binomial_u64: overflow computing C(" +
                                std::to_string(n) + "," + std::to_string(k) + ")");
    }
    result = r * num;
  }
  return result;
}

// Number basis of n_photons photons in n_modes modes, enumerated in
// ascending lexicographic order of the occupation vectors (mode 1 is the
// most significant position, so index 0 is (0, ..., 0, n_photons)).
class FockBasis {
 public:
  FockBasis(int n_modes, int n_photons)
      : n_modes_(n_modes), n_photons_(n_photons) {
    if (n_modes < 1) {
      throw std::invalid_argument("FockBasis: need at least one mode");
    }
    if (n_photons < 0) {
      throw std::invalid_argument("FockBasis: photon number must be >= 0");
    }
    const std::uint64_t dim =
        binomial_u64(static_cast<std::uint64_t>(n_modes) + n_photons - 1,
                     static_cast<std::uint64_t>(n_photons));
    const std::uint64_t cap = max_fock_dimension();
    if (dim > cap) {
      throw CapacityError("FockBasis: dimension " + std::to_string(dim) +
                          " for " + std::to_string(n_photons) + " photons in " +
                          std::to_string(n_modes) + " modes exceeds cap " +
                          std::to_string(cap));
    }
    states_.reserve(dim);
    std::vector<int> occ(static_cast<size_t>(n_modes), 0);
    emit(occ, 0, n_photons);
  }

  int modes() const { return n_modes_; }
  int photons() const { return n_photons_; }
  int dim() const { return static_cast<int>(states_.size()); }

  const std::vector<int>& state(int index) const {
    return states_[static_cast<size_t>(index)];
  }

  // Index of an occupation vector; throws if it does not belong to the basis.
  int index_of(const std::vector<int>& occ) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), occ);
    if (it == states_.end() || *it != occ) {
      throw std::invalid_argument("FockBasis: occupation vector not in basis");
    }
    return static_cast<int>(it - states_.begin());
  }

 private:
  void emit(std::vector<int>& occ, int mode, int remaining) {
    if (mode == n_modes_ - 1) {
      occ[static_cast<size_t>(mode)] = remaining;
      states_.push_back(occ);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      occ[static_cast<size_t>(mode)] = k;
      emit(occ, mode + 1, remaining - k);
    }
    occ[static_cast<size_t>(mode)] = 0;
  }

  int n_modes_;
  int n_photons_;
  std::vector<std::vector<int>> states_;
};

// State vector over a FockBasis. The basis is shared by reference; callers
// keep it alive for the lifetime of the vector.
struct FockVector {
  const FockBasis* basis = nullptr;
  std::vector<std::complex<double>> amplitudes;

  static FockVector zero(const FockBasis& basis) {
    FockVector v;
    v.basis = &basis;
    v.amplitudes.assign(static_cast<size_t>(basis.dim()), {0.0, 0.0});
    return v;
  }

  static FockVector basis_state(const FockBasis& basis,
                                const std::vector<int>& occupation) {
    FockVector v = zero(basis);
    v.amplitudes[static_cast<size_t>(basis.index_of(occupation))] = 1.0;
    return v;
  }

  double norm() const {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    return std::sqrt(n2);
  }
};

}  // namespace gmzi
