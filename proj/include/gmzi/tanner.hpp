#pragma once

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmzi {

// One parity check: which data qubits it touches and whether it measures in
// the X or the Z basis.
struct StabilizerCheck {
  char basis = 'X';  // 'X' or 'Z'
  std::vector<int> support;  // 1-based data-qubit ids, strictly increasing

  int weight() const { return static_cast<int>(support.size()); }
};

// Bipartite description of a stabilizer code: data qubits on one side,
// parity checks on the other, edges given by the check supports.
class TannerGraph {
 public:
  TannerGraph(int n_data, std::vector<StabilizerCheck> checks)
      : n_data_(n_data), checks_(std::move(checks)) {
    if (n_data_ < 1) {
      throw std::invalid_argument("TannerGraph: need at least one data qubit");
    }
    for (auto& c : checks_) {
      if (c.basis != 'X' && c.basis != 'Z') {
        throw std::invalid_argument("TannerGraph: check basis must be X or Z");
      }
      if (c.support.empty()) {
        throw std::invalid_argument("TannerGraph: empty check support");
      }
      std::sort(c.support.begin(), c.support.end());
      for (size_t i = 0; i < c.support.size(); ++i) {
        if (c.support[i] < 1 || c.support[i] > n_data_) {
          throw std::invalid_argument("TannerGraph: data qubit " +
                                      std::to_string(c.support[i]) +
                                      " out of range 1.." +
                                      std::to_string(n_data_));
        }
        if (i > 0 && c.support[i] == c.support[i - 1]) {
          throw std::invalid_argument("TannerGraph: duplicate data qubit in support");
        }
      }
    }
  }

  int n_data() const { return n_data_; }
  const std::vector<StabilizerCheck>& checks() const { return checks_; }

  int max_weight() const {
    int w = 0;
    for (const auto& c : checks_) w = std::max(w, c.weight());
    return w;
  }

  // How many checks touch a given data qubit.
  int degree(int data_qubit) const {
    if (data_qubit < 1 || data_qubit > n_data_) {
      throw std::invalid_argument("TannerGraph: data qubit out of range");
    }
    int d = 0;
    for (const auto& c : checks_) {
      if (std::binary_search(c.support.begin(), c.support.end(), data_qubit)) {
        ++d;
      }
    }
    return d;
  }

  // Checks of one basis whose supports are pairwise disjoint can be measured
  // in the same round.
  static bool disjoint(const StabilizerCheck& a, const StabilizerCheck& b) {
    std::vector<int> shared;
    std::set_intersection(a.support.begin(), a.support.end(),
                          b.support.begin(), b.support.end(),
                          std::back_inserter(shared));
    return shared.empty();
  }

 private:
  int n_data_;
  std::vector<StabilizerCheck> checks_;
};

// Distance-3 surface code on nine data qubits laid out row-major on a 3x3
// grid, with four weight-2 boundary checks and four weight-4 bulk checks.
inline TannerGraph surface_code_913() {
  std::vector<StabilizerCheck> checks = {
      {'X', {1, 2}},
      {'X', {2, 3, 5, 6}},
      {'X', {4, 5, 7, 8}},
      {'X', {8, 9}},
      {'Z', {1, 2, 4, 5}},
      {'Z', {3, 6}},
      {'Z', {5, 6, 8, 9}},
      {'Z', {4, 7}},
  };
  return TannerGraph(9, std::move(checks));
}

}  // namespace gmzi
