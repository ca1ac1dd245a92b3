#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmzi {

// Transposition of two ports, stored with first < second. Ports are 1-based.
struct Transposition {
  int first = 0;
  int second = 0;

  Transposition() = default;
  Transposition(int a, int b) : first(std::min(a, b)), second(std::max(a, b)) {
    if (a == b || a < 1 || b < 1) {
      throw std::invalid_argument("Transposition: needs two distinct ports >= 1");
    }
  }

  friend bool operator==(const Transposition& a, const Transposition& b) {
    return a.first == b.first && a.second == b.second;
  }
  friend bool operator<(const Transposition& a, const Transposition& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  }
};

// Product of disjoint transpositions contributed by one pairing level of the
// interferometer. The transpositions commute, so the list order is cosmetic;
// it is kept sorted for determinism.
struct TranspositionProduct {
  int level = 0;  // 1-based, 1 = layer adjacent to the phase layer
  std::vector<Transposition> factors;
};

// Bijection on ports 1..n. image[i-1] = sigma(i).
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<char> seen(image_.size(), 0);
    for (int v : image_) {
      if (v < 1 || v > static_cast<int>(image_.size()) || seen[v - 1]) {
        throw std::invalid_argument("Permutation: image is not a bijection");
      }
      seen[v - 1] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> im(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) im[i] = i + 1;
    return Permutation(std::move(im));
  }

  static Permutation from_transpositions(int n,
                                         const std::vector<Transposition>& ts) {
    Permutation p = identity(n);
    for (const auto& t : ts) {
      if (t.second > n) {
        throw std::invalid_argument("Permutation: transposition port exceeds n");
      }
      std::swap(p.image_[t.first - 1], p.image_[t.second - 1]);
    }
    return p;
  }

  int size() const { return static_cast<int>(image_.size()); }

  int apply(int port) const {
    if (port < 1 || port > size()) {
      throw std::out_of_range("Permutation: port out of range");
    }
    return image_[static_cast<size_t>(port - 1)];
  }

  // Left-to-right composition: (a.then(b))(i) = b(a(i)), i.e. a acts first.
  Permutation then(const Permutation& b) const {
    if (b.size() != size()) {
      throw std::invalid_argument("Permutation: size mismatch in composition");
    }
    std::vector<int> im(image_.size());
    for (size_t i = 0; i < image_.size(); ++i) im[i] = b.image_[image_[i] - 1];
    Permutation out;
    out.image_ = std::move(im);
    return out;
  }

  Permutation inverse() const {
    std::vector<int> im(image_.size());
    for (size_t i = 0; i < image_.size(); ++i) {
      im[static_cast<size_t>(image_[i] - 1)] = static_cast<int>(i) + 1;
    }
    Permutation out;
    out.image_ = std::move(im);
    return out;
  }

  bool is_identity() const {
    for (size_t i = 0; i < image_.size(); ++i) {
      if (image_[i] != static_cast<int>(i) + 1) return false;
    }
    return true;
  }

  bool is_involution() const {
    for (int i = 1; i <= size(); ++i) {
      if (apply(apply(i)) != i) return false;
    }
    return true;
  }

  // Decomposition into disjoint 2-cycles. Throws if any cycle is longer than
  // two; fixed points contribute nothing.
  std::vector<Transposition> as_disjoint_transpositions() const {
    std::vector<Transposition> out;
    for (int i = 1; i <= size(); ++i) {
      const int j = apply(i);
      if (j == i) continue;
      if (apply(j) != i) {
        throw std::invalid_argument(
            "Permutation: not a product of disjoint transpositions");
      }
      if (i < j) out.emplace_back(i, j);
    }
    return out;
  }

  // Cycle notation with cycles sorted by smallest member and each cycle
  // starting at its smallest member. Elements are comma-separated once the
  // port count reaches two digits, matching "(12)(34)" at small sizes and
  // "(1,13)(2,14)" at larger ones. The identity renders as "()".
  std::string cycle_string() const {
    const bool commas = size() >= 10;
    std::string out;
    std::vector<char> seen(image_.size(), 0);
    for (int i = 1; i <= size(); ++i) {
      if (seen[i - 1] || apply(i) == i) continue;
      out.push_back('(');
      int cur = i;
      bool first = true;
      while (!seen[cur - 1]) {
        seen[cur - 1] = 1;
        if (!first && commas) out.push_back(',');
        first = false;
        out += std::to_string(cur);
        cur = apply(cur);
      }
      out.push_back(')');
    }
    if (out.empty()) out = "()";
    return out;
  }

  const std::vector<int>& image() const { return image_; }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.image_ == b.image_;
  }

 private:
  std::vector<int> image_;
};

// A permutation together with a global sign (-1)^sign_exponent applied to
// every routed state.
struct SignedPermutation {
  Permutation perm;
  int sign_exponent = 0;  // 0 or 1

  friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) {
    return a.perm == b.perm && a.sign_exponent == b.sign_exponent;
  }
};

}  // namespace gmzi
