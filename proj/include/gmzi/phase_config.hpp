#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gmzi {

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

inline int log2_exact(std::uint64_t v) {
  int l = 0;
  while (v > 1) {
    v >>= 1;
    ++l;
  }
  return l;
}

// Phase settings of the active layer: one phase per port, each 0 or pi.
// bit(i) == 1 means port i carries phase pi. Ports are 1-based in the
// accessors; the string form lists port 1 leftmost, so "1100" means
// (pi, pi, 0, 0).
class PhaseConfig {
 public:
  PhaseConfig() = default;

  explicit PhaseConfig(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (!is_power_of_two(bits_.size())) {
      throw std::invalid_argument(
          "PhaseConfig: port count must be a power of two, got " +
          std::to_string(bits_.size()));
    }
    for (auto b : bits_) {
      if (b > 1) throw std::invalid_argument("PhaseConfig: bits must be 0 or 1");
    }
  }

  static PhaseConfig from_string(std::string_view s) {
    std::vector<std::uint8_t> bits;
    bits.reserve(s.size());
    for (char ch : s) {
      if (ch == '0') {
        bits.push_back(0);
      } else if (ch == '1') {
        bits.push_back(1);
      } else {
        throw std::invalid_argument(
            std::string("PhaseConfig: expected a 0/1 string, found '") + ch +
            "'");
      }
    }
    return PhaseConfig(std::move(bits));
  }

  int size() const { return static_cast<int>(bits_.size()); }

  int levels() const { return log2_exact(bits_.size()); }

  // 1-based port access.
  int bit(int port) const {
    if (port < 1 || port > size()) {
      throw std::out_of_range("PhaseConfig: port " + std::to_string(port) +
                              " out of range 1.." + std::to_string(size()));
    }
    return bits_[static_cast<size_t>(port - 1)];
  }

  // Phase of the last port divided by pi; this is the global sign exponent of
  // a switching configuration.
  int last_bit() const { return bits_.back(); }

  // Big-endian integer value of the bit string (port 1 = most significant),
  // used as the deterministic ordering key.
  std::uint64_t as_integer() const {
    std::uint64_t v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const PhaseConfig& a, const PhaseConfig& b) {
    return a.bits_ == b.bits_;
  }

  friend bool operator<(const PhaseConfig& a, const PhaseConfig& b) {
    if (a.bits_.size() != b.bits_.size()) return a.bits_.size() < b.bits_.size();
    return a.bits_ < b.bits_;  // lexicographic == big-endian numeric order
  }

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace gmzi
