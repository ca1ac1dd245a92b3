#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmzi/butterfly.hpp"
#include "gmzi/errors.hpp"
#include "gmzi/permutation.hpp"
#include "gmzi/phase_config.hpp"

namespace gmzi {

struct TypeConsistency {
  bool consistent = false;
  // Smallest pairing level whose check fails; 0 when consistent.
  int failure_level = 0;
};

// A phase configuration drives a clean port permutation exactly when every
// pairing level sees a single coupler type. At level l the ports k and
// k + n/2^l (for k = 1..n/2^l, inside the leading block) must either all
// carry equal phases (identity type) or all carry opposite phases (swap
// type). Deeper levels only constrain the leading block because the rest of
// the string is a copy or a complement of it once the shallower levels pass.
inline TypeConsistency is_type_consistent(const PhaseConfig& phi) {
  const int n = phi.size();
  const int levels = phi.levels();
  for (int level = 1; level <= levels; ++level) {
    const int offset = n >> level;
    bool all_equal = true;
    bool all_opposite = true;
    for (int k = 1; k <= offset; ++k) {
      if (phi.bit(k) == phi.bit(k + offset)) {
        all_opposite = false;
      } else {
        all_equal = false;
      }
    }
    if (!all_equal && !all_opposite) {
      return {false, level};
    }
  }
  return {true, 0};
}

// All type-consistent phase configurations on n ports, in ascending
// big-endian order. There are exactly 2n of them.
inline std::vector<PhaseConfig> enumerate_valid(int n) {
  if (n < 1 || !is_power_of_two(static_cast<std::uint64_t>(n))) {
    throw std::invalid_argument("enumerate_valid: n must be a power of two");
  }
  std::vector<std::vector<std::uint8_t>> configs = {{0}, {1}};
  for (int size = 2; size <= n; size *= 2) {
    std::vector<std::vector<std::uint8_t>> grown;
    grown.reserve(configs.size() * 2);
    for (const auto& a : configs) {
      std::vector<std::uint8_t> same = a;
      same.insert(same.end(), a.begin(), a.end());
      std::vector<std::uint8_t> flipped = a;
      for (auto b : a) flipped.push_back(static_cast<std::uint8_t>(1 - b));
      grown.push_back(std::move(same));
      grown.push_back(std::move(flipped));
    }
    configs = std::move(grown);
  }
  std::vector<PhaseConfig> out;
  out.reserve(configs.size());
  for (auto& bits : configs) out.emplace_back(std::move(bits));
  std::sort(out.begin(), out.end());
  return out;
}

// Transposition products contributed by the swap-type levels of a valid
// configuration, in ascending level order. Identity-type levels contribute
// nothing. Throws InvalidPhaseConfig when the configuration is not
// type-consistent.
inline std::vector<TranspositionProduct> phi_to_layer_transpositions(
    const PhaseConfig& phi) {
  const TypeConsistency tc = is_type_consistent(phi);
  if (!tc.consistent) {
    throw InvalidPhaseConfig(
        "phase configuration " + phi.to_string() +
            " is not a switching configuration (level " +
            std::to_string(tc.failure_level) + " mixes coupler types)",
        tc.failure_level);
  }
  const int n = phi.size();
  std::vector<TranspositionProduct> products;
  for (int level = 1; level <= phi.levels(); ++level) {
    const int offset = n >> level;
    if (phi.bit(1) == phi.bit(1 + offset)) continue;  // identity type
    TranspositionProduct product;
    product.level = level;
    for (const auto& [a, b] : butterfly_layer_pairs(n, level)) {
      product.factors.emplace_back(a, b);
    }
    std::sort(product.factors.begin(), product.factors.end());
    products.push_back(std::move(product));
  }
  return products;
}

namespace detail {

inline Permutation product_as_permutation(const TranspositionProduct& product,
                                          int n) {
  return Permutation::from_transpositions(n, product.factors);
}

// Merge two disjoint-transposition involutions that pair distinct partners
// everywhere, using the rewrite (a b)(c d)(a c)(b d) = (a d)(b c). For every
// port a with left partner b, right partner c, and d = right(b), the rewrite
// requires left(c) = d and emits (a, d) and (b, c).
inline Permutation merge_involutions(const Permutation& left,
                                     const Permutation& right) {
  const int n = left.size();
  std::vector<char> done(static_cast<size_t>(n) + 1, 0);
  std::vector<Transposition> merged;
  for (int a = 1; a <= n; ++a) {
    if (done[a]) continue;
    const int b = left.apply(a);
    const int c = right.apply(a);
    const int d = right.apply(b);
    if (b == a || c == a || d == b) {
      throw Error("transposition reduction: level product leaves a port fixed");
    }
    if (c == b) {
      throw Error("transposition reduction: degenerate rewrite, products share a pair");
    }
    if (left.apply(c) != d) {
      throw Error("transposition reduction: rewrite precondition failed, (" +
                  std::to_string(c) + "," + std::to_string(d) +
                  ") is not a factor of the left product");
    }
    if (a != d) merged.emplace_back(a, d);
    if (b != c) merged.emplace_back(b, c);
    done[a] = done[b] = done[c] = done[d] = 1;
  }
  return Permutation::from_transpositions(n, merged);
}

}  // namespace detail

// Collapse the per-level transposition products into a single permutation.
// Products are applied left to right (the first listed acts first). The
// result is computed twice, once by direct composition and once by repeated
// application of the four-factor rewrite (a b)(c d)(a c)(b d) = (a d)(b c),
// and the two answers are required to agree. The outcome is always the
// identity or a product of n/2 disjoint transpositions.
inline Permutation reduce_transpositions(
    const std::vector<TranspositionProduct>& products, int n) {
  Permutation direct = Permutation::identity(n);
  for (const auto& product : products) {
    direct = direct.then(detail::product_as_permutation(product, n));
  }

  if (!products.empty()) {
    Permutation rewritten = detail::product_as_permutation(products.front(), n);
    for (size_t i = 1; i < products.size(); ++i) {
      rewritten = detail::merge_involutions(
          rewritten, detail::product_as_permutation(products[i], n));
    }
    if (!(rewritten == direct)) {
      throw Error("transposition reduction: rewrite path disagrees with direct composition");
    }
  }

  if (!direct.is_involution()) {
    throw Error("transposition reduction: result is not an involution");
  }
  if (!direct.is_identity()) {
    for (int i = 1; i <= n; ++i) {
      if (direct.apply(i) == i) {
        throw Error("transposition reduction: result mixes fixed and moved ports");
      }
    }
  }
  return direct;
}

// Signed permutation realized by a valid phase configuration: the reduced
// layer transpositions together with the global sign (-1)^{phi(n)/pi}.
inline SignedPermutation compile(const PhaseConfig& phi) {
  const auto products = phi_to_layer_transpositions(phi);
  Permutation perm = reduce_transpositions(products, phi.size());
  return SignedPermutation{std::move(perm), phi.last_bit()};
}

// Routing demands as (input port, output port) pairs, 1-based.
struct RouteRequest {
  std::vector<std::pair<int, int>> demands;
};

namespace detail {

inline void validate_route_request(int n, const RouteRequest& request) {
  std::vector<char> in_used(static_cast<size_t>(n) + 1, 0);
  std::vector<char> out_used(static_cast<size_t>(n) + 1, 0);
  for (const auto& [in, out] : request.demands) {
    if (in < 1 || in > n || out < 1 || out > n) {
      throw std::invalid_argument("route request references port outside 1.." +
                                  std::to_string(n));
    }
    if (in_used[in]) {
      throw std::invalid_argument("route request repeats input port " +
                                  std::to_string(in));
    }
    if (out_used[out]) {
      throw std::invalid_argument("route request repeats output port " +
                                  std::to_string(out));
    }
    in_used[in] = 1;
    out_used[out] = 1;
  }
}

}  // namespace detail

// Every valid configuration whose permutation satisfies all demands, in
// ascending big-endian order, optionally filtered by global sign exponent.
// Decided by exhaustive scan over the 2n valid configurations.
inline std::vector<PhaseConfig> solve_route(
    int n, const RouteRequest& request,
    std::optional<int> sign_preference = std::nullopt) {
  detail::validate_route_request(n, request);
  std::vector<PhaseConfig> matches;
  for (const PhaseConfig& phi : enumerate_valid(n)) {
    const SignedPermutation sp = compile(phi);
    if (sign_preference && sp.sign_exponent != *sign_preference) continue;
    bool ok = true;
    for (const auto& [in, out] : request.demands) {
      if (sp.perm.apply(in) != out) {
        ok = false;
        break;
      }
    }
    if (ok) matches.push_back(phi);
  }
  return matches;
}

// XOR-mask law audit for one port count: every valid configuration must
// realize sigma(i) = ((i-1) XOR m) + 1 for a single mask m, and the
// (mask, sign) pairs across all 2n valid configurations must be exactly the
// n masks times both signs with no repeats.
struct XorMaskReport {
  int n = 0;
  bool holds = false;
  int config_count = 0;
  int distinct_masks = 0;
  std::vector<std::string> failures;  // configs violating the law, if any
};

// Mask m with sigma(i) = ((i-1) XOR m) + 1, if sigma has that form.
inline std::optional<std::uint64_t> xor_mask_of(const Permutation& perm) {
  if (perm.size() == 0) return std::nullopt;
  const std::uint64_t m =
      static_cast<std::uint64_t>(perm.apply(1) - 1) ^ 0ull;
  for (int i = 1; i <= perm.size(); ++i) {
    const std::uint64_t expect = (static_cast<std::uint64_t>(i - 1) ^ m) + 1;
    if (static_cast<std::uint64_t>(perm.apply(i)) != expect) return std::nullopt;
  }
  return m;
}

namespace detail {

struct XorTables {
  XorMaskReport report;
  // by_mask_sign[m][s] = the unique valid configuration with mask m and sign
  // exponent s, present only when the report holds.
  std::map<std::uint64_t, std::array<std::optional<PhaseConfig>, 2>> by_mask_sign;
};

inline const XorTables& xor_tables(int n) {
  static std::mutex mu;
  static std::map<int, XorTables> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  XorTables tables;
  tables.report.n = n;
  bool holds = true;
  std::map<std::pair<std::uint64_t, int>, int> pair_counts;
  for (const PhaseConfig& phi : enumerate_valid(n)) {
    ++tables.report.config_count;
    const SignedPermutation sp = compile(phi);
    const auto mask = xor_mask_of(sp.perm);
    if (!mask) {
      holds = false;
      tables.report.failures.push_back(phi.to_string());
      continue;
    }
    ++pair_counts[{*mask, sp.sign_exponent}];
    auto& slot = tables.by_mask_sign[*mask][sp.sign_exponent];
    if (slot) {
      holds = false;
      tables.report.failures.push_back(phi.to_string());
    } else {
      slot = phi;
    }
  }
  tables.report.distinct_masks = static_cast<int>(tables.by_mask_sign.size());
  if (tables.report.distinct_masks != n ||
      tables.report.config_count != 2 * n ||
      pair_counts.size() != static_cast<size_t>(2 * n)) {
    holds = false;
  }
  tables.report.holds = holds;
  if (!holds) tables.by_mask_sign.clear();
  return cache.emplace(n, std::move(tables)).first->second;
}

}  // namespace detail

inline XorMaskReport verify_xor_mask(int n) { return detail::xor_tables(n).report; }

// Mask-based route solver. Requires verify_xor_mask(n).holds and throws
// otherwise; use solve_route when in doubt. Produces exactly the same answer
// as solve_route, in amortized constant time per request once the per-n
// tables exist.
inline std::vector<PhaseConfig> solve_route_xor_fast(
    int n, const RouteRequest& request,
    std::optional<int> sign_preference = std::nullopt) {
  detail::validate_route_request(n, request);
  const detail::XorTables& tables = detail::xor_tables(n);
  if (!tables.report.holds) {
    throw Error("solve_route_xor_fast: XOR-mask law not verified for n = " +
                std::to_string(n));
  }
  std::optional<std::uint64_t> mask;
  for (const auto& [in, out] : request.demands) {
    const std::uint64_t m = static_cast<std::uint64_t>(in - 1) ^
                            static_cast<std::uint64_t>(out - 1);
    if (!mask) {
      mask = m;
    } else if (*mask != m) {
      return {};  // demands are inconsistent with any single mask
    }
  }
  std::vector<PhaseConfig> matches;
  if (!mask) {
    // Empty request: every valid configuration qualifies.
    for (const PhaseConfig& phi : enumerate_valid(n)) {
      if (sign_preference && compile(phi).sign_exponent != *sign_preference) continue;
      matches.push_back(phi);
    }
    return matches;
  }
  auto it = tables.by_mask_sign.find(*mask);
  if (it == tables.by_mask_sign.end()) return {};
  for (int s = 0; s <= 1; ++s) {
    if (sign_preference && *sign_preference != s) continue;
    if (it->second[s]) matches.push_back(*it->second[s]);
  }
  std::sort(matches.begin(), matches.end());
  return matches;
}

}  // namespace gmzi
