#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gmzi/butterfly.hpp"
#include "gmzi/compiler.hpp"
#include "gmzi/errors.hpp"
#include "gmzi/fock.hpp"
#include "gmzi/gmzi_spec.hpp"
#include "gmzi/permutation.hpp"
#include "gmzi/phase_config.hpp"
#include "gmzi/wigner.hpp"

namespace gmzi {

// Amplitudes below this magnitude count as zero and amplitudes within this
// distance of unit magnitude count as +-1 when classifying switch outputs.
inline constexpr double kAmplitudeTolerance = 1e-7;

// One pairing level of the passive mesh: every pair is a 50/50 coupler and
// all pairs within a level act on disjoint ports, so they commute.
struct MmiLayer {
  int level = 0;
  std::vector<std::pair<int, int>> pairs;
};

// Pairing levels of the square mesh wrapping the device, level 1 first
// (the level adjacent to the phase layer).
inline std::vector<MmiLayer> build_mmi(const GmziSpec& spec) {
  const int n = spec.sim_size();
  std::vector<MmiLayer> layers;
  if (n == 1) return layers;
  layers.reserve(static_cast<size_t>(spec.levels()));
  for (int level = 1; level <= spec.levels(); ++level) {
    layers.push_back(MmiLayer{level, butterfly_layer_pairs(n, level)});
  }
  return layers;
}

// Two-mode coupler on modes k and l (1-based, distinct). Photon-number
// sectors of the pair transform independently under the (n+1)-dimensional
// rotation block; everything outside the two modes is untouched.
inline FockVector apply_beamsplitter(const FockVector& in, int k, int l,
                                     double theta) {
  if (in.basis == nullptr) throw std::invalid_argument("apply_beamsplitter: empty state");
  const FockBasis& basis = *in.basis;
  if (k < 1 || l < 1 || k > basis.modes() || l > basis.modes() || k == l) {
    throw std::invalid_argument("apply_beamsplitter: bad mode pair (" +
                                std::to_string(k) + "," + std::to_string(l) + ")");
  }
  FockVector out = FockVector::zero(basis);
  std::map<int, WignerBlock> blocks;
  std::vector<char> done(static_cast<size_t>(basis.dim()), 0);
  std::vector<int> sibling_index;
  for (int q = 0; q < basis.dim(); ++q) {
    if (done[q]) continue;
    const std::vector<int>& occ = basis.state(q);
    const int n_pair = occ[static_cast<size_t>(k - 1)] + occ[static_cast<size_t>(l - 1)];
    if (n_pair == 0) {
      out.amplitudes[static_cast<size_t>(q)] = in.amplitudes[static_cast<size_t>(q)];
      done[q] = 1;
      continue;
    }
    // Collect the sector: index gamma counts photons in mode l, so
    // sibling_index[gamma] is the basis slot of |n-gamma, gamma> on (k, l).
    sibling_index.assign(static_cast<size_t>(n_pair) + 1, 0);
    std::vector<int> sibling = occ;
    for (int gamma = 0; gamma <= n_pair; ++gamma) {
      sibling[static_cast<size_t>(k - 1)] = n_pair - gamma;
      sibling[static_cast<size_t>(l - 1)] = gamma;
      sibling_index[static_cast<size_t>(gamma)] = basis.index_of(sibling);
    }
    auto it = blocks.find(n_pair);
    if (it == blocks.end()) {
      // n photons in the pair form the spin-(n/2) sector, i.e. two_j = n.
      it = blocks.emplace(n_pair, beam_splitter_matrix(n_pair, theta)).first;
    }
    const WignerBlock& block = it->second;
    for (int r = 0; r <= n_pair; ++r) {
      std::complex<double> acc = 0.0;
      for (int c = 0; c <= n_pair; ++c) {
        acc += block.at(r, c) *
               in.amplitudes[static_cast<size_t>(sibling_index[static_cast<size_t>(c)])];
      }
      out.amplitudes[static_cast<size_t>(sibling_index[static_cast<size_t>(r)])] = acc;
    }
    for (int idx : sibling_index) done[static_cast<size_t>(idx)] = 1;
  }
  return out;
}

// Programmable phase layer: basis state |n_1 ... n_N> picks up
// exp(i sum_i n_i phi_i). With phases restricted to {0, pi} this is the real
// sign (-1)^{sum over pi-ports of n_i}.
inline FockVector apply_phase_layer(const FockVector& in, const PhaseConfig& phi) {
  if (in.basis == nullptr) throw std::invalid_argument("apply_phase_layer: empty state");
  const FockBasis& basis = *in.basis;
  if (phi.size() != basis.modes()) {
    throw std::invalid_argument("apply_phase_layer: phase count " +
                                std::to_string(phi.size()) + " != mode count " +
                                std::to_string(basis.modes()));
  }
  FockVector out = FockVector::zero(basis);
  for (int q = 0; q < basis.dim(); ++q) {
    const std::vector<int>& occ = basis.state(q);
    int parity = 0;
    for (int m = 1; m <= basis.modes(); ++m) {
      parity += occ[static_cast<size_t>(m - 1)] * phi.bit(m);
    }
    const double sign = (parity % 2 == 0) ? 1.0 : -1.0;
    out.amplitudes[static_cast<size_t>(q)] = sign * in.amplitudes[static_cast<size_t>(q)];
  }
  return out;
}

namespace detail {

inline FockVector apply_layer(const FockVector& in, const MmiLayer& layer,
                              double theta) {
  FockVector state = in;
  for (const auto& [k, l] : layer.pairs) {
    state = apply_beamsplitter(state, k, l, theta);
  }
  return state;
}

inline void check_sim_inputs(const GmziSpec& spec, const PhaseConfig& phi,
                             const FockVector& input) {
  if (input.basis == nullptr) {
    throw std::invalid_argument("simulate_gmzi: empty state");
  }
  if (phi.size() != spec.sim_size()) {
    throw std::invalid_argument("simulate_gmzi: phase configuration has " +
                                std::to_string(phi.size()) + " ports, device simulates at " +
                                std::to_string(spec.sim_size()));
  }
  if (input.basis->modes() != spec.sim_size()) {
    throw std::invalid_argument("simulate_gmzi: input state has " +
                                std::to_string(input.basis->modes()) +
                                " modes, device simulates at " +
                                std::to_string(spec.sim_size()));
  }
}

}  // namespace detail

// Exact state evolution through the device with the passive mesh applied in
// the given level order: `order` lists the levels of the input-side mesh in
// application sequence. The output-side mesh is the adjoint, so it applies
// the reversed sequence with the opposite rotation angle. Complete levels
// commute, so every order realizes the same device; exposing the order makes
// that an observable property rather than an assumption.
inline FockVector simulate_gmzi_with_layer_order(const GmziSpec& spec,
                                                 const PhaseConfig& phi,
                                                 const FockVector& input,
                                                 const std::vector<int>& order) {
  detail::check_sim_inputs(spec, phi, input);
  const auto layers = build_mmi(spec);
  if (order.size() != layers.size()) {
    throw std::invalid_argument("simulate_gmzi: layer order must name every level once");
  }
  std::vector<char> seen(layers.size() + 1, 0);
  for (int level : order) {
    if (level < 1 || level > static_cast<int>(layers.size()) || seen[static_cast<size_t>(level)]) {
      throw std::invalid_argument("simulate_gmzi: layer order must name every level once");
    }
    seen[static_cast<size_t>(level)] = 1;
  }

  FockVector state = input;
  for (int level : order) {
    state = detail::apply_layer(state, layers[static_cast<size_t>(level - 1)], M_PI / 2);
  }
  state = apply_phase_layer(state, phi);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    state = detail::apply_layer(state, layers[static_cast<size_t>(*it - 1)], -M_PI / 2);
  }
  return state;
}

// Exact state evolution through the device: input-side mesh (outermost level
// first, level 1 last), phase layer, output-side adjoint mesh.
inline FockVector simulate_gmzi(const GmziSpec& spec, const PhaseConfig& phi,
                                const FockVector& input) {
  detail::check_sim_inputs(spec, phi, input);
  std::vector<int> order(static_cast<size_t>(spec.levels()));
  std::iota(order.rbegin(), order.rend(), 1);  // levels, lambda .. 1
  return simulate_gmzi_with_layer_order(spec, phi, input, order);
}

// Verdict when a phase configuration does not drive a clean permutation.
struct NotASwitch {
  int offending_port = 0;      // first input port exhibiting the failure
  double max_off_target = 0.0; // largest amplitude outside the dominant state
};

using ExtractionResult = std::variant<SignedPermutation, NotASwitch>;

// Probes the device with one photon per input port and classifies the
// response. A switching configuration sends each probe to a single output
// port with a common sign, yielding the signed permutation; anything else
// (superposition output, non-unit amplitude, or port-dependent sign) is
// reported as NotASwitch. Probe order has no effect on the verdict.
inline ExtractionResult extract_signed_permutation(const GmziSpec& spec,
                                                   const PhaseConfig& phi) {
  const int n = spec.sim_size();
  const FockBasis basis(n, 1);
  std::vector<int> image(static_cast<size_t>(n), 0);
  std::vector<char> hit(static_cast<size_t>(n) + 1, 0);
  int common_sign = -1;
  for (int port = 1; port <= n; ++port) {
    std::vector<int> occ(static_cast<size_t>(n), 0);
    occ[static_cast<size_t>(port - 1)] = 1;
    const FockVector out =
        simulate_gmzi(spec, phi, FockVector::basis_state(basis, occ));

    int best = 0;
    double best_mag = -1.0;
    for (int q = 0; q < basis.dim(); ++q) {
      const double mag = std::abs(out.amplitudes[static_cast<size_t>(q)]);
      if (mag > best_mag) {
        best_mag = mag;
        best = q;
      }
    }
    double off_target = 0.0;
    for (int q = 0; q < basis.dim(); ++q) {
      if (q == best) continue;
      off_target = std::max(off_target,
                            std::abs(out.amplitudes[static_cast<size_t>(q)]));
    }
    if (off_target >= kAmplitudeTolerance) {
      return NotASwitch{port, off_target};
    }
    const std::complex<double> amp = out.amplitudes[static_cast<size_t>(best)];
    if (std::abs(std::abs(amp) - 1.0) >= kAmplitudeTolerance ||
        std::abs(amp.imag()) >= kAmplitudeTolerance) {
      return NotASwitch{port, off_target};
    }
    const int sign = amp.real() > 0 ? 0 : 1;
    if (common_sign == -1) {
      common_sign = sign;
    } else if (common_sign != sign) {
      return NotASwitch{port, off_target};
    }
    // Locate the single occupied mode of the dominant state.
    const std::vector<int>& target_occ = basis.state(best);
    int target_mode = 0;
    for (int m = 1; m <= n; ++m) {
      if (target_occ[static_cast<size_t>(m - 1)] == 1) target_mode = m;
    }
    if (hit[static_cast<size_t>(target_mode)]) {
      return NotASwitch{port, off_target};
    }
    hit[static_cast<size_t>(target_mode)] = 1;
    image[static_cast<size_t>(port - 1)] = target_mode;
  }
  return SignedPermutation{Permutation(std::move(image)), common_sign};
}

// Global sign of a switching configuration on the photon-number sector
// n_total, computed by the port-local update sweep: start from
// s_i = (-1)^{n_total * phi_i / pi}, then at every pairing level replace
// (s_k, s_l) by (s_l, s_l) for each coupled pair. All entries agree after the
// final level; the survivor equals (-1)^{n_total * phi(N) / pi}.
// trace_rows, when given, receives the initial row plus one row per level.
inline int pivot_sign(const GmziSpec& spec, const PhaseConfig& phi, int n_total,
                      std::vector<std::vector<int>>* trace_rows = nullptr) {
  if (n_total < 0) throw std::invalid_argument("pivot_sign: photon total must be >= 0");
  const int n = spec.sim_size();
  if (phi.size() != n) {
    throw std::invalid_argument("pivot_sign: phase configuration size mismatch");
  }
  const TypeConsistency tc = is_type_consistent(phi);
  if (!tc.consistent) {
    throw InvalidPhaseConfig("pivot_sign: " + phi.to_string() +
                                 " is not a switching configuration",
                             tc.failure_level);
  }
  std::vector<int> s(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    s[static_cast<size_t>(i - 1)] = ((n_total * phi.bit(i)) % 2 == 0) ? 1 : -1;
  }
  if (trace_rows) {
    trace_rows->clear();
    trace_rows->push_back(s);
  }
  for (int level = 1; level <= phi.levels(); ++level) {
    for (const auto& [k, l] : butterfly_layer_pairs(n, level)) {
      s[static_cast<size_t>(k - 1)] = s[static_cast<size_t>(l - 1)];
    }
    if (trace_rows) trace_rows->push_back(s);
  }
  for (int v : s) {
    if (v != s[0]) {
      throw Error("pivot_sign: sweep failed to converge to a uniform sign");
    }
  }
  return s[0];
}

// Monomial action of the partially conjugated phase layer on one
// photon-number sector: conjugating the phase layer by the innermost `depth`
// pairing levels maps every basis state to a single signed basis state. Entry
// q of the result is (target index, sign) for basis state q. depth = 0 is the
// bare phase layer (diagonal); depth = levels() is the full device.
inline std::vector<std::pair<int, int>> conjugation_trace(
    const GmziSpec& spec, const PhaseConfig& phi, int n_total, int depth) {
  const int n = spec.sim_size();
  if (phi.size() != n) {
    throw std::invalid_argument("conjugation_trace: phase configuration size mismatch");
  }
  if (depth < 0 || depth > spec.levels()) {
    throw std::invalid_argument("conjugation_trace: depth out of range");
  }
  const FockBasis basis(n, n_total);
  const auto layers = build_mmi(spec);
  std::vector<std::pair<int, int>> action;
  action.reserve(static_cast<size_t>(basis.dim()));
  for (int q = 0; q < basis.dim(); ++q) {
    FockVector v = FockVector::basis_state(basis, basis.state(q));
    for (int level = depth; level >= 1; --level) {
      v = detail::apply_layer(v, layers[static_cast<size_t>(level - 1)], M_PI / 2);
    }
    v = apply_phase_layer(v, phi);
    for (int level = 1; level <= depth; ++level) {
      v = detail::apply_layer(v, layers[static_cast<size_t>(level - 1)], -M_PI / 2);
    }
    int best = 0;
    double best_mag = -1.0;
    for (int t = 0; t < basis.dim(); ++t) {
      const double mag = std::abs(v.amplitudes[static_cast<size_t>(t)]);
      if (mag > best_mag) {
        best_mag = mag;
        best = t;
      }
    }
    double off = 0.0;
    for (int t = 0; t < basis.dim(); ++t) {
      if (t != best) off = std::max(off, std::abs(v.amplitudes[static_cast<size_t>(t)]));
    }
    const std::complex<double> amp = v.amplitudes[static_cast<size_t>(best)];
    if (off >= kAmplitudeTolerance ||
        std::abs(std::abs(amp) - 1.0) >= kAmplitudeTolerance ||
        std::abs(amp.imag()) >= kAmplitudeTolerance) {
      throw Error("conjugation_trace: action is not monomial at depth " +
                  std::to_string(depth) + " for " + phi.to_string());
    }
    action.emplace_back(best, amp.real() > 0 ? 1 : -1);
  }
  return action;
}

}  // namespace gmzi
