#include "gmzi/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gmzi/compiler.hpp"

namespace gmzi {
namespace {

constexpr double kHalfSqrt2 = 0.70710678118654752440;

PhaseConfig phi(const std::string& s) { return PhaseConfig::from_string(s); }

std::complex<double> amp_of(const FockVector& v, const std::vector<int>& occ) {
  return v.amplitudes[static_cast<size_t>(v.basis->index_of(occ))];
}

// Expected output of a switching configuration on one basis state: photons at
// mode i move to mode sigma(i), with the uniform sign (-1)^{n_tot * s}.
void expect_routed(const FockVector& out, const std::vector<int>& in_occ,
                   const SignedPermutation& sp, int n_tot) {
  std::vector<int> target(in_occ.size(), 0);
  for (size_t i = 0; i < in_occ.size(); ++i) {
    target[static_cast<size_t>(sp.perm.apply(static_cast<int>(i) + 1) - 1)] =
        in_occ[i];
  }
  const double sign = ((n_tot * sp.sign_exponent) % 2 == 0) ? 1.0 : -1.0;
  for (int q = 0; q < out.basis->dim(); ++q) {
    const std::complex<double> a = out.amplitudes[static_cast<size_t>(q)];
    if (out.basis->state(q) == target) {
      EXPECT_NEAR(a.real(), sign, 1e-9);
      EXPECT_NEAR(a.imag(), 0.0, 1e-9);
    } else {
      EXPECT_NEAR(std::abs(a), 0.0, 1e-9);
    }
  }
}

TEST(BuildMmi, LevelsAscendFromPhaseLayer) {
  const auto layers = build_mmi(GmziSpec(8, 8));
  ASSERT_EQ(layers.size(), 3u);
  EXPECT_EQ(layers[0].level, 1);
  EXPECT_EQ(layers[0].pairs,
            (std::vector<std::pair<int, int>>{{1, 5}, {2, 6}, {3, 7}, {4, 8}}));
  EXPECT_EQ(layers[2].pairs,
            (std::vector<std::pair<int, int>>{{1, 2}, {3, 4}, {5, 6}, {7, 8}}));
}

TEST(BuildMmi, RectangularDevicePadsToSquareEnvelope) {
  const GmziSpec spec(4, 12);
  EXPECT_EQ(spec.sim_size(), 16);
  EXPECT_EQ(spec.levels(), 4);
  EXPECT_TRUE(spec.output_is_padding(13));
  EXPECT_FALSE(spec.output_is_padding(12));
  EXPECT_EQ(build_mmi(spec).size(), 4u);

  const GmziSpec one_to_many(1, 16);
  EXPECT_EQ(one_to_many.sim_size(), 16);
  EXPECT_EQ(one_to_many.label(), "1->16");
}

TEST(ApplyBeamsplitter, VacuumIsUntouched) {
  const FockBasis basis(2, 0);
  const FockVector v = FockVector::basis_state(basis, {0, 0});
  const FockVector out = apply_beamsplitter(v, 1, 2, M_PI / 2);
  EXPECT_NEAR(std::abs(amp_of(out, {0, 0}) - 1.0), 0.0, 1e-12);
}

TEST(ApplyBeamsplitter, SinglePhotonSplitsEvenly) {
  const FockBasis basis(2, 1);
  const FockVector out = apply_beamsplitter(
      FockVector::basis_state(basis, {1, 0}), 1, 2, M_PI / 2);
  EXPECT_NEAR(amp_of(out, {1, 0}).real(), kHalfSqrt2, 1e-12);
  EXPECT_NEAR(amp_of(out, {0, 1}).real(), kHalfSqrt2, 1e-12);
}

TEST(ApplyBeamsplitter, TwoPhotonInterferenceCancelsCoincidence) {
  const FockBasis basis(2, 2);
  const FockVector out = apply_beamsplitter(
      FockVector::basis_state(basis, {1, 1}), 1, 2, M_PI / 2);
  EXPECT_NEAR(std::abs(amp_of(out, {1, 1})), 0.0, 1e-12);
  EXPECT_NEAR(amp_of(out, {2, 0}).real(), -kHalfSqrt2, 1e-12);
  EXPECT_NEAR(amp_of(out, {0, 2}).real(), kHalfSqrt2, 1e-12);
}

TEST(ApplyBeamsplitter, UntouchedModesPassThrough) {
  const FockBasis basis(4, 2);
  const FockVector out = apply_beamsplitter(
      FockVector::basis_state(basis, {1, 0, 0, 1}), 2, 3, 0.9);
  // Modes 2 and 3 hold no photons; the state is inert regardless of theta.
  EXPECT_NEAR(std::abs(amp_of(out, {1, 0, 0, 1}) - 1.0), 0.0, 1e-12);
}

TEST(ApplyPhaseLayer, SignsFollowOccupationParity) {
  const FockBasis basis(4, 2);
  const PhaseConfig p = phi("0110");
  const FockVector out =
      apply_phase_layer(FockVector::basis_state(basis, {0, 1, 1, 0}), p);
  EXPECT_NEAR(amp_of(out, {0, 1, 1, 0}).real(), 1.0, 1e-12);  // parity 2
  const FockVector out2 =
      apply_phase_layer(FockVector::basis_state(basis, {0, 2, 0, 0}), p);
  EXPECT_NEAR(amp_of(out2, {0, 2, 0, 0}).real(), 1.0, 1e-12);  // parity 2
  const FockVector out3 =
      apply_phase_layer(FockVector::basis_state(basis, {1, 1, 0, 0}), p);
  EXPECT_NEAR(amp_of(out3, {1, 1, 0, 0}).real(), -1.0, 1e-12);  // parity 1
}

TEST(ApplyPhaseLayer, EightPortDiagonalCheckedModeByMode) {
  const FockBasis basis(8, 1);
  const PhaseConfig p = phi("10010110");
  const std::vector<double> expected = {-1, 1, 1, -1, 1, -1, -1, 1};
  for (int m = 1; m <= 8; ++m) {
    std::vector<int> occ(8, 0);
    occ[static_cast<size_t>(m - 1)] = 1;
    const FockVector out =
        apply_phase_layer(FockVector::basis_state(basis, occ), p);
    EXPECT_NEAR(amp_of(out, occ).real(), expected[static_cast<size_t>(m - 1)],
                1e-12)
        << "mode " << m;
  }
}

TEST(SimulateGmzi, TwoPortSwapWithGlobalMinus) {
  const GmziSpec spec(2, 2);
  const FockBasis basis(2, 1);
  const FockVector out =
      simulate_gmzi(spec, phi("01"), FockVector::basis_state(basis, {1, 0}));
  EXPECT_NEAR(amp_of(out, {0, 1}).real(), -1.0, 1e-9);
  EXPECT_NEAR(std::abs(amp_of(out, {1, 0})), 0.0, 1e-9);

  const FockVector out2 =
      simulate_gmzi(spec, phi("01"), FockVector::basis_state(basis, {0, 1}));
  EXPECT_NEAR(amp_of(out2, {1, 0}).real(), -1.0, 1e-9);
}

TEST(SimulateGmzi, FourPortSwitchRowsFromKnownTable) {
  const GmziSpec spec(4, 4);
  const FockBasis basis(4, 1);

  // 1100 routes 1 -> 3 with positive sign.
  FockVector out =
      simulate_gmzi(spec, phi("1100"), FockVector::basis_state(basis, {1, 0, 0, 0}));
  EXPECT_NEAR(amp_of(out, {0, 0, 1, 0}).real(), 1.0, 1e-9);

  // 1001 routes 1 -> 4 with negative sign.
  out = simulate_gmzi(spec, phi("1001"), FockVector::basis_state(basis, {1, 0, 0, 0}));
  EXPECT_NEAR(amp_of(out, {0, 0, 0, 1}).real(), -1.0, 1e-9);

  // 0110 on a two-photon pivot state: both photons cross to port 4,
  // positive sign.
  const FockBasis two(4, 2);
  out = simulate_gmzi(spec, phi("0110"), FockVector::basis_state(two, {2, 0, 0, 0}));
  EXPECT_NEAR(amp_of(out, {0, 0, 0, 2}).real(), 1.0, 1e-9);
}

TEST(SimulateGmzi, PreservesNormForArbitraryStatesAndPhases) {
  const GmziSpec spec(4, 4);
  std::mt19937 rng(20260819);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const FockBasis basis(4, 3);
  for (const std::string& config : {"0110", "1000", "1110", "0001"}) {
    FockVector v = FockVector::zero(basis);
    for (auto& a : v.amplitudes) a = {uni(rng), uni(rng)};
    const double norm = v.norm();
    for (auto& a : v.amplitudes) a /= norm;
    const FockVector out = simulate_gmzi(spec, phi(config), v);
    EXPECT_NEAR(out.norm(), 1.0, 1e-9) << config;
  }
}

TEST(SimulateGmzi, AgreesWithCompileOnAllValidConfigsUpToThreePhotons) {
  for (int n : {2, 4}) {
    const GmziSpec spec(n, n);
    for (const PhaseConfig& p : enumerate_valid(n)) {
      const SignedPermutation sp = compile(p);
      for (int n_tot = 0; n_tot <= 3; ++n_tot) {
        const FockBasis basis(n, n_tot);
        for (int q = 0; q < basis.dim(); ++q) {
          const FockVector out = simulate_gmzi(
              spec, p, FockVector::basis_state(basis, basis.state(q)));
          expect_routed(out, basis.state(q), sp, n_tot);
        }
      }
    }
  }
}

TEST(ExtractSignedPermutation, RecoversTableEntries) {
  const GmziSpec spec(4, 4);
  const auto id = extract_signed_permutation(spec, phi("0000"));
  ASSERT_TRUE(std::holds_alternative<SignedPermutation>(id));
  EXPECT_TRUE(std::get<SignedPermutation>(id).perm.is_identity());
  EXPECT_EQ(std::get<SignedPermutation>(id).sign_exponent, 0);

  const auto neg = extract_signed_permutation(spec, phi("1001"));
  ASSERT_TRUE(std::holds_alternative<SignedPermutation>(neg));
  EXPECT_EQ(std::get<SignedPermutation>(neg).perm.cycle_string(), "(14)(23)");
  EXPECT_EQ(std::get<SignedPermutation>(neg).sign_exponent, 1);

  const GmziSpec spec8(8, 8);
  const auto eight = extract_signed_permutation(spec8, phi("01101001"));
  ASSERT_TRUE(std::holds_alternative<SignedPermutation>(eight));
  EXPECT_EQ(std::get<SignedPermutation>(eight).perm.cycle_string(),
            "(18)(27)(36)(45)");
}

TEST(ExtractSignedPermutation, FlagsNonSwitchingConfig) {
  const GmziSpec spec(4, 4);
  const auto result = extract_signed_permutation(spec, phi("1000"));
  ASSERT_TRUE(std::holds_alternative<NotASwitch>(result));
  const NotASwitch& verdict = std::get<NotASwitch>(result);
  EXPECT_EQ(verdict.offending_port, 1);
  EXPECT_GT(verdict.max_off_target, 0.4);
  EXPECT_LT(verdict.max_off_target, 1.0);
}

TEST(ExtractSignedPermutation, MatchesCompilerOnEveryValidConfig) {
  for (int n : {2, 4, 8}) {
    const GmziSpec spec(n, n);
    for (const PhaseConfig& p : enumerate_valid(n)) {
      const auto result = extract_signed_permutation(spec, p);
      ASSERT_TRUE(std::holds_alternative<SignedPermutation>(result))
          << p.to_string();
      EXPECT_EQ(std::get<SignedPermutation>(result), compile(p)) << p.to_string();
    }
  }
}

TEST(SimulateGmzi, LayerOrderDoesNotChangeTheDevice) {
  const GmziSpec spec(4, 4);
  std::vector<int> order = {1, 2};
  for (const PhaseConfig& p : enumerate_valid(4)) {
    const auto expected = extract_signed_permutation(spec, p);
    ASSERT_TRUE(std::holds_alternative<SignedPermutation>(expected));
    const FockBasis basis(4, 2);
    const FockVector probe = FockVector::basis_state(basis, {1, 1, 0, 0});
    const FockVector reference = simulate_gmzi(spec, p, probe);
    do {
      const FockVector alt = simulate_gmzi_with_layer_order(spec, p, probe, order);
      for (size_t q = 0; q < reference.amplitudes.size(); ++q) {
        EXPECT_NEAR(std::abs(alt.amplitudes[q] - reference.amplitudes[q]), 0.0,
                    1e-9);
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }
}

TEST(SimulateGmzi, RejectsMalformedLayerOrders) {
  const GmziSpec spec(4, 4);
  const FockBasis basis(4, 1);
  const FockVector probe = FockVector::basis_state(basis, {1, 0, 0, 0});
  EXPECT_THROW(simulate_gmzi_with_layer_order(spec, phi("0000"), probe, {1}),
               std::invalid_argument);
  EXPECT_THROW(simulate_gmzi_with_layer_order(spec, phi("0000"), probe, {1, 1}),
               std::invalid_argument);
  EXPECT_THROW(simulate_gmzi_with_layer_order(spec, phi("0000"), probe, {0, 2}),
               std::invalid_argument);
}

TEST(PivotSign, TraceReproducesThreePhotonTable) {
  const GmziSpec spec(4, 4);
  std::vector<std::vector<int>> rows;
  const int sign = pivot_sign(spec, phi("0101"), 3, &rows);
  EXPECT_EQ(sign, -1);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<int>{1, -1, 1, -1}));
  EXPECT_EQ(rows[1], (std::vector<int>{1, -1, 1, -1}));
  EXPECT_EQ(rows[2], (std::vector<int>{-1, -1, -1, -1}));
}

TEST(PivotSign, EqualsLastPhaseParityAndSimulation) {
  for (int n : {2, 4}) {
    const GmziSpec spec(n, n);
    for (const PhaseConfig& p : enumerate_valid(n)) {
      for (int n_tot : {0, 1, 2, 3}) {
        const int predicted = pivot_sign(spec, p, n_tot);
        const int expected =
            ((n_tot * p.last_bit()) % 2 == 0) ? 1 : -1;
        EXPECT_EQ(predicted, expected);
        // Cross-check against the simulated sign on a pivot state.
        const FockBasis basis(n, n_tot);
        std::vector<int> occ(static_cast<size_t>(n), 0);
        occ[0] = n_tot;
        const FockVector out =
            simulate_gmzi(spec, p, FockVector::basis_state(basis, occ));
        double max_mag = 0.0;
        double signed_amp = 0.0;
        for (const auto& a : out.amplitudes) {
          if (std::abs(a) > max_mag) {
            max_mag = std::abs(a);
            signed_amp = a.real();
          }
        }
        EXPECT_NEAR(signed_amp, static_cast<double>(predicted), 1e-9)
            << p.to_string() << " n_tot=" << n_tot;
      }
    }
  }
}

TEST(PivotSign, RejectsNonSwitchingConfig) {
  const GmziSpec spec(4, 4);
  EXPECT_THROW(pivot_sign(spec, phi("1000"), 2), InvalidPhaseConfig);
}

TEST(ConjugationTrace, ReproducesTwoPhotonSignTable) {
  const GmziSpec spec(4, 4);
  const PhaseConfig p = phi("0110");
  const FockBasis basis(4, 2);
  const auto sign_for = [&](const std::vector<std::pair<int, int>>& action,
                            const std::vector<int>& occ) {
    return action[static_cast<size_t>(basis.index_of(occ))].second;
  };

  const auto depth0 = conjugation_trace(spec, p, 2, 0);
  const auto depth1 = conjugation_trace(spec, p, 2, 1);
  const auto depth2 = conjugation_trace(spec, p, 2, 2);

  const std::vector<std::vector<int>> columns = {
      {0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 0},
      {1, 1, 0, 0}, {2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}};
  const std::vector<int> row0 = {-1, -1, 1, 1, -1, -1, 1, 1, 1, 1};
  const std::vector<int> row1 = {-1, 1, -1, -1, 1, -1, 1, 1, 1, 1};
  const std::vector<int> row2 = {1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  for (size_t i = 0; i < columns.size(); ++i) {
    EXPECT_EQ(sign_for(depth0, columns[i]), row0[i]) << "column " << i;
    EXPECT_EQ(sign_for(depth1, columns[i]), row1[i]) << "column " << i;
    EXPECT_EQ(sign_for(depth2, columns[i]), row2[i]) << "column " << i;
  }

  // The bare phase layer is diagonal and the full conjugation realizes the
  // compiled permutation on occupations.
  for (int q = 0; q < basis.dim(); ++q) {
    EXPECT_EQ(depth0[static_cast<size_t>(q)].first, q);
  }
  const SignedPermutation sp = compile(p);
  for (int q = 0; q < basis.dim(); ++q) {
    std::vector<int> target(4, 0);
    for (int m = 1; m <= 4; ++m) {
      target[static_cast<size_t>(sp.perm.apply(m) - 1)] =
          basis.state(q)[static_cast<size_t>(m - 1)];
    }
    EXPECT_EQ(depth2[static_cast<size_t>(q)].first, basis.index_of(target));
  }
}

TEST(SimulateGmzi, ValidatesShapes) {
  const GmziSpec spec(4, 4);
  const FockBasis basis(4, 1);
  const FockVector probe = FockVector::basis_state(basis, {1, 0, 0, 0});
  EXPECT_THROW(simulate_gmzi(spec, phi("00"), probe), std::invalid_argument);
  const FockBasis wrong(8, 1);
  EXPECT_THROW(
      simulate_gmzi(spec, phi("0000"), FockVector::basis_state(wrong, {1, 0, 0, 0, 0, 0, 0, 0})),
      std::invalid_argument);
}

}  // namespace
}  // namespace gmzi
