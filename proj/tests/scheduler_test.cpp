#include "gmzi/scheduler.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace gmzi {
namespace {

std::string phi_of(const Schedule& schedule, int gmzi_id) {
  return schedule.slots.front().on(gmzi_id).phi.to_string();
}

Schedule schedule_and_verify(const SwitchScheme& scheme,
                             const PairingRequest& request) {
  const Schedule schedule = schedule_pairing(scheme, request);
  verify_pairing_schedule(scheme, request, schedule);
  return schedule;
}

// All ways to pair up the given modules completely, for exhaustive sweeps.
void perfect_matchings(std::vector<int> pool, std::vector<ModulePair>& current,
                       std::vector<std::vector<ModulePair>>& out) {
  if (pool.empty()) {
    out.push_back(current);
    return;
  }
  const int a = pool.front();
  for (size_t i = 1; i < pool.size(); ++i) {
    const int b = pool[i];
    std::vector<int> rest;
    for (size_t j = 1; j < pool.size(); ++j) {
      if (j != i) rest.push_back(pool[j]);
    }
    current.push_back({a, b});
    perfect_matchings(rest, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<ModulePair>> perfect_matchings(std::vector<int> pool) {
  std::vector<std::vector<ModulePair>> out;
  std::vector<ModulePair> current;
  perfect_matchings(std::move(pool), current, out);
  return out;
}

TEST(PairingSchedule, EqualizedFiveModuleTable) {
  const SwitchScheme scheme = build_gmzi_equalized_scheme(5, 4);
  const std::string zeros = "0000000000000000";

  struct Row {
    int first;
    int second;
    int host;
    std::string phi_first;
    std::string phi_second;
  };
  const std::vector<Row> rows = {
      {1, 2, 1, "0000000000000000", "1111000011110000"},
      {1, 3, 1, "1111000011110000", "1111000011110000"},
      {1, 4, 1, "1111111100000000", "1111000011110000"},
      {1, 5, 1, "0000111111110000", "1111000011110000"},
      {2, 3, 2, "1111000011110000", "0000000000000000"},
      {2, 4, 2, "1111111100000000", "0000000000000000"},
      {2, 5, 2, "0000111111110000", "0000000000000000"},
      {3, 4, 4, "1111111100000000", "0000111111110000"},
      {3, 5, 3, "1111111100000000", "0000111111110000"},
      {4, 5, 5, "0000111111110000", "0000111111110000"},
  };

  for (const Row& row : rows) {
    const PairingRequest request{{{row.first, row.second, row.host}}};
    const Schedule schedule = schedule_and_verify(scheme, request);
    ASSERT_EQ(schedule.slots.size(), 1u);
    EXPECT_EQ(phi_of(schedule, row.first), row.phi_first)
        << "pair " << row.first << "," << row.second;
    EXPECT_EQ(phi_of(schedule, row.second), row.phi_second)
        << "pair " << row.first << "," << row.second;
    for (int other = 1; other <= 5; ++other) {
      if (other == row.first || other == row.second) continue;
      EXPECT_EQ(phi_of(schedule, other), zeros);
    }
    for (const auto& a : schedule.slots.front().assignments) {
      EXPECT_EQ(a.sigma.sign_exponent, 0);
      EXPECT_EQ(a.sigma.sign_exponent, a.phi.last_bit());
    }
  }
}

TEST(PairingSchedule, EqualizedConfigsActAsDocumented) {
  // The four phase words appearing in the five-module table, pinned to their
  // port maps: identity and the 4-, 8-, 12-offset transpositions.
  const auto sigma = [](const std::string& phi) {
    return compile(PhaseConfig::from_string(phi));
  };
  EXPECT_EQ(sigma("0000000000000000").perm.cycle_string(), "()");
  EXPECT_EQ(sigma("1111000011110000").perm.cycle_string(),
            "(1,5)(2,6)(3,7)(4,8)(9,13)(10,14)(11,15)(12,16)");
  EXPECT_EQ(sigma("1111111100000000").perm.cycle_string(),
            "(1,9)(2,10)(3,11)(4,12)(5,13)(6,14)(7,15)(8,16)");
  EXPECT_EQ(sigma("0000111111110000").perm.cycle_string(),
            "(1,13)(2,14)(3,15)(4,16)(5,9)(6,10)(7,11)(8,12)");
  EXPECT_EQ(sigma("0000111111110000").sign_exponent, 0);
}

TEST(PairingSchedule, DefaultHostIsLexicographicFirst) {
  const SwitchScheme scheme = build_gmzi_equalized_scheme(5, 4);

  const Schedule ab = schedule_and_verify(scheme, {{{1, 2}}});
  EXPECT_EQ(phi_of(ab, 1), "0000000000000000");
  EXPECT_EQ(phi_of(ab, 2), "1111000011110000");

  // With C hosting instead of D, the same pair lands on different words.
  const Schedule cd = schedule_and_verify(scheme, {{{3, 4}}});
  EXPECT_EQ(phi_of(cd, 3), "0000111111110000");
  EXPECT_EQ(phi_of(cd, 4), "1111111100000000");
}

TEST(PairingSchedule, EitherModuleCanHost) {
  const SwitchScheme scheme = build_gmzi_equalized_scheme(5, 4);
  for (int a = 1; a <= 5; ++a) {
    for (int b = a + 1; b <= 5; ++b) {
      schedule_and_verify(scheme, {{{a, b, a}}});
      schedule_and_verify(scheme, {{{a, b, b}}});
    }
  }
}

TEST(PairingSchedule, EqualizedTwoPairSlots) {
  const SwitchScheme scheme = build_gmzi_equalized_scheme(5, 4);
  int count = 0;
  for (int a = 1; a <= 5; ++a) {
    for (int b = a + 1; b <= 5; ++b) {
      for (int c = a + 1; c <= 5; ++c) {
        if (c == b) continue;
        for (int d = c + 1; d <= 5; ++d) {
          if (d == b) continue;
          schedule_and_verify(scheme, {{{a, b}, {c, d}}});
          ++count;
        }
      }
    }
  }
  EXPECT_EQ(count, 15);
}

TEST(PairingSchedule, DirectFabricMatchings) {
  const SwitchScheme scheme = build_gmzi_direct_scheme(4, 4);

  const Schedule ab_cd = schedule_and_verify(scheme, {{{1, 2}, {3, 4}}});
  EXPECT_EQ(phi_of(ab_cd, 1), "0000000000000000");
  EXPECT_EQ(phi_of(ab_cd, 2), "0000000000000000");
  EXPECT_EQ(phi_of(ab_cd, 3), "1111111100000000");
  EXPECT_EQ(phi_of(ab_cd, 4), "1111111100000000");

  const auto matchings = perfect_matchings({1, 2, 3, 4});
  ASSERT_EQ(matchings.size(), 3u);
  for (const auto& pairs : matchings) {
    schedule_and_verify(scheme, {pairs});
  }
}

TEST(PairingSchedule, FoldedCrossbarMatchings) {
  const SwitchScheme scheme = build_spanke_scheme(4, 4, true, false);

  const Schedule schedule = schedule_and_verify(scheme, {{{1, 2}, {3, 4}}});
  // Site A1's router holds the first loop's left port, B1's the right.
  EXPECT_EQ(phi_of(schedule, 1), "0000000000000000");
  EXPECT_EQ(phi_of(schedule, 5), "1010101010101010");
  // The first loop's combiners collect from positions 1 and 5.
  EXPECT_EQ(phi_of(schedule, 17), "0000000000000000");
  EXPECT_EQ(phi_of(schedule, 18), "1111000011110000");

  for (const auto& pairs : perfect_matchings({1, 2, 3, 4})) {
    schedule_and_verify(scheme, {pairs});
  }
}

TEST(PairingSchedule, SplitCrossbarMatchings) {
  const SwitchScheme scheme = build_spanke_scheme(4, 4, false, false);
  for (const auto& pairs : perfect_matchings({1, 2, 3, 4})) {
    schedule_and_verify(scheme, {pairs});
  }
}

TEST(PairingSchedule, ProbabilisticCrossbarMeetsAtGadgets) {
  for (const bool monolithic : {true, false}) {
    const SwitchScheme scheme = build_spanke_scheme(4, 4, monolithic, true);
    for (const auto& pairs : perfect_matchings({1, 2, 3, 4})) {
      schedule_and_verify(scheme, {pairs});
    }
  }
}

TEST(PairingSchedule, CrossbarFullOccupancy) {
  // A full pairing claims every loop fiber: m*q sites feed m*q/2 loops and
  // m/2 pairs of q qubits use exactly that many.
  const SwitchScheme two = build_spanke_scheme(2, 2, true, false);
  schedule_and_verify(two, {{{1, 2}}});

  const SwitchScheme six = build_spanke_scheme(6, 1, true, false);
  schedule_and_verify(six, {{{1, 2}, {3, 4}, {5, 6}}});

  const SwitchScheme full = build_spanke_scheme(4, 4, true, false);
  for (const auto& pairs : perfect_matchings({1, 2, 3, 4})) {
    const Schedule schedule = schedule_and_verify(full, {pairs});
    ASSERT_EQ(schedule.slots.size(), 1u);
  }
}

TEST(PairingSchedule, MixedGraphMatchings) {
  const SwitchScheme four = build_gmzi_mixed_graph_scheme(4);
  // The gadget-adjacent matching uses both gadgets in place: every module
  // photon crosses from the module fiber (input 1) to the arm (output 2).
  const Schedule adjacent = schedule_and_verify(four, {{{1, 2}, {3, 4}}});
  for (const auto& a : adjacent.slots.front().assignments) {
    EXPECT_EQ(a.phi.to_string(), "10");
    EXPECT_EQ(a.sigma.perm.cycle_string(), "(12)");
  }
  // The cross matchings force one pair onto a longer detour route.
  schedule_and_verify(four, {{{1, 3}, {2, 4}}});
  schedule_and_verify(four, {{{1, 4}, {2, 3}}});

  const SwitchScheme eight = build_gmzi_mixed_graph_scheme(8);
  const auto matchings = perfect_matchings({1, 2, 3, 4, 5, 6, 7, 8});
  ASSERT_EQ(matchings.size(), 105u);
  for (const auto& pairs : matchings) {
    schedule_and_verify(eight, {pairs});
  }
}

TEST(PairingSchedule, EmptyRequestIdlesEverything) {
  const SwitchScheme scheme = build_gmzi_equalized_scheme(5, 4);
  const Schedule schedule = schedule_pairing(scheme, {});
  ASSERT_EQ(schedule.slots.size(), 1u);
  EXPECT_EQ(schedule.scheme_name, scheme.name);
  EXPECT_EQ(schedule.slots.front().assignments.size(), scheme.gmzis.size());
  for (const auto& a : schedule.slots.front().assignments) {
    EXPECT_EQ(a.phi.to_string(), std::string(16, '0'));
    EXPECT_EQ(a.sigma.perm.cycle_string(), "()");
    EXPECT_EQ(a.sigma.sign_exponent, 0);
  }
}

TEST(PairingSchedule, RejectsIllFormedRequests) {
  const SwitchScheme scheme = build_gmzi_equalized_scheme(5, 4);
  EXPECT_THROW(schedule_pairing(scheme, {{{1, 1}}}), DisjointnessViolation);
  EXPECT_THROW(schedule_pairing(scheme, {{{1, 2}, {2, 3}}}),
               DisjointnessViolation);
  EXPECT_THROW(schedule_pairing(scheme, {{{1, 2, 3}}}), std::invalid_argument);
  EXPECT_THROW(schedule_pairing(scheme, {{{1, 9}}}), std::invalid_argument);

  const SwitchScheme fanout = build_msd_scheme(4, 4);
  EXPECT_THROW(schedule_pairing(fanout, {{{1, 2}}}), std::invalid_argument);

  const Schedule idle = schedule_pairing(scheme, {});
  EXPECT_THROW(idle.slots.front().on(99), std::invalid_argument);
}

TEST(MergeSchedule, FiveModuleTable) {
  const SwitchScheme scheme = build_gmzi_merge_scheme();

  const Schedule x = schedule_merge(scheme, {1, 2}, 'X');
  ASSERT_EQ(x.slots.size(), 1u);
  EXPECT_EQ(phi_of(x, 1), "00000000");
  EXPECT_EQ(phi_of(x, 2), "11001100");
  for (int other = 3; other <= 5; ++other) {
    EXPECT_EQ(phi_of(x, other), "00000000");
  }

  const Schedule z = schedule_merge(scheme, {1, 2}, 'Z');
  EXPECT_EQ(phi_of(z, 1), "11110000");
  EXPECT_EQ(phi_of(z, 2), "11001100");

  // Same pair named in the other order: the host is still module A.
  const Schedule swapped = schedule_merge(scheme, {2, 1}, 'X');
  EXPECT_EQ(phi_of(swapped, 1), "00000000");
  EXPECT_EQ(phi_of(swapped, 2), "11001100");
}

TEST(MergeSchedule, DataPhotonsReachTheHostGadgets) {
  const SwitchScheme scheme = build_gmzi_merge_scheme();
  for (const char basis : {'X', 'Z'}) {
    for (int a = 1; a <= 5; ++a) {
      for (int b = 1; b <= 5; ++b) {
        if (a == b) continue;
        const Schedule schedule = schedule_merge(scheme, {a, b, a}, basis);
        const TimeSlot& slot = schedule.slots.front();
        for (int k = 1; k <= 2; ++k) {
          // The partner's boundary data photon enters its direct fiber and
          // must exit on arm 2 of the host's k-th gadget of the right basis.
          const Endpoint landed = trace_photon(scheme, slot, b, 2 + k);
          ASSERT_EQ(landed.kind, EndpointKind::entangler_arm);
          const EntanglerRecord* gadget = nullptr;
          for (const auto& e : scheme.entanglers) {
            if (e.id == landed.id) gadget = &e;
          }
          ASSERT_NE(gadget, nullptr);
          const std::string expected =
              scheme.module(a).name + (basis == 'X' ? "-x" : "-z") +
              std::to_string(k);
          EXPECT_EQ(gadget->label, expected);
          EXPECT_EQ(landed.port, 2);
        }
      }
    }
  }
}

TEST(MergeSchedule, RejectsBadArguments) {
  const SwitchScheme scheme = build_gmzi_merge_scheme();
  EXPECT_THROW(schedule_merge(scheme, {1, 1}, 'X'), DisjointnessViolation);
  EXPECT_THROW(schedule_merge(scheme, {1, 2}, 'Y'), std::invalid_argument);
  EXPECT_THROW(schedule_merge(scheme, {1, 6}, 'X'), std::invalid_argument);

  const SwitchScheme direct = build_gmzi_direct_scheme(4, 4);
  EXPECT_THROW(schedule_merge(direct, {1, 2}, 'X'), std::invalid_argument);
}

TEST(ReadoutSchedule, SingleWeightFourCheck) {
  const TannerGraph code = surface_code_913();
  const Schedule schedule = schedule_stabilizer_readout(code, {{2}, {}});
  ASSERT_EQ(schedule.slots.size(), 4u);

  // Check 2 is X2 on {2,3,5,6}; its collector is device 11.
  EXPECT_EQ(schedule.slots[0].on(2).phi.to_string(), "1010");
  EXPECT_EQ(schedule.slots[0].on(11).phi.to_string(), "0000");
  EXPECT_EQ(schedule.slots[1].on(3).phi.to_string(), "00");
  EXPECT_EQ(schedule.slots[1].on(11).phi.to_string(), "1010");
  EXPECT_EQ(schedule.slots[2].on(5).phi.to_string(), "0000");
  EXPECT_EQ(schedule.slots[2].on(11).phi.to_string(), "1100");
  EXPECT_EQ(schedule.slots[3].on(6).phi.to_string(), "0000");
  EXPECT_EQ(schedule.slots[3].on(11).phi.to_string(), "0110");

  // Every step lands the visited data qubit's photon on the collector port.
  const SwitchScheme scheme = build_stabilizer_scheme(code);
  const std::vector<int> visits = {2, 3, 5, 6};
  for (int step = 0; step < 4; ++step) {
    const Endpoint landed =
        trace_photon(scheme, schedule.slots[step], visits[step], 1);
    EXPECT_TRUE((landed == Endpoint{EndpointKind::module_port, 11, 1}))
        << "step " << step << " landed at " << to_string(landed);
  }
}

TEST(ReadoutSchedule, ParallelDisjointChecks) {
  const TannerGraph code = surface_code_913();
  const Schedule schedule = schedule_stabilizer_readout(code, {{1, 4}, {}});
  ASSERT_EQ(schedule.slots.size(), 2u);

  const SwitchScheme scheme = build_stabilizer_scheme(code);
  // Step 1 visits qubits 1 and 8; step 2 visits 2 and 9.
  EXPECT_TRUE((trace_photon(scheme, schedule.slots[0], 1, 1) ==
               Endpoint{EndpointKind::module_port, 10, 1}));
  EXPECT_TRUE((trace_photon(scheme, schedule.slots[0], 8, 1) ==
               Endpoint{EndpointKind::module_port, 13, 1}));
  EXPECT_TRUE((trace_photon(scheme, schedule.slots[1], 2, 1) ==
               Endpoint{EndpointKind::module_port, 10, 1}));
  EXPECT_TRUE((trace_photon(scheme, schedule.slots[1], 9, 1) ==
               Endpoint{EndpointKind::module_port, 13, 1}));
}

TEST(ReadoutSchedule, RaggedRoundIdlesTheShortCheck) {
  const TannerGraph code = surface_code_913();
  const Schedule schedule = schedule_stabilizer_readout(code, {{1, 3}, {}});
  ASSERT_EQ(schedule.slots.size(), 4u);
  // X1 has weight 2, so its collector idles in steps 3 and 4.
  EXPECT_EQ(schedule.slots[2].on(10).phi.to_string(), "00");
  EXPECT_EQ(schedule.slots[3].on(10).phi.to_string(), "00");
  EXPECT_NE(schedule.slots[2].on(12).phi.to_string(), "0000");
}

TEST(ReadoutSchedule, VisitOrderOverride) {
  const TannerGraph code = surface_code_913();
  const Schedule schedule =
      schedule_stabilizer_readout(code, {{2}, {{2, {6, 5, 3, 2}}}});
  ASSERT_EQ(schedule.slots.size(), 4u);
  // Qubit 6 now goes first, so the collector points at support slot 4
  // immediately; qubit 2 goes last and is switched toward this check by its
  // own data device.
  EXPECT_EQ(schedule.slots[0].on(11).phi.to_string(), "0110");
  EXPECT_EQ(schedule.slots[3].on(11).phi.to_string(), "0000");
  EXPECT_EQ(schedule.slots[3].on(2).phi.to_string(), "1010");

  EXPECT_THROW(schedule_stabilizer_readout(code, {{2}, {{2, {2, 3, 5}}}}),
               std::invalid_argument);
  EXPECT_THROW(schedule_stabilizer_readout(code, {{2}, {{2, {2, 3, 5, 8}}}}),
               std::invalid_argument);
}

TEST(ReadoutSchedule, RejectsConflictingRounds) {
  const TannerGraph code = surface_code_913();
  EXPECT_THROW(schedule_stabilizer_readout(code, {{1, 5}, {}}),
               DisjointnessViolation);
  EXPECT_THROW(schedule_stabilizer_readout(code, {{2, 2}, {}}),
               DisjointnessViolation);
  EXPECT_THROW(schedule_stabilizer_readout(code, {{9}, {}}),
               std::invalid_argument);
  EXPECT_THROW(schedule_stabilizer_readout(code, {{0}, {}}),
               std::invalid_argument);
}

TEST(ReadoutSchedule, EmptyRoundIsOneIdleSlot) {
  const Schedule schedule =
      schedule_stabilizer_readout(surface_code_913(), {{}, {}});
  ASSERT_EQ(schedule.slots.size(), 1u);
  for (const auto& a : schedule.slots.front().assignments) {
    EXPECT_EQ(a.sigma.perm.cycle_string(), "()");
  }
}

TEST(FanoutSchedule, SingleDestinationIsIdentity) {
  const Schedule schedule =
      schedule_msd_distribution(4, 1, {{1, 1}, {2, 1}, {3, 1}, {4, 1}});
  ASSERT_EQ(schedule.slots.size(), 1u);
  EXPECT_EQ(schedule.scheme_name, "msd-4to1");
  EXPECT_EQ(phi_of(schedule, 1), "0000");
}

TEST(FanoutSchedule, FarBlockUsesTheTwelveOffset) {
  const Schedule schedule =
      schedule_msd_distribution(4, 4, {{1, 4}, {2, 4}, {3, 4}, {4, 4}});
  EXPECT_EQ(phi_of(schedule, 1), "0000111111110000");
  const auto& sigma = schedule.slots.front().on(1).sigma;
  EXPECT_EQ(sigma.perm.apply(1), 13);
  EXPECT_EQ(sigma.sign_exponent, 0);
}

TEST(FanoutSchedule, MixedDestinationsInOneSlotAreUnreachable) {
  EXPECT_THROW(
      schedule_msd_distribution(4, 2, {{1, 1}, {2, 1}, {3, 2}, {4, 2}}),
      UnsatisfiableRoute);
  EXPECT_THROW(
      schedule_msd_distribution(4, 2, {{1, 1}, {2, 2}, {3, 1}, {4, 2}}),
      UnsatisfiableRoute);
}

TEST(FanoutSchedule, RejectsIncompleteAssignments) {
  EXPECT_THROW(schedule_msd_distribution(4, 2, {{1, 1}, {2, 1}, {3, 1}}),
               std::invalid_argument);
  EXPECT_THROW(
      schedule_msd_distribution(4, 2, {{1, 3}, {2, 1}, {3, 1}, {4, 1}}),
      std::invalid_argument);
  EXPECT_THROW(
      schedule_msd_distribution(4, 2, {{0, 1}, {2, 1}, {3, 1}, {5, 1}}),
      std::invalid_argument);
}

}  // namespace
}  // namespace gmzi
