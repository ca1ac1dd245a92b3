#include "gmzi/tanner.hpp"

#include <gtest/gtest.h>

namespace gmzi {
namespace {

TEST(TannerGraph, NineQubitSurfacePresetShape) {
  const auto graph = surface_code_913();
  EXPECT_EQ(graph.n_data(), 9);
  ASSERT_EQ(graph.checks().size(), 8u);
  int x_checks = 0;
  int z_checks = 0;
  for (const auto& check : graph.checks()) {
    (check.basis == 'X' ? x_checks : z_checks) += 1;
    EXPECT_TRUE(check.weight() == 2 || check.weight() == 4);
  }
  EXPECT_EQ(x_checks, 4);
  EXPECT_EQ(z_checks, 4);
  EXPECT_EQ(graph.max_weight(), 4);
}

TEST(TannerGraph, EveryDataQubitTouchesBothBases) {
  const auto graph = surface_code_913();
  for (int d = 1; d <= 9; ++d) {
    int x_deg = 0;
    int z_deg = 0;
    for (const auto& check : graph.checks()) {
      if (std::binary_search(check.support.begin(), check.support.end(), d)) {
        (check.basis == 'X' ? x_deg : z_deg) += 1;
      }
    }
    EXPECT_GE(x_deg, 1) << "data qubit " << d;
    EXPECT_GE(z_deg, 1) << "data qubit " << d;
    EXPECT_EQ(graph.degree(d), x_deg + z_deg);
  }
}

TEST(TannerGraph, CenterQubitHasDegreeFour) {
  const auto graph = surface_code_913();
  EXPECT_EQ(graph.degree(5), 4);
  EXPECT_EQ(graph.degree(1), 2);
  EXPECT_EQ(graph.degree(9), 2);
}

TEST(TannerGraph, DisjointnessMatchesSupportIntersection) {
  const auto graph = surface_code_913();
  const auto& checks = graph.checks();
  EXPECT_TRUE(TannerGraph::disjoint(checks[0], checks[3]));   // {1,2} vs {8,9}
  EXPECT_FALSE(TannerGraph::disjoint(checks[0], checks[1]));  // share qubit 2
  EXPECT_TRUE(TannerGraph::disjoint(checks[5], checks[7]));   // {3,6} vs {4,7}
}

TEST(TannerGraph, RejectsMalformedChecks) {
  EXPECT_THROW(TannerGraph(4, {{'Y', {1}}}), std::invalid_argument);
  EXPECT_THROW(TannerGraph(4, {{'X', {}}}), std::invalid_argument);
  EXPECT_THROW(TannerGraph(4, {{'X', {1, 5}}}), std::invalid_argument);
  EXPECT_THROW(TannerGraph(4, {{'X', {2, 2}}}), std::invalid_argument);
  EXPECT_THROW(TannerGraph(0, {}), std::invalid_argument);
}

}  // namespace
}  // namespace gmzi
