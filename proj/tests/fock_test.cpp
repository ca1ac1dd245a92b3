#include "gmzi/fock.hpp"

#include <cstdlib>
#include <vector>

#include <gtest/gtest.h>

namespace gmzi {
namespace {

TEST(BinomialU64, ExactValuesAndOverflow) {
  EXPECT_EQ(binomial_u64(0, 0), 1u);
  EXPECT_EQ(binomial_u64(10, 5), 252u);
  EXPECT_EQ(binomial_u64(5, 7), 0u);
  EXPECT_EQ(binomial_u64(64, 32), 1832624140942590534u);
  EXPECT_THROW(binomial_u64(128, 64), std::overflow_error);
}

TEST(FockBasis, DimensionIsStarsAndBars) {
  EXPECT_EQ(FockBasis(4, 2).dim(), 10);
  EXPECT_EQ(FockBasis(8, 3).dim(), 120);
  EXPECT_EQ(FockBasis(2, 0).dim(), 1);
  EXPECT_EQ(FockBasis(1, 7).dim(), 1);
  EXPECT_EQ(FockBasis(16, 1).dim(), 16);
}

TEST(FockBasis, StatesAscendLexicographically) {
  const FockBasis basis(3, 2);
  const std::vector<std::vector<int>> expect = {
      {0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1}, {1, 1, 0}, {2, 0, 0}};
  ASSERT_EQ(basis.dim(), static_cast<int>(expect.size()));
  for (int i = 0; i < basis.dim(); ++i) {
    EXPECT_EQ(basis.state(i), expect[static_cast<size_t>(i)]);
  }
  for (int i = 1; i < basis.dim(); ++i) {
    EXPECT_LT(basis.state(i - 1), basis.state(i));
  }
}

TEST(FockBasis, IndexLookupRoundTrips) {
  const FockBasis basis(5, 3);
  for (int i = 0; i < basis.dim(); ++i) {
    EXPECT_EQ(basis.index_of(basis.state(i)), i);
  }
  EXPECT_THROW(basis.index_of({3, 0, 0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(basis.index_of({1, 1, 1}), std::invalid_argument);
}

TEST(FockBasis, CapacityCapFromEnvironment) {
  ASSERT_EQ(setenv("GMZI_FABRIC_MAX_DIM", "10", 1), 0);
  EXPECT_NO_THROW(FockBasis(4, 2));   // dimension exactly 10
  EXPECT_THROW(FockBasis(4, 3), CapacityError);  // dimension 20
  ASSERT_EQ(setenv("GMZI_FABRIC_MAX_DIM", "junk", 1), 0);
  EXPECT_THROW(FockBasis(2, 1), std::invalid_argument);
  ASSERT_EQ(unsetenv("GMZI_FABRIC_MAX_DIM"), 0);
  EXPECT_NO_THROW(FockBasis(4, 3));
}

TEST(FockVector, BasisStatesAreUnitVectors) {
  const FockBasis basis(4, 2);
  const FockVector v = FockVector::basis_state(basis, {1, 0, 1, 0});
  EXPECT_DOUBLE_EQ(v.norm(), 1.0);
  int nonzero = 0;
  for (const auto& a : v.amplitudes) {
    if (std::abs(a) > 0) ++nonzero;
  }
  EXPECT_EQ(nonzero, 1);
}

}  // namespace
}  // namespace gmzi
