#include <gtest/gtest.h>

#include "penrose/radial_grid.hpp"

using namespace penrose;

TEST(RadialGrid, UniformSpacingAndEndpoints) {
  const auto g = RadialGrid::uniform(0.5, 200, 64);
  EXPECT_EQ(g.intervals(), 64u);
  EXPECT_DOUBLE_EQ(g.r(0), 0.5);
  EXPECT_DOUBLE_EQ(g.r_max(), 200);
  EXPECT_NEAR(g.offset(1), 199.5 / 64, 1e-14);
  EXPECT_EQ(g.refinement(), Refinement::Uniform);
}

TEST(RadialGrid, GeometricClustersAtTheOrigin) {
  const auto g = RadialGrid::geometric(0.5, 200, 256, 1e-12);
  EXPECT_DOUBLE_EQ(g.offset(1), 1e-12);
  EXPECT_DOUBLE_EQ(g.r_max(), 200);
  const double q1 = g.offset(2) / g.offset(1), q2 = g.offset(100) / g.offset(99);
  EXPECT_NEAR(q1, q2, 1e-10 * q1);
  EXPECT_EQ(g.nearest(100.0), g.nearest(100.0 + 1e-9));
  EXPECT_LT(std::abs(g.r(g.nearest(50)) - 50), 5.0);
}

TEST(RadialGrid, ValidationRejectsBadGrids) {
  EXPECT_THROW(RadialGrid::uniform(1, 200, 8), Error);     // too few intervals
  EXPECT_THROW(RadialGrid::uniform(1, 5, 64), Error);      // r_max / r_0 < 10
  EXPECT_THROW(RadialGrid(1.0, {0, 1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}, Refinement::Uniform),
               Error);                                     // repeated node
  EXPECT_THROW(RadialGrid::geometric(1, 200, 64, 500), Error);
  try {
    RadialGrid::uniform(1, 5, 64);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}
