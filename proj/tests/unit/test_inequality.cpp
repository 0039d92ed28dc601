#include <gtest/gtest.h>

#include "penrose/inequality.hpp"
#include "penrose/scenarios.hpp"

using namespace penrose;

namespace {

InequalityReport report_for(const SphericalInitialData& d, std::vector<double> heights) {
  const auto h = find_outermost_horizon(d, HorizonKind::Future);
  const auto sol = solve_jang_blowup(d, h);
  return penrose_like_bound(d, sol, adm_energy(d).value, std::move(heights));
}

}  // namespace

TEST(PenroseLikeBound, SchwarzschildHasPositiveMarginAtEveryHeight) {
  const auto r = report_for(schwarzschild_isotropic(1.0), {5, 10, 20, 40});
  EXPECT_GT(r.margin, 0.0);
  ASSERT_EQ(r.rows.size(), 4u);
  for (const auto& row : r.rows) {
    EXPECT_GE(row.E_ghat_Q, -1e-3);
    EXPECT_LT(row.flux_consistency, 1e-3);
    EXPECT_LT(row.bound_rhs_C0, r.E_g);
    if (row.bound_rhs) EXPECT_LT(*row.bound_rhs, r.E_g);
  }
  EXPECT_NEAR(r.E_gbar, r.E_g, 1e-3);
}

TEST(PenroseLikeBound, BoundaryAreaTendsToHorizonArea) {
  const auto r = report_for(schwarzschild_isotropic(1.0), {5, 10, 20, 40});
  for (std::size_t k = 1; k < r.rows.size(); ++k)
    EXPECT_LT(r.rows[k].boundary_area, r.rows[k - 1].boundary_area);
  EXPECT_NEAR(r.rows.back().boundary_area, 16 * pi, 1e-6);
}

TEST(PenroseLikeBound, BumpScenarioKeepsTheMargin) {
  BumpParams bp;
  const auto d = dec_bump(1.0, bp);
  const auto r = report_for(d, {5, 10, 20, 40});
  EXPECT_GT(r.margin, 0.0);
  EXPECT_NEAR(r.E_g, 1.0 + bp.energy, 1e-6);
  for (const auto& row : r.rows) EXPECT_GE(row.E_ghat_Q, -1e-3);
}

TEST(PenroseLikeBound, ScheduleNeedsThreeHeights) {
  const auto d = schwarzschild_isotropic(1.0);
  const auto sol = solve_jang_blowup(d, find_outermost_horizon(d, HorizonKind::Future));
  EXPECT_THROW(penrose_like_bound(d, sol, 1.0, {10.0, 20.0}), Error);
}

TEST(PenroseLikeBound, UnderstatedEnergyIsABoundViolation) {
  const auto d = schwarzschild_isotropic(1.0);
  const auto h = find_outermost_horizon(d, HorizonKind::Future);
  const auto sol = solve_jang_blowup(d, h);
  try {
    penrose_like_bound(d, sol, 0.1, {5, 10, 20, 40});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundViolation);
  }
}

TEST(PenroseLikeBound, CylinderDecayIsReported) {
  const auto r = report_for(schwarzschild_isotropic(1.0), {5, 10, 20, 40});
  ASSERT_TRUE(r.cylinder_decay_rate.has_value());
  EXPECT_EQ(r.u_largest.size(), r.u_largest_r.size());
}
