#include <gtest/gtest.h>

#include <cmath>

#include "oracles/geometry3d.hpp"
#include "penrose/jang.hpp"
#include "penrose/scenarios.hpp"
#include "profiles.hpp"

using namespace penrose;

namespace {

const JangSolution& schwarzschild_jang() {
  static const JangSolution sol = [] {
    const auto d = schwarzschild_isotropic(1.0);
    return solve_jang_blowup(d, find_outermost_horizon(d, HorizonKind::Future));
  }();
  return sol;
}

}  // namespace

TEST(JangResidual, MatchesCartesianJangOperator) {
  const auto g = oracle::spherical_metric(testprof::a, testprof::rho);
  const auto k = oracle::spherical_k(testprof::a, testprof::rho, testprof::kr, testprof::kt);
  auto f = [](double r) { return 0.5 * std::sin(r) + 0.8 * r; };
  const oracle::ScalarField F = [&](const oracle::Vec3& x) { return f(oracle::norm(x)); };
  for (double r : {2.2, 3.0, 3.9}) {
    const double c = r / std::sqrt(3.0);
    const double fd = oracle::jang_operator(g, k, F, {c, c, c}, 1e-3);
    const double radial = jang_residual(testprof::wavy(r), 0.5 * std::cos(r) + 0.8, -0.5 * std::sin(r));
    EXPECT_NEAR(radial, fd, 2e-5) << r;
  }
}

TEST(JangSolver, SchwarzschildSolutionSatisfiesTheEquation) {
  const auto& sol = schwarzschild_jang();
  EXPECT_LT(jang_equation_residual(sol), 1e-8);
  EXPECT_EQ(sol.sign, 1);
  EXPECT_GT(sol.nodes.front().f, 40.0);
  EXPECT_NEAR(sol.nodes.back().f, 0.0, 1e-14);
}

TEST(JangSolver, SlopeStaysInsideTheUnitIntervalAndMetricDominates) {
  const auto& sol = schwarzschild_jang();
  // |beta| < 1 is carried by the gap; beta itself rounds to -1 near the horizon.
  for (const auto& p : sol.nodes) {
    ASSERT_GT(p.gamma, 0.0);
    ASSERT_LT(p.gamma, 2.0);
    ASSERT_GE(p.b, p.profile.a);
  }
  EXPECT_LT(sol.nodes.front().beta, -0.999);
}

TEST(JangSolver, StartupSweepIsInsensitive) {
  const auto d = schwarzschild_isotropic(1.0);
  const auto sw = startup_sensitivity(d, find_outermost_horizon(d, HorizonKind::Future));
  EXPECT_TRUE(sw.passed);
  EXPECT_LT(sw.max_relative_change, 1e-4);
  EXPECT_EQ(sw.eps.size(), 3u);
}

TEST(JangSolver, HeightDecaysAcrossOuterDecade) {
  const auto& sol = schwarzschild_jang();
  EXPECT_GT(sol.decay_inner, 0.0);
  EXPECT_LT(sol.decay_outer, sol.decay_inner);
  EXPECT_TRUE(std::isfinite(sol.decay_outer));
}

TEST(JangSolver, CurvatureIdentityHoldsOnTheNodes) {
  const auto c = jang_scalar_curvature(schwarzschild_jang());
  EXPECT_LT(c.max_abs_residual, 1e-3);
  EXPECT_EQ(c.direct.size(), c.identity.size());
}

TEST(JangSolver, CurvatureIdentityResidualConvergesUnderRefinement) {
  std::vector<double> err;
  for (std::size_t n : {1024u, 2048u, 4096u}) {
    GridSpec spec;
    spec.intervals = n;
    const auto d = schwarzschild_isotropic(1.0, spec);
    const auto sol = solve_jang_blowup(d, find_outermost_horizon(d, HorizonKind::Future));
    err.push_back(jang_scalar_curvature(sol).max_abs_residual);
  }
  EXPECT_LT(err[1], err[0]);
  EXPECT_LT(err[2], err[1]);
}

TEST(JangSolver, BumpScenarioSolves) {
  const auto d = dec_bump(1.0);
  const auto sol = solve_jang_blowup(d, find_outermost_horizon(d, HorizonKind::Future));
  EXPECT_LT(jang_equation_residual(sol), 1e-8);
  for (const auto& p : sol.nodes) ASSERT_GT(p.gamma, 0.0);
}

TEST(JangSolver, RejectsNonOutermostHorizon) {
  const auto d = schwarzschild_isotropic(1.0);
  auto h = find_outermost_horizon(d, HorizonKind::Future);
  h.outermost = false;
  EXPECT_THROW(solve_jang_blowup(d, h), Error);
}

TEST(LevelSets, HeightOffsetInvertsTheHeight) {
  const auto& sol = schwarzschild_jang();
  for (double T : {5.0, 10.0, 20.0, 40.0}) {
    const double x = height_offset(sol, T);
    EXPECT_NEAR(sol.at(x).f, T, 1e-9 * T);
  }
  try {
    height_offset(sol, 1e6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapOutOfRange);
  }
}

TEST(LevelSets, DefectTendsToTheCylinderLimit) {
  // On the cylinder Hbar - q(Nbar) -> sqrt(theta'(r_h) / a(r_h)), which is 1/(2m)
  // for Schwarzschild.
  const auto& sol = schwarzschild_jang();
  const auto d40 = defect_at_height(sol, 40.0);
  EXPECT_NEAR(d40.defect, 0.5, 1e-6);
  EXPECT_NEAR(d40.area, 16 * pi, 1e-6);
}

TEST(LevelSets, EstimateCNeedsThreeHeights) {
  EXPECT_THROW(estimate_C(schwarzschild_jang(), {5.0, 10.0}), Error);
  const double C = estimate_C(schwarzschild_jang(), {5.0, 10.0, 20.0});
  EXPECT_GT(C, 0.0);
}
