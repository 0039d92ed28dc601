#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "penrose/numerics/extrapolation.hpp"
#include "penrose/numerics/finite_difference.hpp"
#include "penrose/numerics/interpolation.hpp"
#include "penrose/numerics/ode.hpp"
#include "penrose/numerics/quadrature.hpp"
#include "penrose/numerics/roots.hpp"
#include "penrose/numerics/taylor.hpp"
#include "penrose/numerics/tridiagonal.hpp"

using namespace penrose;

TEST(Taylor, ComposesDerivativesOfElementaryFunctions) {
  using T = num::Taylor<3>;
  const auto x = T::variable(0.7);
  const auto y = exp(x) * sqrt(x) / (1.0 + x * x);
  // Reference derivatives from a high-order central difference.
  auto f = [](double t) { return std::exp(t) * std::sqrt(t) / (1 + t * t); };
  const double h = 1e-3;
  const double d1 = (f(0.7 - 2 * h) - 8 * f(0.7 - h) + 8 * f(0.7 + h) - f(0.7 + 2 * h)) / (12 * h);
  const double d2 =
      (-f(0.7 - 2 * h) + 16 * f(0.7 - h) - 30 * f(0.7) + 16 * f(0.7 + h) - f(0.7 + 2 * h)) /
      (12 * h * h);
  EXPECT_NEAR(y.value(), f(0.7), 1e-15);
  EXPECT_NEAR(y.deriv(1), d1, 1e-10);
  EXPECT_NEAR(y.deriv(2), d2, 1e-6);
}

TEST(Taylor, IntegerPowerAtZero) {
  using T = num::Taylor<4>;
  const auto y = ipow(T::variable(0.0), 3);
  EXPECT_DOUBLE_EQ(y.deriv(3), 6.0);
  EXPECT_DOUBLE_EQ(y.deriv(2), 0.0);
  const auto p = num::polyval(std::array<double, 3>{1.0, 2.0, 3.0}, T::variable(2.0));
  EXPECT_DOUBLE_EQ(p.value(), 17.0);
  EXPECT_DOUBLE_EQ(p.deriv(1), 14.0);
}

TEST(FiniteDifference, ExactOnPolynomialsOfStencilDegree) {
  std::vector<double> x{0.0, 0.1, 0.3, 0.35, 0.8, 1.1, 1.7};
  std::vector<double> y;
  for (double t : x) y.push_back(1 + 2 * t - t * t + 0.5 * t * t * t * t);
  const auto d = num::differentiate(x, y, 1, 5);
  const auto d2 = num::differentiate(x, y, 2, 5);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(d[i], 2 - 2 * x[i] + 2 * x[i] * x[i] * x[i], 1e-10);
    EXPECT_NEAR(d2[i], -2 + 6 * x[i] * x[i], 1e-8);
  }
}

TEST(FiniteDifference, RejectsShortInput) {
  std::vector<double> x{0, 1}, y{0, 1};
  EXPECT_THROW(num::differentiate(x, y, 1, 3), Error);
}

TEST(Interpolation, QuinticHermiteReproducesQuintics) {
  auto f = [](double t) { return t * t * t * t * t - 2 * t * t + 3; };
  auto df = [](double t) { return 5 * t * t * t * t - 4 * t; };
  auto d2f = [](double t) { return 20 * t * t * t - 4; };
  std::vector<double> x{0, 0.5, 1.25, 2}, y, dy, d2y;
  for (double t : x) {
    y.push_back(f(t));
    dy.push_back(df(t));
    d2y.push_back(d2f(t));
  }
  num::HermiteInterpolant h(x, y, dy, d2y);
  for (double t : {0.1, 0.77, 1.3, 1.99}) {
    const auto v = h.eval(t);
    EXPECT_NEAR(v[0], f(t), 1e-12);
    EXPECT_NEAR(v[1], df(t), 1e-11);
    EXPECT_NEAR(v[2], d2f(t), 1e-10);
  }
  num::HermiteInterpolant c(x, y, dy);
  EXPECT_NEAR(c(0.5), f(0.5), 1e-14);
}

TEST(Extrapolation, RemovesPolynomialErrorTerms) {
  std::vector<double> t{0.1, 0.05, 0.025, 0.0125}, y;
  for (double s : t) y.push_back(2.0 + 3 * s - 7 * s * s + s * s * s);
  EXPECT_NEAR(num::extrapolate_to_zero(t, y), 2.0, 1e-12);
}

TEST(Extrapolation, FitsOrderAndSkipsRoundingLevel) {
  const std::vector<double> e{1e-2, 2.5e-3, 6.25e-4};
  EXPECT_NEAR(*num::fit_order(e, 1e-14), 2.0, 1e-12);
  const std::vector<double> vals{1.0 + 4e-4, 1.0 + 1e-4, 1.0 + 2.5e-5};
  EXPECT_NEAR(*num::fit_order_from_values(vals, 1e-14), 2.0, 1e-6);
  const std::vector<double> flat{1.0, 1.0, 1.0};
  EXPECT_FALSE(num::fit_order_from_values(flat, 1e-14).has_value());
}

TEST(DormandPrince, IntegratesHarmonicOscillator) {
  num::DormandPrince<2>::Options opt;
  opt.rtol = [](double) { return 1e-11; };
  opt.atol = 1e-14;
  num::DormandPrince<2> dp([](double, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], -y[0]};
  }, opt);
  double step = 0.1;
  const auto y = dp.advance(0.0, 10.0, {0.0, 1.0}, step);
  EXPECT_NEAR(y[0], std::sin(10.0), 1e-9);
  EXPECT_NEAR(y[1], std::cos(10.0), 1e-9);
  EXPECT_THROW(dp.advance(1.0, 0.0, y, step), Error);
}

TEST(Roots, BisectionFindsLastNonpositivePoint) {
  const double r = num::bisect_last_nonpositive([](double t) { return t * t - 2; }, 0.0, 3.0, 1e-14);
  EXPECT_NEAR(r, std::sqrt(2.0), 1e-13);
}

TEST(Tridiagonal, SolvesRandomDiagonallyDominantSystems) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::size_t n = 50;
  num::Tridiagonal m(n);
  std::vector<double> x(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.lower[i] = i ? u(rng) : 0;
    m.upper[i] = i + 1 < n ? u(rng) : 0;
    m.diag[i] = 3 + u(rng);
    x[i] = u(rng);
  }
  for (std::size_t i = 0; i < n; ++i)
    rhs[i] = m.diag[i] * x[i] + (i ? m.lower[i] * x[i - 1] : 0) + (i + 1 < n ? m.upper[i] * x[i + 1] : 0);
  const auto s = num::solve(m, rhs);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s[i], x[i], 1e-13);
  num::Tridiagonal z(3);
  EXPECT_THROW(num::solve(z, {1, 1, 1}), Error);
}

TEST(Quadrature, TrapezoidAndInverseSquareTail) {
  std::vector<double> x, y;
  for (int i = 0; i <= 1000; ++i) {
    x.push_back(i / 1000.0);
    y.push_back(x.back() * x.back());
  }
  EXPECT_NEAR(num::trapezoid(x, y), 1.0 / 3, 1e-6);
  const auto c = num::cumulative_trapezoid(x, y);
  EXPECT_DOUBLE_EQ(c.back(), num::trapezoid(x, y));
  // g = 1/(r + 1/2)^2 has tail 1/(R + 1/2).
  auto g = [](double r) { return 1 / ((r + 0.5) * (r + 0.5)); };
  const std::vector<double> radii{25, 50, 100, 200};
  std::vector<double> gv;
  for (double r : radii) gv.push_back(g(r));
  EXPECT_NEAR(num::inverse_square_tail(radii, gv, 200), 1 / 200.5, 1e-10);
}

TEST(Interpolation, TinyCellsDoNotAmplifyRounding) {
  // rho = 2 + 4 x^2 sampled on cells of width 1e-20: the node values are
  // identical in double precision, yet derivatives must follow the Taylor data.
  std::vector<double> x{0, 1e-20, 2e-20, 1e-3}, y, dy, d2y;
  for (double t : x) {
    y.push_back(2 + 4 * t * t);
    dy.push_back(8 * t);
    d2y.push_back(8);
  }
  num::HermiteInterpolant h(x, y, dy, d2y);
  const auto v = h.eval(1.5e-20);
  EXPECT_NEAR(v[1], 1.2e-19, 1e-30);
  EXPECT_NEAR(v[2], 8.0, 1e-12);
  num::HermiteInterpolant c(x, y, dy);
  EXPECT_NEAR(c.eval(1.5e-20)[1], 1.2e-19, 1e-25);
}
