#pragma once

#include <cmath>
#include <string>

#include "penrose/errors.hpp"
#include "penrose/initial_data.hpp"
#include "penrose/numerics/taylor.hpp"
#include "penrose/radial_grid.hpp"

namespace penrose {

struct GridSpec {
  std::size_t intervals = 4096;
  double r_max = 200.0;
  Refinement refinement = Refinement::Geometric;
  /// First node offset relative to r_0 (geometric grids only). Small enough
  /// that the Jang height reaches T = 40 for masses down to 0.5.
  double first_offset = 1e-20;

  RadialGrid build(double r0) const {
    return refinement == Refinement::Uniform
               ? RadialGrid::uniform(r0, r_max, intervals)
               : RadialGrid::geometric(r0, r_max, intervals, first_offset * r0);
  }
};

/// Time-symmetric Schwarzschild slice in isotropic coordinates starting at
/// the minimal sphere r = m/2. All expressions are written in the offset
/// x = r - m/2 so that rho' and rho - 2m keep full relative precision.
inline ProfileSample schwarzschild_sample(double m, double x) {
  const double rh = 0.5 * m;
  const double r = rh + x;
  const double s = r + rh;
  ProfileSample p;
  p.r = r;
  p.a = s * s / (r * r);
  p.da = -2.0 * rh * s / (r * r * r);
  p.d2a = 2.0 * rh * (2.0 * r + 3.0 * rh) / (r * r * r * r);
  p.rho = s * s / r;
  p.drho = x * s / (r * r);
  p.d2rho = 2.0 * rh * rh / (r * r * r);
  return p;
}

inline SphericalInitialData schwarzschild_isotropic(double m, const GridSpec& spec = {}) {
  require(m > 0, ErrorKind::InvalidInput, "mass must be positive");
  return from_profile("schwarzschild_isotropic", spec.build(0.5 * m),
                      [m](double x) { return schwarzschild_sample(m, x); }, m);
}

/// Euclidean space outside the sphere r = r0 with k = 0.
inline SphericalInitialData flat_space(double r0 = 1.0, const GridSpec& spec = {}) {
  return from_profile(
      "flat", spec.build(r0),
      [r0](double x) {
        ProfileSample p;
        p.r = r0 + x;
        p.rho = p.r;
        return p;
      },
      0.0);
}

/// Parameters of the compactly supported matter shell on Schwarzschild.
struct BumpParams {
  double r1 = 1.5;         ///< inner support radius, in units of m
  double r2 = 4.0;         ///< outer support radius, in units of m
  double energy = 0.05;    ///< added ADM energy, in units of m
  double amplitude = 0.05; ///< peak of kt, in units of 1/m
  double nu = 0.5;         ///< |J| = nu * (matter part of mu), 0 <= nu < 1
};

namespace detail {

/// (1 - s^2)^4 on |s| < 1, zero outside; three continuous derivatives.
template <std::size_t N>
num::Taylor<N> bump(const num::Taylor<N>& s) {
  if (std::abs(s.value()) >= 1.0) return num::Taylor<N>::constant(0.0);
  const auto w = 1.0 - s * s;
  return num::ipow(w, 4);
}

/// Monotone step from 0 (s <= -1) to 1 (s >= 1) whose derivative is a
/// multiple of bump(s).
template <std::size_t N>
num::Taylor<N> step(const num::Taylor<N>& s) {
  if (s.value() <= -1.0) return num::Taylor<N>::constant(0.0);
  if (s.value() >= 1.0) return num::Taylor<N>::constant(1.0);
  const std::array<double, 10> p{0.0, 1.0, 0.0, -4.0 / 3.0, 0.0, 6.0 / 5.0, 0.0, -4.0 / 7.0,
                                 0.0, 1.0 / 9.0};
  return 0.5 + (315.0 / 256.0) * num::polyval(p, s);
}

}  // namespace detail

/// Schwarzschild of mass m inside r1; on [r1, r2] a tangential extrinsic
/// curvature bump and a matter shell raise the energy by `energy`; exactly
/// Schwarzschild of mass m + energy beyond r2. The areal radius is kept as
/// the mass-m isotropic one; the radial factor follows from the mass function
///   M = m + dE S(r) - rho^3 kt^2 / 2,  (rho'/a)^2 = 1 - 2M/rho,
/// and kr = kt + rho kt'/rho' + lambda with lambda >= 0 chosen so that
/// |J| = nu * dE S' / (4 pi rho^2 rho'). Then mu - |J| >= (1 - nu) dE S'/(4 pi rho^2 rho') >= 0.
inline ProfileSample dec_bump_sample(double m, const BumpParams& bp, double x) {
  const double rh = 0.5 * m;
  const double r = rh + x;
  const double r1 = bp.r1 * m, r2 = bp.r2 * m;
  if (r <= r1) return schwarzschild_sample(m, x);
  using T3 = num::Taylor<3>;
  using T2 = num::Taylor<2>;
  const T3 R = T3::variable(r);
  const T3 u = 1.0 + (0.5 * m) / R;
  const T3 rho = u * u * R;
  const T3 s = (2.0 * R - (r1 + r2)) / (r2 - r1);
  const T3 kt = (bp.amplitude / m) * detail::bump(s);
  const T3 S = detail::step(s);
  const T3 K = num::pow(rho, 1.5) * kt;
  const T3 M = m + bp.energy * m * S - 0.5 * K * K;
  const T2 rho2 = rho.truncate<2>();
  const T2 drho = rho.derivative();
  const T2 a = drho / num::sqrt(1.0 - 2.0 * M.truncate<2>() / rho2);
  const T2 dS = S.derivative();
  const T2 lambda = bp.nu * bp.energy * m * dS * a / (rho2 * drho * drho);
  const T2 kt2 = kt.truncate<2>();
  const T2 kr = kt2 + rho2 * kt.derivative() / drho + lambda;
  ProfileSample p;
  p.r = r;
  p.a = a.value();
  p.da = a.deriv(1);
  p.d2a = a.deriv(2);
  p.rho = rho.value();
  p.drho = rho.deriv(1);
  p.d2rho = rho.deriv(2);
  p.kr = kr.value();
  p.dkr = kr.deriv(1);
  p.kt = kt.value();
  p.dkt = kt.deriv(1);
  return p;
}

inline SphericalInitialData dec_bump(double m, const BumpParams& bp = {}, const GridSpec& spec = {}) {
  require(m > 0, ErrorKind::InvalidInput, "mass must be positive");
  require(bp.r1 >= 1.0 && bp.r2 > bp.r1, ErrorKind::InvalidInput,
          "bump support must lie in [m, r2] with r2 > r1");
  require(bp.energy >= 0 && bp.amplitude >= 0 && bp.nu >= 0 && bp.nu < 1,
          ErrorKind::InvalidInput, "bump parameters out of range");
  return from_profile("dec_bump", spec.build(0.5 * m),
                      [m, bp](double x) { return dec_bump_sample(m, bp, x); },
                      m * (1.0 + bp.energy));
}

}  // namespace penrose
