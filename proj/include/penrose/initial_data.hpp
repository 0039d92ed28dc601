#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "penrose/errors.hpp"
#include "penrose/numerics/finite_difference.hpp"
#include "penrose/numerics/interpolation.hpp"
#include "penrose/radial_grid.hpp"

namespace penrose {

/// Metric and extrinsic-curvature profile values at one radius.
/// g = a^2 dr^2 + rho^2 dOmega^2, k = diag(kr, kt, kt) (mixed components).
struct ProfileSample {
  double r = 0;
  double a = 1, da = 0, d2a = 0;
  double rho = 1, drho = 1, d2rho = 0;
  double kr = 0, dkr = 0;
  double kt = 0, dkt = 0;
};

/// Profile as a function of the offset x = r - r_0 from the grid origin.
using ProfileFn = std::function<ProfileSample(double offset)>;

/// Spherically symmetric initial data sampled on a radial grid, plus an
/// evaluator for off-node values (exact for closed-form scenarios, Hermite
/// interpolation for tabulated ones).
struct SphericalInitialData {
  std::string name;
  RadialGrid grid;
  std::vector<ProfileSample> samples;
  ProfileFn evaluate;
  std::optional<double> mass_hint;

  double r_max() const { return grid.r_max(); }

  bool time_symmetric() const {
    for (const auto& s : samples)
      if (s.kr != 0.0 || s.kt != 0.0 || s.dkr != 0.0 || s.dkt != 0.0) return false;
    return true;
  }
};

/// Samples a closed-form profile on every grid node.
inline SphericalInitialData from_profile(std::string name, RadialGrid grid, ProfileFn fn,
                                         std::optional<double> mass_hint = {}) {
  SphericalInitialData d{std::move(name), std::move(grid), {}, std::move(fn), mass_hint};
  d.samples.reserve(d.grid.size());
  for (std::size_t i = 0; i < d.grid.size(); ++i) {
    ProfileSample s = d.evaluate(d.grid.offset(i));
    s.r = d.grid.r(i);
    d.samples.push_back(s);
  }
  return d;
}

/// Tabulated profile columns; derivative columns may be absent.
struct ProfileColumns {
  std::vector<double> a, da, d2a, rho, drho, d2rho, kr, dkr, kt, dkt;
};

/// Builds data from tabulated values. Missing derivative columns are filled
/// with five-point (fourth-order) finite differences. Off-node values use
/// quintic Hermite interpolation for a and rho, cubic for kr and kt.
inline SphericalInitialData from_samples(std::string name, RadialGrid grid, ProfileColumns c,
                                         std::optional<double> mass_hint = {}) {
  const std::size_t n = grid.size();
  const auto& x = grid.offsets();
  auto need = [&](const std::vector<double>& v, const char* what) {
    require(v.size() == n, ErrorKind::InvalidInput, std::string("column size mismatch: ") + what);
  };
  need(c.a, "a");
  need(c.rho, "rho");
  if (c.kr.empty()) c.kr.assign(n, 0.0);
  if (c.kt.empty()) c.kt.assign(n, 0.0);
  need(c.kr, "kr");
  need(c.kt, "kt");
  auto fill = [&](std::vector<double>& d, const std::vector<double>& f, std::size_t order) {
    if (d.empty()) d = num::differentiate(x, f, order, 5);
    need(d, "derivative");
  };
  fill(c.da, c.a, 1);
  fill(c.d2a, c.a, 2);
  fill(c.drho, c.rho, 1);
  fill(c.d2rho, c.rho, 2);
  fill(c.dkr, c.kr, 1);
  fill(c.dkt, c.kt, 1);

  SphericalInitialData d;
  d.name = std::move(name);
  d.mass_hint = mass_hint;
  d.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    d.samples[i] = {grid.r(i), c.a[i], c.da[i], c.d2a[i], c.rho[i], c.drho[i], c.d2rho[i],
                    c.kr[i], c.dkr[i], c.kt[i], c.dkt[i]};

  struct Interp {
    num::HermiteInterpolant a, rho, kr, kt;
  };
  auto interp = std::make_shared<Interp>(Interp{
      num::HermiteInterpolant(x, c.a, c.da, c.d2a),
      num::HermiteInterpolant(x, c.rho, c.drho, c.d2rho),
      num::HermiteInterpolant(x, c.kr, c.dkr),
      num::HermiteInterpolant(x, c.kt, c.dkt),
  });
  const double origin = grid.origin();
  d.evaluate = [interp, origin](double offset) {
    const auto a = interp->a.eval(offset);
    const auto rho = interp->rho.eval(offset);
    const auto kr = interp->kr.eval(offset);
    const auto kt = interp->kt.eval(offset);
    return ProfileSample{origin + offset, a[0], a[1], a[2], rho[0], rho[1], rho[2],
                         kr[0], kr[1], kt[0], kt[1]};
  };
  d.grid = std::move(grid);
  return d;
}

}  // namespace penrose
