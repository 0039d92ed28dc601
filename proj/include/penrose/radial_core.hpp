#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "penrose/errors.hpp"
#include "penrose/initial_data.hpp"
#include "penrose/numerics/extrapolation.hpp"
#include "penrose/numerics/roots.hpp"

namespace penrose {

using std::numbers::pi;

/// Scalar curvature of a^2 dr^2 + rho^2 dOmega^2.
inline double scalar_curvature(double a, double da, double rho, double drho, double d2rho) {
  const double s = drho / a;
  return 2.0 * (1.0 - s * s) / (rho * rho) - 4.0 * (d2rho * a - drho * da) / (a * a * a * rho);
}

inline double scalar_curvature(const ProfileSample& p) {
  return scalar_curvature(p.a, p.da, p.rho, p.drho, p.d2rho);
}

inline std::vector<double> scalar_curvature(const SphericalInitialData& data) {
  std::vector<double> out;
  out.reserve(data.samples.size());
  for (const auto& p : data.samples) {
    for (double v : {p.a, p.da, p.d2a, p.rho, p.drho, p.d2rho})
      require(std::isfinite(v), ErrorKind::InvalidInput, "non-finite metric sample");
    out.push_back(scalar_curvature(p));
  }
  return out;
}

/// Constraint densities at one radius.
struct PointDensities {
  double R = 0;
  double mu = 0;
  double J_r = 0;   ///< covariant radial component
  double J_norm = 0;  ///< |J|_g = |J_r| / a
  double margin() const { return mu - J_norm; }
};

inline PointDensities point_densities(const ProfileSample& p) {
  PointDensities d;
  d.R = scalar_curvature(p);
  const double trk = p.kr + 2.0 * p.kt;
  const double k2 = p.kr * p.kr + 2.0 * p.kt * p.kt;
  d.mu = (d.R + trk * trk - k2) / (16.0 * pi);
  d.J_r = (2.0 * (p.drho / p.rho) * (p.kr - p.kt) - 2.0 * p.dkt) / (8.0 * pi);
  d.J_norm = std::abs(d.J_r) / p.a;
  return d;
}

struct ConstraintDensities {
  std::vector<double> r, R, mu, J_r, J_norm, dec_margin;
};

inline ConstraintDensities constraint_densities(const SphericalInitialData& data) {
  const auto R = scalar_curvature(data);
  ConstraintDensities c;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    const auto& p = data.samples[i];
    require(std::isfinite(p.kr) && std::isfinite(p.kt) && std::isfinite(p.dkr) &&
                std::isfinite(p.dkt),
            ErrorKind::InvalidInput, "non-finite extrinsic curvature sample");
    const auto d = point_densities(p);
    c.r.push_back(p.r);
    c.R.push_back(R[i]);
    c.mu.push_back(d.mu);
    c.J_r.push_back(d.J_r);
    c.J_norm.push_back(d.J_norm);
    c.dec_margin.push_back(d.margin());
  }
  return c;
}

struct DecResult {
  bool holds = true;
  double worst_margin = 0;
  double worst_radius = 0;
  double tolerance = 1e-10;
};

inline DecResult dec_check(const ConstraintDensities& c, double tol_dec = 1e-10) {
  DecResult out;
  out.tolerance = tol_dec;
  require(!c.dec_margin.empty(), ErrorKind::InvalidInput, "dec_check: empty densities");
  std::size_t worst = 0;
  for (std::size_t i = 1; i < c.dec_margin.size(); ++i)
    if (c.dec_margin[i] < c.dec_margin[worst]) worst = i;
  out.worst_margin = c.dec_margin[worst];
  out.worst_radius = c.r[worst];
  out.holds = out.worst_margin >= -tol_dec;
  return out;
}

struct Expansions {
  double plus = 0, minus = 0;
};

inline Expansions null_expansions(const ProfileSample& p) {
  const double h = 2.0 * p.drho / (p.a * p.rho);
  return {h + 2.0 * p.kt, h - 2.0 * p.kt};
}

/// Expansions at radius r (must lie on the grid).
inline Expansions null_expansions(const SphericalInitialData& data, double r) {
  require(r >= data.grid.origin() && r <= data.r_max(), ErrorKind::InvalidInput,
          "null_expansions: radius outside grid");
  return null_expansions(data.evaluate(r - data.grid.origin()));
}

enum class HorizonKind { Future, Past };

inline std::string to_string(HorizonKind k) { return k == HorizonKind::Future ? "future" : "past"; }

struct HorizonRecord {
  double r_h = 0;
  double offset = 0;  ///< r_h - r_0
  HorizonKind kind = HorizonKind::Future;
  double area = 0;
  bool outermost = false;
};

inline double expansion_of(const ProfileSample& p, HorizonKind kind) {
  const auto e = null_expansions(p);
  return kind == HorizonKind::Future ? e.plus : e.minus;
}

/// Largest root of theta_+ (future) or theta_- (past): scan the nodes from
/// r_max inward to the last sign change, then bisect on the evaluator.
/// Degenerate zero sets resolve to their supremum.
inline HorizonRecord find_outermost_horizon(const SphericalInitialData& data, HorizonKind kind,
                                            std::optional<double> tol_root = {}) {
  const std::size_t n = data.samples.size();
  const double tol = tol_root.value_or(1e-10 * data.r_max());
  require(expansion_of(data.samples.back(), kind) > 0, ErrorKind::NoHorizon,
          "expansion is not positive at r_max");
  std::size_t i = n - 1;
  while (i > 0 && expansion_of(data.samples[i - 1], kind) > 0) --i;
  require(i > 0, ErrorKind::NoHorizon, "expansion " + to_string(kind) + " has no root on the grid");
  // theta <= 0 at node i-1, > 0 on nodes i..N.
  const auto& g = data.grid;
  const double x = num::bisect_last_nonpositive(
      [&](double off) { return expansion_of(data.evaluate(off), kind); }, g.offset(i - 1),
      g.offset(i), tol);
  HorizonRecord h;
  h.offset = x;
  h.r_h = g.origin() + x;
  h.kind = kind;
  const double rho = data.evaluate(x).rho;
  h.area = 4.0 * pi * rho * rho;
  h.outermost = true;
  return h;
}

/// True when neither expansion vanishes on nodes strictly outside the horizon.
inline bool no_other_horizon_outside(const SphericalInitialData& data, const HorizonRecord& h) {
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    if (data.grid.offset(i) <= h.offset) continue;
    const auto e = null_expansions(data.samples[i]);
    if (e.plus <= 0 || e.minus <= 0) return false;
  }
  return true;
}

struct AdmEnergy {
  double value = 0;      ///< extrapolated Misner-Sharp mass
  double diagnostic = 0; ///< extrapolated coordinate flux
  double tolerance = 0;
  std::vector<double> radii;  ///< extrapolation nodes
};

/// Nodes nearest r_max / 2^j, j = 0..3, distinct and inside the grid.
inline std::vector<std::size_t> outer_decade_nodes(const RadialGrid& grid) {
  std::vector<std::size_t> idx;
  for (int j = 0; j < 4; ++j) {
    const std::size_t k = grid.nearest(grid.r_max() / std::pow(2.0, j));
    if (idx.empty() || k != idx.back()) idx.push_back(k);
  }
  return idx;
}

inline double misner_sharp_mass(const ProfileSample& p) {
  const double s = p.drho / p.a;
  return 0.5 * p.rho * (1.0 - s * s);
}

/// ADM flux integral over the coordinate sphere |x| = r in the asymptotically
/// Cartesian chart x = r n, in closed form for the radial metric.
inline double coordinate_flux_mass(const ProfileSample& p) {
  return 0.5 * p.r * p.a * p.a + p.rho * p.rho / (2.0 * p.r) - p.rho * p.drho;
}

/// Extrapolates a radial quantity to r = infinity from the outer decade.
template <class Fn>
double extrapolate_outer(const SphericalInitialData& data, Fn&& quantity) {
  std::vector<double> t, y;
  for (std::size_t k : outer_decade_nodes(data.grid)) {
    t.push_back(1.0 / data.grid.r(k));
    y.push_back(quantity(data.samples[k]));
  }
  return num::extrapolate_to_zero(t, y);
}

inline AdmEnergy adm_energy(const SphericalInitialData& data) {
  AdmEnergy e;
  e.value = extrapolate_outer(data, misner_sharp_mass);
  e.diagnostic = extrapolate_outer(data, coordinate_flux_mass);
  e.tolerance = std::max(1e-4, 50.0 / data.r_max());
  for (std::size_t k : outer_decade_nodes(data.grid)) e.radii.push_back(data.grid.r(k));
  require(std::abs(e.value - e.diagnostic) <= e.tolerance, ErrorKind::AsymptoticMismatch,
          "ADM estimators disagree: quasi-local " + std::to_string(e.value) + " vs flux " +
              std::to_string(e.diagnostic));
  return e;
}

/// Spherical symmetry: the flux integrand is radial times n^i, which
/// integrates to zero over the sphere.
inline std::array<double, 3> adm_momentum(const SphericalInitialData&) { return {0.0, 0.0, 0.0}; }

/// Input validation: positivity, finiteness and asymptotic fall-off of the
/// tabulated profiles. Fall-off is tested by requiring r|a-1|, r|rho/r-1| and
/// r^2(|kr|+|kt|) not to grow across the outer decade.
inline void validate(const SphericalInitialData& data) {
  data.grid.validate();
  require(data.samples.size() == data.grid.size(), ErrorKind::InvalidInput,
          "sample count does not match grid");
  require(static_cast<bool>(data.evaluate), ErrorKind::InvalidInput, "profile evaluator missing");
  for (const auto& p : data.samples) {
    for (double v : {p.a, p.da, p.d2a, p.rho, p.drho, p.d2rho, p.kr, p.dkr, p.kt, p.dkt})
      require(std::isfinite(v), ErrorKind::InvalidInput, "non-finite profile sample");
    require(p.a > 0 && p.rho > 0, ErrorKind::InvalidInput, "a and rho must be positive");
  }
  const auto& g = data.grid;
  const auto& inner = data.samples[g.nearest(g.r_max() / 10.0)];
  const auto& outer = data.samples.back();
  auto grows = [](double qi, double qo, double scale) { return qo > 2.0 * qi + 1e-10 * scale; };
  auto fa = [](const ProfileSample& p) { return p.r * std::abs(p.a - 1.0); };
  auto fr = [](const ProfileSample& p) { return p.r * std::abs(p.rho / p.r - 1.0); };
  auto fk = [](const ProfileSample& p) { return p.r * p.r * (std::abs(p.kr) + std::abs(p.kt)); };
  const double scale = g.r_max();
  require(!grows(fa(inner), fa(outer), scale), ErrorKind::InvalidInput,
          "fall-off violated: |a-1| decays slower than 1/r");
  require(!grows(fr(inner), fr(outer), scale), ErrorKind::InvalidInput,
          "fall-off violated: |rho/r-1| decays slower than 1/r");
  require(!grows(fk(inner), fk(outer), 1.0), ErrorKind::InvalidInput,
          "fall-off violated: extrinsic curvature decays slower than 1/r^2");
}

}  // namespace penrose
