#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "penrose/errors.hpp"
#include "penrose/initial_data.hpp"
#include "penrose/numerics/finite_difference.hpp"
#include "penrose/numerics/ode.hpp"
#include "penrose/numerics/roots.hpp"
#include "penrose/radial_core.hpp"

namespace penrose {

/// Radial reduction of Jang's equation for a height function f(r):
///   (rho^2 beta)' / (a rho^2) - kr (1 - beta^2) - 2 kt,
/// with beta = (f'/a) / sqrt(1 + (f'/a)^2). This is the graph mean curvature
/// minus the trace of k over the graph.
inline double jang_residual(const ProfileSample& p, double df, double d2f) {
  const double s = df / p.a;
  const double w = std::sqrt(1.0 + s * s);
  const double beta = s / w;
  const double ds = d2f / p.a - df * p.da / (p.a * p.a);
  const double dbeta = ds / (w * w * w);
  return dbeta / p.a + 2.0 * p.drho * beta / (p.a * p.rho) - p.kr * (1.0 - beta * beta) -
         2.0 * p.kt;
}

/// Residual on the grid for f given by its first and second derivatives.
inline std::vector<double> jang_residual(const SphericalInitialData& data,
                                         const std::vector<double>& df,
                                         const std::vector<double>& d2f) {
  require(df.size() == data.samples.size() && d2f.size() == df.size(), ErrorKind::InvalidInput,
          "jang_residual: profile size mismatch");
  std::vector<double> out(df.size());
  for (std::size_t i = 0; i < df.size(); ++i) out[i] = jang_residual(data.samples[i], df[i], d2f[i]);
  return out;
}

/// Geometry of the Jang graph at one radius.
struct JangPoint {
  double x = 0, r = 0;
  double gamma = 0, dgamma = 0;  ///< gap 1 - |beta| and its r-derivative
  double beta = 0, dbeta = 0;
  double f = 0, df = 0;
  double b = 0, db = 0;          ///< Jang metric radial factor
  double hbar_rr = 0, hbar_tt = 0;
  double X = 0, Y = 0;           ///< hbar - k (mixed, in gbar): rr and tangential
  double q_N = 0;                ///< q(Nbar), Nbar the unit radial normal
  double J_w = 0;                ///< J(w)
  double Hbar = 0;               ///< mean curvature of the level sphere in gbar
  double defect = 0;             ///< Hbar - q(Nbar)
  double Rbar_direct = 0;
  ProfileSample profile;
};

struct JangOptions {
  /// Start offset from the horizon; 0 selects the first grid node beyond it.
  double start_offset = 0.0;
  double rtol_near = 1e-10;
  double rtol_far = 1e-8;
  bool check_decay = true;
};

/// Blow-up solution of Jang's equation over an outermost horizon.
///
/// beta -> -1 at a future horizon (f -> +inf), +1 at a past one. The ODE is
/// integrated in the gap gamma = 1 - |beta|, which is regular at the horizon
/// where gamma ~ a theta'(r_h) (r - r_h)^2 / 2.
class JangSolution {
 public:
  using State = std::array<double, 2>;  // gamma, F (unnormalized height)

  SphericalInitialData data;
  HorizonRecord horizon;
  int sign = 1;     ///< +1 future (f -> +inf), -1 past
  double s = -1;    ///< limit of beta at the horizon, = -sign
  JangOptions options;

  double start_x = 0;  ///< offset where the integration starts
  State start_state{};
  std::size_t first = 0;  ///< first grid node of the solution domain
  double height_shift = 0;  ///< F(r_max); f = F - height_shift

  /// Node arrays over grid indices first..N.
  std::vector<JangPoint> nodes;
  std::vector<double> div_q, Rbar_identity, mu, J_r;
  std::vector<State> states;

  /// sup of r^{1/2}|f| over the outer decade and over the decade before it.
  double decay_outer = 0, decay_inner = 0;

  State rhs(double x, const State& y) const {
    const ProfileSample p = data.evaluate(x);
    return rhs(p, y);
  }

  State rhs(const ProfileSample& p, const State& y) const {
    const double g = y[0];
    const double theta = 2.0 * p.drho / (p.a * p.rho) - 2.0 * s * p.kt;
    const double dg = p.a * theta - 2.0 * p.drho / p.rho * g - s * p.a * p.kr * g * (2.0 - g);
    const double w = g * (2.0 - g);
    const double df = w > 0 ? p.a * s * (1.0 - g) / std::sqrt(w) : std::nan("");
    return {dg, df};
  }

  double rtol_at(double x) const {
    return x - horizon.offset < horizon.r_h ? options.rtol_near : options.rtol_far;
  }

  /// Local fields from the profile and the ODE state.
  JangPoint point(const ProfileSample& p, double x, const State& y) const {
    JangPoint j;
    j.x = x;
    j.r = p.r;
    j.profile = p;
    j.gamma = y[0];
    const State d = rhs(p, y);
    j.dgamma = d[0];
    j.df = d[1];
    j.f = y[1] - height_shift;
    j.beta = s * (1.0 - j.gamma);
    j.dbeta = -s * j.dgamma;
    const double w = j.gamma * (2.0 - j.gamma);  // 1 - beta^2
    const double sq = std::sqrt(w);
    j.b = p.a / sq;
    j.db = p.da / sq - p.a * (1.0 - j.gamma) * j.dgamma / (w * sq);
    j.hbar_rr = j.dbeta / p.a;
    j.hbar_tt = p.drho * j.beta / (p.a * p.rho);
    j.X = j.hbar_rr - w * p.kr;
    j.Y = j.hbar_tt - p.kt;
    j.q_N = j.beta * j.X / sq;
    j.J_w = point_densities(p).J_r * j.beta / p.a;
    j.Hbar = 2.0 * p.drho / (j.b * p.rho);
    // Hbar - q(Nbar) = (2 rho'/(a rho) - 2 beta kt) / sqrt(1 - beta^2), with
    // the numerator written as theta_s + 2 s gamma kt to avoid cancellation.
    const double theta = 2.0 * p.drho / (p.a * p.rho) - 2.0 * s * p.kt;
    j.defect = (theta + 2.0 * s * j.gamma * p.kt) / sq;
    j.Rbar_direct = scalar_curvature(j.b, j.db, p.rho, p.drho, p.d2rho);
    return j;
  }

  /// Fields at an arbitrary offset inside the solution domain, obtained by
  /// re-integrating the ODE from the closest node below.
  JangPoint at(double x) const {
    require(x > start_x && x <= data.grid.offsets().back(), ErrorKind::InvalidInput,
            "JangSolution::at: offset outside solution domain");
    double x0 = start_x;
    State y = start_state;
    const auto& g = data.grid.offsets();
    const auto it = std::upper_bound(g.begin() + static_cast<std::ptrdiff_t>(first), g.end(), x);
    const auto above = static_cast<std::size_t>(it - g.begin()) - first;
    if (above > 0) {
      x0 = g[first + above - 1];
      y = states[above - 1];
    }
    if (x > x0) {
      num::DormandPrince<2> ode([this](double t, const State& st) { return rhs(t, st); },
                                {[this](double t) { return rtol_at(t); }, 1e-300, 1'000'000});
      double h = 0;
      y = ode.advance(x0, x, y, h);
    }
    return point(data.evaluate(x), x, y);
  }

  std::vector<double> radii() const {
    std::vector<double> r;
    for (const auto& n : nodes) r.push_back(n.r);
    return r;
  }
};

/// Integrates the gap ODE from the horizon startup to every grid node beyond
/// it. Returns the states at those nodes.
inline std::vector<JangSolution::State> integrate_gap(const JangSolution& sol, double start_x,
                                                      const JangSolution::State& y0,
                                                      std::size_t first) {
  num::DormandPrince<2> ode(
      [&sol](double t, const JangSolution::State& st) { return sol.rhs(t, st); },
      {[&sol](double t) { return sol.rtol_at(t); }, 1e-300, 1'000'000});
  const auto& g = sol.data.grid.offsets();
  std::vector<JangSolution::State> out;
  out.reserve(g.size() - first);
  double x = start_x, h = 0;
  JangSolution::State y = y0;
  for (std::size_t i = first; i < g.size(); ++i) {
    try {
      y = ode.advance(x, g[i], y, h);
    } catch (const Error& e) {
      throw Error(ErrorKind::BlowupEscape,
                  "Jang slope reached |beta| = 1 in the interior near r = " +
                      std::to_string(sol.data.grid.origin() + x) + " (" + e.what() + ")");
    }
    require(y[0] > 0 && y[0] < 2, ErrorKind::BlowupEscape,
            "Jang slope reached |beta| = 1 in the interior at r = " +
                std::to_string(sol.data.grid.r(i)));
    x = g[i];
    out.push_back(y);
  }
  return out;
}

/// d theta_s / dr at offset x for the expansion vanishing at the horizon.
inline double expansion_derivative(const ProfileSample& p, double s) {
  const double rr = p.drho / p.rho;
  return 2.0 * p.d2rho / (p.a * p.rho) - 2.0 * p.drho * (p.da / p.a + rr) / (p.a * p.rho) -
         2.0 * s * p.dkt;
}

/// One-term balance gamma(eps) = a theta'(r_h) eps^2 / 2 at the startup radius.
inline double startup_gap(const SphericalInitialData& data, const HorizonRecord& h, double s,
                          double eps) {
  const ProfileSample p = data.evaluate(h.offset);
  const double c = 0.5 * p.a * expansion_derivative(p, s);
  require(c > 0, ErrorKind::PreconditionViolation,
          "degenerate horizon: expansion has vanishing derivative at r_h");
  return c * eps * eps;
}

inline JangSolution solve_jang_blowup(const SphericalInitialData& data, const HorizonRecord& h,
                                      JangOptions opt = {}) {
  require(h.outermost, ErrorKind::PreconditionViolation, "horizon must be outermost");
  require(no_other_horizon_outside(data, h), ErrorKind::PreconditionViolation,
          "another apparent horizon lies outside r_h");
  JangSolution sol;
  sol.data = data;
  sol.horizon = h;
  sol.sign = h.kind == HorizonKind::Future ? 1 : -1;
  sol.s = -sol.sign;
  sol.options = opt;

  const auto& g = data.grid.offsets();
  std::size_t first = 0;
  while (first < g.size() && g[first] <= h.offset) ++first;
  require(first + 16 < g.size(), ErrorKind::PreconditionViolation,
          "horizon too close to r_max");
  double start = opt.start_offset > 0 ? h.offset + opt.start_offset : g[first];
  if (start > g[first]) {
    // An explicit start beyond the first node: solution domain begins after it.
    while (first < g.size() && g[first] <= start) ++first;
  }
  sol.start_x = start;
  sol.start_state = {startup_gap(data, h, sol.s, start - h.offset), 0.0};
  if (start == g[first]) {
    // The first node is the start itself.
    sol.states.push_back(sol.start_state);
    auto rest = integrate_gap(sol, start, sol.start_state, first + 1);
    sol.states.insert(sol.states.end(), rest.begin(), rest.end());
  } else {
    sol.states = integrate_gap(sol, start, sol.start_state, first);
  }
  sol.first = first;
  sol.height_shift = sol.states.back()[1];

  const std::size_t n = sol.states.size();
  sol.nodes.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    sol.nodes.push_back(sol.point(data.samples[first + k], g[first + k], sol.states[k]));

  // div q = (rho^2 q_N)' / (b rho^2), second-order differences on the nodes.
  std::vector<double> xr(n), flux(n);
  for (std::size_t k = 0; k < n; ++k) {
    xr[k] = g[first + k];
    const auto& p = sol.nodes[k];
    flux[k] = p.profile.rho * p.profile.rho * p.q_N;
  }
  const auto dflux = num::differentiate(xr, flux, 1, 3);
  sol.div_q.resize(n);
  sol.Rbar_identity.resize(n);
  sol.mu.resize(n);
  sol.J_r.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = sol.nodes[k];
    const double rho2 = p.profile.rho * p.profile.rho;
    const auto dens = point_densities(p.profile);
    sol.mu[k] = dens.mu;
    sol.J_r[k] = dens.J_r;
    sol.div_q[k] = dflux[k] / (p.b * rho2);
    sol.Rbar_identity[k] = 16.0 * pi * (dens.mu - p.J_w) + p.X * p.X + 2.0 * p.Y * p.Y +
                           2.0 * p.q_N * p.q_N - 2.0 * sol.div_q[k];
  }

  // Decay of the normalized height over the outer decades.
  const double rmax = data.r_max();
  for (const auto& p : sol.nodes) {
    const double v = std::sqrt(p.r) * std::abs(p.f);
    if (p.r >= rmax / 10.0) sol.decay_outer = std::max(sol.decay_outer, v);
    else if (p.r >= rmax / 100.0) sol.decay_inner = std::max(sol.decay_inner, v);
  }
  if (opt.check_decay && data.grid.r(first) <= rmax / 100.0)
    require(sol.decay_outer <= sol.decay_inner * (1.0 + 1e-6) + 1e-14, ErrorKind::DecayViolation,
            "r^{1/2}|f| grows across the outer decade");
  return sol;
}

/// Relative change of the outer solution under the startup offset sweep.
struct StartupSweep {
  std::vector<double> eps;        ///< start offsets, in units of r_h
  std::vector<double> outer_beta; ///< beta at the reference radius
  std::vector<double> outer_f;    ///< f at the reference radius
  double reference_radius = 0;
  double max_relative_change = 0;
  bool passed = false;
};

inline StartupSweep startup_sensitivity(const SphericalInitialData& data, const HorizonRecord& h,
                                        std::vector<double> eps = {1e-4, 1e-5, 1e-6},
                                        double threshold = 1e-4) {
  StartupSweep sw;
  sw.eps = eps;
  sw.reference_radius = std::min(10.0 * h.r_h, 0.5 * data.r_max());
  const double xref = sw.reference_radius - data.grid.origin();
  for (double e : eps) {
    JangOptions opt;
    opt.start_offset = e * h.r_h;
    opt.check_decay = false;
    const auto sol = solve_jang_blowup(data, h, opt);
    const auto p = sol.at(xref);
    sw.outer_beta.push_back(p.beta);
    sw.outer_f.push_back(p.f);
  }
  for (std::size_t k = 1; k < eps.size(); ++k) {
    const double db = std::abs(sw.outer_beta[k] - sw.outer_beta[k - 1]) /
                      std::max(std::abs(sw.outer_beta[k]), 1e-300);
    const double df = std::abs(sw.outer_f[k] - sw.outer_f[k - 1]) /
                      std::max(std::abs(sw.outer_f[k]), 1e-300);
    sw.max_relative_change = std::max({sw.max_relative_change, db, df});
  }
  sw.passed = sw.max_relative_change < threshold;
  return sw;
}

struct JangCurvature {
  std::vector<double> r, direct, identity;
  double max_abs_residual = 0;
};

/// Scalar curvature of the Jang metric computed directly from (b, rho) and
/// from the Jang identity 16 pi (mu - J(w)) + |hbar - k|^2 + 2|q|^2 - 2 div q.
inline JangCurvature jang_scalar_curvature(const JangSolution& sol) {
  JangCurvature c;
  for (std::size_t k = 0; k < sol.nodes.size(); ++k) {
    c.r.push_back(sol.nodes[k].r);
    c.direct.push_back(sol.nodes[k].Rbar_direct);
    c.identity.push_back(sol.Rbar_identity[k]);
    c.max_abs_residual =
        std::max(c.max_abs_residual, std::abs(c.direct.back() - c.identity.back()));
  }
  return c;
}

/// Largest |Jang residual| over the solution nodes, with beta' from the ODE.
inline double jang_equation_residual(const JangSolution& sol) {
  double worst = 0;
  for (const auto& p : sol.nodes) {
    const auto& q = p.profile;
    const double res = p.dbeta / q.a + 2.0 * q.drho * p.beta / (q.a * q.rho) -
                       q.kr * (1.0 - p.beta * p.beta) - 2.0 * q.kt;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

/// Hbar - q(Nbar) of the level sphere through radius r.
inline double level_set_defect(const JangSolution& sol, double r) {
  return sol.at(r - sol.data.grid.origin()).defect;
}

/// Outermost offset where |f| = T (height of the level set).
inline double height_offset(const JangSolution& sol, double T) {
  double fmax = 0;
  for (const auto& p : sol.nodes) fmax = std::max(fmax, std::abs(p.f));
  require(T > 0 && T <= fmax, ErrorKind::CapOutOfRange,
          "height " + std::to_string(T) + " outside the range of |f| on the grid");
  std::size_t k = sol.nodes.size() - 1;
  while (k > 0 && std::abs(sol.nodes[k - 1].f) < T) --k;
  require(k > 0, ErrorKind::CapOutOfRange, "height not bracketed on the grid");
  // |f| >= T at node k-1 and < T at node k.
  const double lo = sol.nodes[k - 1].x, hi = sol.nodes[k].x;
  const double tol = 1e-15 * std::max(std::abs(hi), 1e-300);
  double a = lo, b = hi;
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (std::abs(sol.at(mid).f) >= T) a = mid;
    else b = mid;
  }
  return 0.5 * (a + b);
}

/// Defect of the level set at height T together with its boundary area.
struct HeightDefect {
  double T = 0, r = 0, defect = 0, area = 0;
};

inline HeightDefect defect_at_height(const JangSolution& sol, double T) {
  const double x = height_offset(sol, T);
  const auto p = sol.at(x);
  return {T, p.r, p.defect, 4.0 * pi * p.profile.rho * p.profile.rho};
}

/// C = max_T T |defect(T)| sqrt(A_T / pi) / 4: the smallest constant with
/// |Hbar - q(Nbar)| <= (C / T) 4 sqrt(pi / A_T) at every supplied height,
/// which is the form in which the boundary term enters the energy estimate.
inline double estimate_C(const std::vector<HeightDefect>& samples) {
  require(samples.size() >= 3, ErrorKind::InvalidInput, "estimate_C needs at least 3 heights");
  double C = 0;
  for (const auto& s : samples)
    C = std::max(C, s.T * std::abs(s.defect) * std::sqrt(s.area / pi) / 4.0);
  return C;
}

inline double estimate_C(const JangSolution& sol, const std::vector<double>& heights) {
  std::vector<HeightDefect> samples;
  for (double T : heights) samples.push_back(defect_at_height(sol, T));
  return estimate_C(samples);
}

}  // namespace penrose
