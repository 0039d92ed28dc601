#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "penrose/conformal.hpp"
#include "penrose/errors.hpp"
#include "penrose/jang.hpp"
#include "penrose/radial_core.hpp"

namespace penrose {

/// Relative gap below which T and C are treated as equal (1 - C/T is rounding noise).
inline constexpr double kHeightGap = 1e-9;

/// Per-height results of the cap / conformal solve / energy chain.
struct HeightRecord {
  double T = 0, r_T = 0, boundary_area = 0;
  double Hbar = 0, q_N = 0, defect = 0;
  double alpha = 0, alpha_exterior = 0;
  double Q_value = 0, Q_zero = 0, flux = 0, dirichlet = 0;
  double min_u = 0, u_boundary = 0, fixed_point_change = 0;
  double E_ghat_alpha = 0;  ///< E_g + 2 alpha
  double E_ghat_Q = 0;      ///< E_g - Q / pi
  double lower_bound_lhs = 0, lower_bound_rhs = 0;
  std::optional<double> sigma_T, bound_rhs;  ///< with the estimated C (T > C only)
  double sigma_T_C0 = 0, bound_rhs_C0 = 0;   ///< with C = 0, not asserted
  double flux_consistency = 0;  ///< |2Q - flux| / max(|flux|, 1e-12)
};

struct InequalityReport {
  double E_g = 0, E_gbar = 0;
  double C = 0;
  std::optional<double> T_min;
  std::vector<HeightRecord> rows;
  std::vector<CapacityEntry> sigma_capacity;
  CapacityEntry sigma_background;
  std::optional<double> sigma_herzlich;
  double bound_rhs = 0;  ///< largest per-height bound with the estimated C
  double margin = 0;     ///< E_g - bound_rhs
  double tol_energy = 0, tol_consistency = 1e-3;
  /// Slope of log u_T against cylinder arclength near the cap at the largest T.
  std::optional<double> cylinder_decay_rate;
  std::vector<double> u_largest_r, u_largest;
};

/// Energy of the Jang metric (b, rho) by the same quasi-local extrapolation
/// as adm_energy.
inline double jang_metric_energy(const JangSolution& sol) {
  std::vector<double> t, y;
  const auto idx = outer_decade_nodes(sol.data.grid);
  for (std::size_t i : idx) {
    if (i < sol.first) continue;
    const auto& p = sol.nodes[i - sol.first];
    const double s = p.profile.drho / p.b;
    t.push_back(1.0 / p.r);
    y.push_back(0.5 * p.profile.rho * (1.0 - s * s));
  }
  return num::extrapolate_to_zero(t, y);
}

/// Least-squares slope of log u against arclength s = int b dr over the
/// nodes within the first `span` of arclength from the cap.
inline std::optional<double> cylinder_decay(const ConformalProblem& P, const ConformalSolution& s,
                                            double span) {
  std::vector<double> arc{0.0};
  for (std::size_t i = 1; i < P.size(); ++i)
    arc.push_back(arc.back() + 0.5 * (P.x[i] - P.x[i - 1]) * (P.b[i] + P.b[i - 1]));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < P.size() && arc[i] <= span; ++i) {
    const double y = std::log(s.u[i]);
    sx += arc[i]; sy += y; sxx += arc[i] * arc[i]; sxy += arc[i] * y;
    ++n;
  }
  if (n < 3) return std::nullopt;
  const double den = static_cast<double>(n) * sxx - sx * sx;
  if (den <= 0) return std::nullopt;
  return (static_cast<double>(n) * sxy - sx * sy) / den;
}

/// Caps the Jang surface at every height, solves the conformal problem,
/// and assembles the energy chain. Throws BoundViolation when an asserted
/// inequality fails.
inline InequalityReport penrose_like_bound(const SphericalInitialData& data,
                                           const JangSolution& sol, double E_g,
                                           std::vector<double> heights) {
  std::sort(heights.begin(), heights.end());
  InequalityReport rep;
  rep.E_g = E_g;
  rep.E_gbar = jang_metric_energy(sol);
  rep.tol_energy = 1e-3 * std::max(E_g, 1.0);

  std::vector<HeightDefect> defects;
  for (double T : heights) defects.push_back(defect_at_height(sol, T));
  rep.C = estimate_C(defects);

  bool any_with_C = false;
  for (double T : heights) {
    const auto cap = cap_surface(sol, T);
    const auto P = conformal_problem(sol, cap);
    const auto s = solve_conformal_bvp(P);
    const auto v = perturbation_of(s);
    HeightRecord row;
    row.T = T;
    row.r_T = cap.r_T;
    row.boundary_area = cap.boundary_area;
    row.Hbar = cap.Hbar_boundary;
    row.q_N = cap.q_N;
    row.defect = cap.defect;
    row.alpha = s.alpha;
    row.alpha_exterior = s.alpha_exterior;
    row.Q_value = s.Q_value;
    row.Q_zero = q_functional(P, std::vector<double>(P.size(), 0.0));
    row.flux = s.flux;
    row.dirichlet = s.dirichlet;
    row.min_u = s.min_u;
    row.u_boundary = s.u.front();
    row.fixed_point_change = s.fixed_point_change;
    row.E_ghat_alpha = E_g + 2.0 * s.alpha;
    row.E_ghat_Q = E_g - s.Q_value / pi;
    const auto lb = q_lower_bound_check(P, v);
    row.lower_bound_lhs = lb.lhs;
    row.lower_bound_rhs = lb.rhs;
    row.flux_consistency = std::abs(2.0 * s.Q_value - s.flux) / std::max(std::abs(s.flux), 1e-12);
    row.sigma_T_C0 = sigma_T(P, s, T, 0.0);
    row.bound_rhs_C0 = bound_rhs(row.sigma_T_C0, cap.boundary_area, T, 0.0);
    if (T > rep.C * (1.0 + kHeightGap)) {
      row.sigma_T = sigma_T(P, s, T, rep.C);
      row.bound_rhs = bound_rhs(*row.sigma_T, cap.boundary_area, T, rep.C);
      rep.bound_rhs = any_with_C ? std::max(rep.bound_rhs, *row.bound_rhs) : *row.bound_rhs;
      any_with_C = true;
    }
    if (!rep.T_min && 1.0 - rep.C / T > 0.5 && row.Q_zero >= 0) rep.T_min = T;
    if (T == heights.back()) {
      rep.cylinder_decay_rate = cylinder_decay(P, s, 2.0 * sol.horizon.r_h);
      rep.u_largest_r = s.r;
      rep.u_largest = s.u;
    }
    rep.rows.push_back(row);
  }
  rep.sigma_capacity = capacity_sigma(sol, default_capacity_eps(sol));
  rep.sigma_background = background_capacity_sigma(data, sol.horizon);

  for (const auto& row : rep.rows) {
    require(row.E_ghat_Q >= -rep.tol_energy && row.E_ghat_alpha >= -rep.tol_energy,
            ErrorKind::BoundViolation,
            "conformal energy negative at T = " + std::to_string(row.T));
    if (row.bound_rhs)
      require(E_g >= *row.bound_rhs - rep.tol_energy, ErrorKind::BoundViolation,
              "energy bound violated at T = " + std::to_string(row.T));
  }
  require(any_with_C, ErrorKind::PreconditionViolation,
          "no scheduled height exceeds the defect constant C = " + std::to_string(rep.C));
  rep.margin = E_g - rep.bound_rhs;
  require(rep.margin > 0, ErrorKind::BoundViolation, "final margin is not strictly positive");
  return rep;
}

}  // namespace penrose
