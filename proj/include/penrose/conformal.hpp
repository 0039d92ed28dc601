#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "penrose/errors.hpp"
#include "penrose/jang.hpp"
#include "penrose/numerics/extrapolation.hpp"
#include "penrose/numerics/quadrature.hpp"
#include "penrose/numerics/tridiagonal.hpp"
#include "penrose/radial_core.hpp"

namespace penrose {

/// The Jang surface cut off at height T.
struct CappedSurface {
  double T = 0;
  double r_T = 0;
  double x_T = 0;            ///< offset of r_T from the grid origin
  double boundary_area = 0;  ///< 4 pi rho(r_T)^2, shared by g and gbar
  double Hbar_boundary = 0;  ///< w.r.t. the normal pointing into the capped surface
  double q_N = 0;            ///< q(Nbar) on the boundary
  double defect = 0;         ///< Hbar - q(Nbar)
};

inline CappedSurface cap_surface(const JangSolution& sol, double T) {
  const double x = height_offset(sol, T);
  const auto p = sol.at(x);
  CappedSurface c;
  c.T = T;
  c.x_T = x;
  c.r_T = p.r;
  c.boundary_area = 4.0 * pi * p.profile.rho * p.profile.rho;
  c.Hbar_boundary = p.Hbar;
  c.q_N = p.q_N;
  c.defect = p.defect;
  return c;
}

/// int_{r_N}^inf b / rho^2 dr from a 1/r expansion fitted on the outer decade.
inline double exterior_integral(const std::vector<double>& r, const std::vector<double>& b,
                                const std::vector<double>& rho) {
  const std::size_t n = r.size();
  std::vector<double> rr, g;
  const double R = r.back();
  std::size_t last = n;
  for (int j = 0; j < 4; ++j) {
    const double target = R / std::pow(2.0, j);
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(r[i] - target) < std::abs(r[best] - target)) best = i;
    if (best == last) continue;
    last = best;
    rr.push_back(r[best]);
    g.push_back(b[best] / (rho[best] * rho[best]));
  }
  return num::inverse_square_tail(rr, g, R);
}

/// Radial data of the conformal boundary-value problem on [r_T, r_max].
struct ConformalProblem {
  double origin = 0;
  std::vector<double> x;   ///< node offsets, x[0] = x_T
  std::vector<double> rho, b, Rbar;
  std::vector<double> dec_margin;  ///< mu - |J| on the nodes (optional)
  double area = 0;
  double Hbar = 0;
  double q_N = 0;
  /// Exterior Dirichlet-to-Neumann coupling 1 / int_{r_max}^inf b/rho^2:
  /// beyond r_max the harmonic continuation satisfies rho^2 u'/b = -coupling (u - 1).
  double outer_coupling = 0;

  std::size_t size() const { return x.size(); }
  double r(std::size_t i) const { return origin + x[i]; }
};

inline ConformalProblem conformal_problem(const JangSolution& sol, const CappedSurface& cap) {
  ConformalProblem P;
  P.origin = sol.data.grid.origin();
  const auto p0 = sol.at(cap.x_T);
  auto push = [&P](const JangPoint& p, double margin) {
    P.x.push_back(p.x);
    P.rho.push_back(p.profile.rho);
    P.b.push_back(p.b);
    P.Rbar.push_back(p.Rbar_direct);
    P.dec_margin.push_back(margin);
  };
  push(p0, point_densities(p0.profile).margin());
  const auto& g = sol.data.grid.offsets();
  for (std::size_t k = 0; k < sol.nodes.size(); ++k) {
    const std::size_t i = sol.first + k;
    if (g[i] <= cap.x_T) continue;
    // Drop a node that would leave a sliver cell next to the cap.
    if (i + 1 < g.size() && g[i] - cap.x_T < 0.25 * (g[i + 1] - g[i])) continue;
    push(sol.nodes[k], sol.mu[k] - std::abs(sol.J_r[k]) / sol.nodes[k].profile.a);
  }
  P.area = cap.boundary_area;
  P.Hbar = cap.Hbar_boundary;
  P.q_N = cap.q_N;
  std::vector<double> r(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) r[i] = P.r(i);
  P.outer_coupling = 1.0 / exterior_integral(r, P.b, P.rho);
  return P;
}

namespace detail {

struct Discretization {
  std::vector<double> h, c, w, pot;  // cell widths, edge conductances, node weights, R b rho^2/8
};

inline Discretization discretize(const ConformalProblem& P) {
  const std::size_t n = P.size();
  require(n >= 3, ErrorKind::InvalidInput, "conformal problem needs at least 3 nodes");
  Discretization d;
  d.h.resize(n - 1);
  d.c.resize(n - 1);
  d.w.assign(n, 0.0);
  d.pot.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d.h[i] = P.x[i + 1] - P.x[i];
    require(d.h[i] > 0, ErrorKind::InvalidInput, "conformal nodes must increase");
    d.c[i] = 0.5 * (P.rho[i] * P.rho[i] / P.b[i] + P.rho[i + 1] * P.rho[i + 1] / P.b[i + 1]);
    d.w[i] += 0.5 * d.h[i];
    d.w[i + 1] += 0.5 * d.h[i];
  }
  for (std::size_t i = 0; i < n; ++i) d.pot[i] = P.Rbar[i] * P.b[i] * P.rho[i] * P.rho[i] / 8.0;
  return d;
}

/// Boundary part of Q per unit (1+v0)^2 when the boundary area in the
/// conformal metric is u0^4 A: sqrt(pi) sqrt(A) / 2 - Hbar A / 8.
inline double boundary_coefficient(const ConformalProblem& P) {
  return 0.5 * std::sqrt(pi) * std::sqrt(P.area) - P.Hbar * P.area / 8.0;
}

}  // namespace detail

/// Discrete Dirichlet energy int |grad v|^2 including the exterior tail.
inline double dirichlet_energy(const ConformalProblem& P, const std::vector<double>& v) {
  const auto d = detail::discretize(P);
  double s = 0;
  for (std::size_t i = 0; i + 1 < P.size(); ++i) {
    const double dv = v[i + 1] - v[i];
    s += d.c[i] * dv * dv / d.h[i];
  }
  return 4.0 * pi * (s + P.outer_coupling * v.back() * v.back());
}

/// Q(v) = 1/2 int (|grad v|^2 + Rbar (1+v)^2 / 8) + sqrt(pi)/2 (int_bdry (1+v)^4)^{1/2}
///        - 1/8 int_bdry Hbar (1+v)^2, trapezoidal in r.
inline double q_functional(const ConformalProblem& P, const std::vector<double>& v) {
  require(v.size() == P.size(), ErrorKind::InvalidInput, "q_functional: profile size mismatch");
  const auto d = detail::discretize(P);
  double pot = 0;
  for (std::size_t i = 0; i < P.size(); ++i) pot += d.w[i] * d.pot[i] * (1 + v[i]) * (1 + v[i]);
  const double u0 = 1.0 + v.front();
  return 0.5 * dirichlet_energy(P, v) + 0.5 * 4.0 * pi * pot +
         0.5 * std::sqrt(pi) * std::sqrt(P.area * u0 * u0 * u0 * u0) - P.Hbar * P.area * u0 * u0 / 8.0;
}

struct LowerBound {
  double lhs = 0, rhs = 0;
  double margin() const { return lhs - rhs; }
};

/// Q(v) against int (3/8 |grad v|^2 + pi (mu - |J|)(1+v)^2) + sqrt(pi)/2 (int (1+v)^4)^{1/2}
///                - 1/8 int_bdry (Hbar - q(Nbar)) (1+v)^2.
inline LowerBound q_lower_bound_check(const ConformalProblem& P, const std::vector<double>& v) {
  require(P.dec_margin.size() == P.size(), ErrorKind::InvalidInput,
          "lower bound check needs mu - |J| on the nodes");
  const auto d = detail::discretize(P);
  double matter = 0;
  for (std::size_t i = 0; i < P.size(); ++i)
    matter += d.w[i] * pi * P.dec_margin[i] * (1 + v[i]) * (1 + v[i]) * P.b[i] * P.rho[i] * P.rho[i];
  const double u0 = 1.0 + v.front();
  LowerBound lb;
  lb.lhs = q_functional(P, v);
  lb.rhs = 3.0 / 8.0 * dirichlet_energy(P, v) + 4.0 * pi * matter +
           0.5 * std::sqrt(pi) * std::sqrt(P.area) * u0 * u0 -
           (P.Hbar - P.q_N) * P.area * u0 * u0 / 8.0;
  return lb;
}

struct ConformalSolution {
  std::vector<double> r, u;
  double alpha = 0;           ///< lim r (u - 1), Richardson in 1/r
  double alpha_exterior = 0;  ///< from the exterior harmonic continuation
  double Q_value = 0;
  double flux = 0;            ///< lim int_{|x|=r} d_nu u = 4 pi lim rho^2 u'/b
  double dirichlet = 0;
  double min_u = 0;
  double fixed_point_change = 0;
};

namespace detail {

inline std::vector<double> solve_linear(const ConformalProblem& P, const Discretization& d,
                                        double boundary_coeff) {
  const std::size_t n = P.size();
  num::Tridiagonal m(n);
  std::vector<double> rhs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = d.w[i] * d.pot[i];
    if (i > 0) {
      const double k = d.c[i - 1] / d.h[i - 1];
      m.lower[i] = -k;
      diag += k;
    }
    if (i + 1 < n) {
      const double k = d.c[i] / d.h[i];
      m.upper[i] = -k;
      diag += k;
    }
    m.diag[i] = diag;
  }
  m.diag[0] += boundary_coeff / (4.0 * pi);
  m.diag[n - 1] += P.outer_coupling;
  rhs[n - 1] = P.outer_coupling;
  return num::solve(m, rhs);
}

}  // namespace detail

/// Solves (rho^2 u'/b)' = Rbar u b rho^2 / 8 on [r_T, r_max] with
///   u'/b + Hbar u / 4 = sqrt(pi / A) u at r_T,
///   rho^2 u'/b = -outer_coupling (u - 1) at r_max,
/// as the Euler-Lagrange system of the discrete Q.
inline ConformalSolution solve_conformal_bvp(const ConformalProblem& P) {
  const auto d = detail::discretize(P);
  const double B = 2.0 * detail::boundary_coefficient(P);
  std::vector<double> u = detail::solve_linear(P, d, B);

  ConformalSolution s;
  // Confirmation pass with the boundary area measured in u^4 gbar: the
  // boundary term sqrt(pi / A_hat) u^3 linearizes to sqrt(pi / A) u exactly
  // because u is constant on the sphere.
  {
    const double u0 = u.front();
    const double A_hat = u0 * u0 * u0 * u0 * P.area;
    const double coeff = std::sqrt(pi / A_hat) * u0 * u0;
    const double B2 = coeff * P.area - P.Hbar * P.area / 4.0;
    const auto u2 = detail::solve_linear(P, d, B2);
    for (std::size_t i = 0; i < u.size(); ++i)
      s.fixed_point_change = std::max(s.fixed_point_change, std::abs(u2[i] - u[i]));
  }
  for (double v : u) require(std::isfinite(v), ErrorKind::SolveFailure, "non-finite conformal factor");
  s.min_u = *std::min_element(u.begin(), u.end());
  require(s.min_u > 0, ErrorKind::NonPositive, "conformal factor is not positive");

  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] - 1.0;
  s.r.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) s.r[i] = P.r(i);
  s.u = u;
  s.Q_value = q_functional(P, v);
  s.dirichlet = dirichlet_energy(P, v);
  s.alpha_exterior = P.outer_coupling * v.back();
  s.flux = -4.0 * pi * P.outer_coupling * v.back();
  std::vector<double> t, y;
  std::size_t last = u.size();
  for (int j = 0; j < 4; ++j) {
    const double target = s.r.back() / std::pow(2.0, j);
    std::size_t best = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (std::abs(s.r[i] - target) < std::abs(s.r[best] - target)) best = i;
    if (best == last) continue;
    last = best;
    t.push_back(1.0 / s.r[best]);
    y.push_back(s.r[best] * v[best]);
  }
  s.alpha = num::extrapolate_to_zero(t, y);
  return s;
}

inline std::vector<double> perturbation_of(const ConformalSolution& s) {
  std::vector<double> v(s.u.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.u[i] - 1.0;
  return v;
}

/// sigma_T = int |grad v|^2 / (2 (1 - C/T) sqrt(pi/A) int_bdry v^2).
inline double sigma_T(const ConformalProblem& P, const ConformalSolution& s, double T, double C) {
  require(T > C, ErrorKind::PreconditionViolation, "sigma_T requires T > C");
  const double v0 = s.u.front() - 1.0;
  require(v0 != 0.0, ErrorKind::DegenerateDenominator, "v_T vanishes on the boundary");
  return s.dirichlet / (2.0 * (1.0 - C / T) * std::sqrt(pi / P.area) * P.area * v0 * v0);
}

/// Right-hand side of the per-height energy bound.
inline double bound_rhs(double sigma, double area, double T, double C) {
  return sigma * (1.0 - C / T) / (2.0 * (1.0 + sigma)) * std::sqrt(area / pi);
}

/// Inverse-square integral int_{x_from}^{x_N} b/rho^2 dr plus the exterior tail.
inline double capacity_integral(const std::vector<double>& x, double origin,
                                const std::vector<double>& b, const std::vector<double>& rho) {
  std::vector<double> g(x.size()), r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    g[i] = b[i] / (rho[i] * rho[i]);
    r[i] = origin + x[i];
  }
  return num::trapezoid(x, g) + exterior_integral(r, b, rho);
}

struct CapacityEntry {
  double eps = 0;          ///< distance from the horizon where the competitor starts
  double Ibar = 0;         ///< int_{r_h+eps}^inf b/rho^2
  double capacity = 0;     ///< 4 pi / Ibar
  double sigma = 0;        ///< capacity / sqrt(4 pi A_h)
  double cylinder_length = 0;  ///< int_{r_h+eps}^{r_max} b dr
};

/// Radial capacity of the Jang surface relative to the horizon, truncated at
/// r_h + eps. On the blown-up surface Ibar(eps) diverges as eps -> 0.
inline std::vector<CapacityEntry> capacity_sigma(const JangSolution& sol,
                                                 const std::vector<double>& eps) {
  std::vector<CapacityEntry> out;
  const auto& g = sol.data.grid.offsets();
  for (double e : eps) {
    const double xs = sol.horizon.offset + e;
    if (xs <= sol.start_x) continue;
    const auto p = sol.at(xs);
    std::vector<double> x{xs}, b{p.b}, rho{p.profile.rho};
    for (std::size_t k = 0; k < sol.nodes.size(); ++k) {
      if (g[sol.first + k] <= xs) continue;
      x.push_back(g[sol.first + k]);
      b.push_back(sol.nodes[k].b);
      rho.push_back(sol.nodes[k].profile.rho);
    }
    CapacityEntry c;
    c.eps = e;
    c.Ibar = capacity_integral(x, sol.data.grid.origin(), b, rho);
    c.capacity = 4.0 * pi / c.Ibar;
    c.sigma = c.capacity / std::sqrt(4.0 * pi * sol.horizon.area);
    c.cylinder_length = num::trapezoid(x, b);
    out.push_back(c);
  }
  return out;
}

/// Default eps sequence r_h * 10^{-2k}, k = 1..9, kept above the solution start.
inline std::vector<double> default_capacity_eps(const JangSolution& sol) {
  std::vector<double> eps;
  for (int k = 1; k <= 9; ++k) {
    const double e = sol.horizon.r_h * std::pow(10.0, -2.0 * k);
    if (sol.horizon.offset + e > sol.start_x) eps.push_back(e);
  }
  return eps;
}

/// Capacity-form sigma on the undeformed data (b = a).
inline CapacityEntry background_capacity_sigma(const SphericalInitialData& data,
                                               const HorizonRecord& h) {
  const auto& g = data.grid.offsets();
  const auto p0 = data.evaluate(h.offset);
  std::vector<double> x{h.offset}, b{p0.a}, rho{p0.rho};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] <= h.offset) continue;
    x.push_back(g[i]);
    b.push_back(data.samples[i].a);
    rho.push_back(data.samples[i].rho);
  }
  CapacityEntry c;
  c.Ibar = capacity_integral(x, data.grid.origin(), b, rho);
  c.capacity = 4.0 * pi / c.Ibar;
  c.sigma = c.capacity / std::sqrt(4.0 * pi * h.area);
  c.cylinder_length = num::trapezoid(x, b);
  return c;
}

/// Steklov-type sigma for time-symmetric data: 4 sqrt(pi / A) / int_{r_h}^inf a/rho^2.
inline double herzlich_sigma(const SphericalInitialData& data, const HorizonRecord& h,
                             double tol_minimal = 1e-8) {
  require(data.time_symmetric(), ErrorKind::PreconditionViolation,
          "Herzlich sigma requires k = 0");
  const auto e = null_expansions(data.evaluate(h.offset));
  require(std::abs(e.plus) <= tol_minimal * std::max(1.0, 1.0 / h.r_h), ErrorKind::PreconditionViolation,
          "boundary is not a minimal surface");
  const auto c = background_capacity_sigma(data, h);
  return 4.0 * std::sqrt(pi / h.area) / c.Ibar;
}

inline double herzlich_bound(double sigma, double area) {
  return sigma / (2.0 * (1.0 + sigma)) * std::sqrt(area / pi);
}

}  // namespace penrose
