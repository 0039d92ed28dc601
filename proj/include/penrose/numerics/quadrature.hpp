#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "penrose/errors.hpp"
#include "penrose/numerics/extrapolation.hpp"

namespace penrose::num {

/// Composite trapezoid rule on nonuniform nodes.
inline double trapezoid(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::InvalidInput, "trapezoid: sizes");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  return s;
}

/// Running trapezoid integral from the first node: out[i] = int_{x0}^{x_i} y.
inline std::vector<double> cumulative_trapezoid(std::span<const double> x,
                                                std::span<const double> y) {
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return out;
}

/// int_R^inf g(r) dr for g ~ r^-2 (c0 + c1/r + c2/r^2 + ...): the expansion
/// coefficients of r^2 g are fitted through the supplied far-field samples
/// (radii r_k, values g_k) and integrated term by term.
inline double inverse_square_tail(std::span<const double> radii, std::span<const double> g,
                                  double R) {
  const std::size_t n = radii.size();
  require(n >= 1 && n == g.size(), ErrorKind::InvalidInput, "inverse_square_tail: sizes");
  // Solve the Vandermonde system in t = 1/r for the coefficients of r^2 g.
  std::vector<double> t(n), y(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = 1.0 / radii[k];
    y[k] = radii[k] * radii[k] * g[k];
  }
  // Newton divided differences, then convert to monomial coefficients.
  std::vector<double> dd(y);
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (t[i] - t[i - level]);
  std::vector<double> coeff(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    // coeff <- coeff * (t - t_i) + dd_i
    for (std::size_t k = n - 1; k >= 1; --k) coeff[k] = coeff[k - 1] - t[i] * coeff[k];
    coeff[0] = -t[i] * coeff[0] + dd[i];
  }
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    s += coeff[k] / (static_cast<double>(k + 1) * std::pow(R, static_cast<double>(k + 1)));
  return s;
}

}  // namespace penrose::num
