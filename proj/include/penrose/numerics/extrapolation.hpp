#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "penrose/errors.hpp"

namespace penrose::num {

/// Value at t = 0 of the interpolating polynomial through (t[i], y[i])
/// (Neville's scheme). Richardson extrapolation in t = 1/r or t = h^p.
inline double extrapolate_to_zero(std::span<const double> t, std::span<const double> y) {
  require(!t.empty() && t.size() == y.size(), ErrorKind::InvalidInput,
          "extrapolate_to_zero: bad sample sizes");
  std::vector<double> p(y.begin(), y.end());
  const std::size_t n = t.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      p[i] = (t[i + level] * p[i] - t[i] * p[i + 1]) / (t[i + level] - t[i]);
  return p[0];
}

/// Observed convergence order from errors e_k at resolutions h_k, h_k/2, ...
/// Least-squares slope of log2(e) against refinement level. Returns nullopt
/// when any error is at rounding level (order undefined).
inline std::optional<double> fit_order(std::span<const double> errors, double floor) {
  if (errors.size() < 2) return std::nullopt;
  for (double e : errors)
    if (!(std::abs(e) > floor)) return std::nullopt;
  const std::size_t n = errors.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k);
    const double y = std::log2(std::abs(errors[k]));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

/// Convergence order from a sequence of values Q_h, Q_{h/2}, Q_{h/4}, ...
/// using successive differences.
inline std::optional<double> fit_order_from_values(std::span<const double> values, double floor) {
  if (values.size() < 3) return std::nullopt;
  std::vector<double> diffs;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) diffs.push_back(values[k] - values[k + 1]);
  return fit_order(diffs, floor);
}

}  // namespace penrose::num
