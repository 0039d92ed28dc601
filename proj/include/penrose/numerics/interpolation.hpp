#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <cstddef>
#include <span>
#include <vector>

#include "penrose/errors.hpp"

namespace penrose::num {

/// Index i with x[i] <= t <= x[i+1], clamped to the valid cell range.
inline std::size_t locate_cell(std::span<const double> x, double t) {
  if (t <= x.front()) return 0;
  if (t >= x.back()) return x.size() - 2;
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  return static_cast<std::size_t>(it - x.begin()) - 1;
}

/// Piecewise Hermite interpolant. With first derivatives only it is cubic
/// (C1); with second derivatives as well it is quintic (C2).
/// eval() returns {f, f', f''} at t.
class HermiteInterpolant {
 public:
  HermiteInterpolant() = default;
  HermiteInterpolant(std::vector<double> x, std::vector<double> y, std::vector<double> dy,
                     std::vector<double> d2y = {})
      : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)), d2y_(std::move(d2y)) {
    require(x_.size() >= 2 && y_.size() == x_.size() && dy_.size() == x_.size(),
            ErrorKind::InvalidInput, "HermiteInterpolant: inconsistent sample sizes");
    require(d2y_.empty() || d2y_.size() == x_.size(), ErrorKind::InvalidInput,
            "HermiteInterpolant: second-derivative size mismatch");
  }

  bool empty() const { return x_.empty(); }

  std::array<double, 3> eval(double t) const {
    const std::size_t i = locate_cell(x_, t);
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    return d2y_.empty() ? cubic(i, h, s) : quintic(i, h, s);
  }

  double operator()(double t) const { return eval(t)[0]; }

 private:
  // Both forms are written as the Taylor polynomial at the left node plus
  // corrections driven by the mismatch at the right node. A value mismatch at
  // rounding level is replaced by the one implied by the derivative data
  // (corrected trapezoid rule): in very short cells it is pure cancellation
  // noise that the 1/h scaling would amplify into the derivatives.
  static double resolved(double mismatch, double implied, double p0, double p1) {
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(p0) + std::abs(p1));
    return std::abs(mismatch) <= noise ? implied : mismatch;
  }

  std::array<double, 3> cubic(std::size_t i, double h, double s) const {
    const double p0 = y_[i], m0 = dy_[i] * h;
    const double R1 = dy_[i + 1] * h - m0;
    const double R0 = resolved(y_[i + 1] - p0 - m0, 0.5 * R1, p0, y_[i + 1]);
    const double c2 = 3 * R0 - R1, c3 = R1 - 2 * R0;
    const double v = p0 + s * (m0 + s * (c2 + s * c3));
    const double d = m0 + s * (2 * c2 + 3 * s * c3);
    const double dd = 2 * c2 + 6 * s * c3;
    return {v, d / h, dd / (h * h)};
  }

  std::array<double, 3> quintic(std::size_t i, double h, double s) const {
    const double p0 = y_[i], m0 = dy_[i] * h, a0 = d2y_[i] * h * h;
    const double R1 = dy_[i + 1] * h - (m0 + a0);
    const double R2 = d2y_[i + 1] * h * h - a0;
    const double R0 = resolved(y_[i + 1] - (p0 + m0 + 0.5 * a0), 0.5 * R1 - R2 / 12.0, p0, y_[i + 1]);
    const double c3 = 10 * R0 - 4 * R1 + 0.5 * R2;
    const double c4 = -15 * R0 + 7 * R1 - R2;
    const double c5 = 6 * R0 - 3 * R1 + 0.5 * R2;
    const double v = p0 + s * (m0 + s * (0.5 * a0 + s * (c3 + s * (c4 + s * c5))));
    const double d = m0 + s * (a0 + s * (3 * c3 + s * (4 * c4 + s * 5 * c5)));
    const double dd = a0 + s * (6 * c3 + s * (12 * c4 + s * 20 * c5));
    return {v, d / h, dd / (h * h)};
  }

  std::vector<double> x_, y_, dy_, d2y_;
};

/// Linear interpolation of y(x) at t.
inline double lerp_at(std::span<const double> x, std::span<const double> y, double t) {
  const std::size_t i = locate_cell(x, t);
  const double s = (t - x[i]) / (x[i + 1] - x[i]);
  return (1 - s) * y[i] + s * y[i + 1];
}

}  // namespace penrose::num
