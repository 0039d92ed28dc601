#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "penrose/errors.hpp"

namespace penrose::num {

/// Fornberg's recursion: weights w[k][j] such that
/// f^(k)(x0) ~= sum_j w[k][j] f(x[j]) for k = 0..max_order.
inline std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> x,
                                                         std::size_t max_order) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = x[0] - x0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

/// Derivative of order `order` of samples y on nodes x, using a stencil of
/// `width` points centred where possible and one-sided at the ends.
/// width = 3 gives second-order first derivatives; width = 5 fourth order.
inline std::vector<double> differentiate(std::span<const double> x, std::span<const double> y,
                                         std::size_t order = 1, std::size_t width = 3) {
  const std::size_t n = x.size();
  require(n == y.size(), ErrorKind::InvalidInput, "differentiate: size mismatch");
  require(n >= width && width > order, ErrorKind::InvalidInput, "differentiate: too few nodes");
  std::vector<double> d(n);
  const std::size_t half = width / 2;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= half ? i - half : 0;
    lo = std::min(lo, n - width);
    const auto w = fornberg_weights(x[i], x.subspan(lo, width), order);
    double s = 0.0;
    for (std::size_t j = 0; j < width; ++j) s += w[order][j] * y[lo + j];
    d[i] = s;
  }
  return d;
}

}  // namespace penrose::num
