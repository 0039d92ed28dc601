#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "penrose/errors.hpp"

namespace penrose::num {

/// Tridiagonal system: lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
struct Tridiagonal {
  std::vector<double> lower, diag, upper;

  explicit Tridiagonal(std::size_t n) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
  std::size_t size() const { return diag.size(); }
};

/// Thomas algorithm; throws SolveFailure on a vanishing pivot.
inline std::vector<double> solve(const Tridiagonal& m, std::vector<double> rhs) {
  const std::size_t n = m.size();
  require(rhs.size() == n && n > 0, ErrorKind::InvalidInput, "tridiagonal: size mismatch");
  std::vector<double> c(n, 0.0);
  double pivot = m.diag[0];
  require(pivot != 0.0 && std::isfinite(pivot), ErrorKind::SolveFailure, "singular pivot");
  c[0] = m.upper[0] / pivot;
  rhs[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = m.diag[i] - m.lower[i] * c[i - 1];
    require(std::abs(pivot) > 1e-300 && std::isfinite(pivot), ErrorKind::SolveFailure,
            "singular pivot");
    c[i] = m.upper[i] / pivot;
    rhs[i] = (rhs[i] - m.lower[i] * rhs[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
  return rhs;
}

}  // namespace penrose::num
