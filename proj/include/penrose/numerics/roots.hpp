#pragma once

#include <cmath>
#include <cstddef>

#include "penrose/errors.hpp"

namespace penrose::num {

/// Bisection on [lo, hi] where fn(lo) <= 0 < fn(hi). Returns the limit of the
/// bracket, which is the supremum of {fn <= 0} when fn > 0 to the right of
/// every root in the bracket.
template <class Fn>
double bisect_last_nonpositive(Fn&& fn, double lo, double hi, double tol,
                               std::size_t max_iter = 400) {
  require(lo <= hi, ErrorKind::InvalidInput, "bisect: inverted bracket");
  for (std::size_t it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (fn(mid) <= 0.0) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace penrose::num
