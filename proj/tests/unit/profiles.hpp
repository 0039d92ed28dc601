#pragma once

#include <cmath>

#include "penrose/initial_data.hpp"

/// Closed-form test profiles with analytic derivatives, shared by the
/// oracle comparisons.
namespace testprof {

/// Non-flat, non-vacuum profile: a = 1 + 0.2 sin r, rho = r (1 + 0.1 cos r).
inline double a(double r) { return 1 + 0.2 * std::sin(r); }
inline double rho(double r) { return r * (1 + 0.1 * std::cos(r)); }

/// Gaussian bumps for kr and kt centred at r = 3.
inline double kr(double r) { return 0.3 * std::exp(-(r - 3) * (r - 3)); }
inline double kt(double r) { return -0.2 * std::exp(-(r - 3.5) * (r - 3.5)); }

inline penrose::ProfileSample wavy(double r) {
  penrose::ProfileSample p;
  p.r = r;
  p.a = a(r);
  p.da = 0.2 * std::cos(r);
  p.d2a = -0.2 * std::sin(r);
  p.rho = rho(r);
  p.drho = 1 + 0.1 * std::cos(r) - 0.1 * r * std::sin(r);
  p.d2rho = -0.2 * std::sin(r) - 0.1 * r * std::cos(r);
  p.kr = kr(r);
  p.dkr = -2 * (r - 3) * kr(r);
  p.kt = kt(r);
  p.dkt = -2 * (r - 3.5) * kt(r);
  return p;
}

}  // namespace testprof
