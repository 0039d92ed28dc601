#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <utility>

#include "penrose/errors.hpp"

namespace penrose::num {

/// Dormand-Prince 5(4) embedded Runge-Kutta with adaptive step control.
///
/// The error norm is max_i |err_i| / (atol + rtol * max(|y_i|, |y_new_i|)),
/// so a component that starts tiny (the horizon gap) is controlled
/// relatively rather than swamped by an absolute floor.
template <std::size_t M>
class DormandPrince {
 public:
  using State = std::array<double, M>;
  using Rhs = std::function<State(double, const State&)>;
  /// Relative tolerance as a function of the independent variable.
  using Tolerance = std::function<double(double)>;

  struct Options {
    Tolerance rtol = [](double) { return 1e-10; };
    double atol = 1e-300;
    std::size_t max_steps = 1'000'000;
  };

  DormandPrince(Rhs rhs, Options opt) : rhs_(std::move(rhs)), opt_(std::move(opt)) {}

  /// Advances y from x0 to x1. `step` is an in/out step-size hint.
  State advance(double x0, double x1, State y, double& step) {
    if (x1 == x0) return y;
    require(x1 > x0, ErrorKind::InvalidInput, "DormandPrince integrates forward only");
    const double span = x1 - x0;
    double h = step > 0 ? std::min(step, span) : span;
    double x = x0;
    std::size_t steps = 0;
    while (x < x1) {
      require(++steps < opt_.max_steps, ErrorKind::SolveFailure, "ODE step budget exhausted");
      const bool last = x + h >= x1;
      if (last) h = x1 - x;
      State y_new, err;
      attempt(x, y, h, y_new, err);
      const double tol = opt_.rtol(x + h);
      double norm = 0.0;
      for (std::size_t i = 0; i < M; ++i) {
        const double scale = opt_.atol + tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        norm = std::max(norm, std::abs(err[i]) / scale);
      }
      require(std::isfinite(norm), ErrorKind::SolveFailure, "ODE produced non-finite state");
      if (norm <= 1.0) {
        x = last ? x1 : x + h;
        y = y_new;
        ++accepted_;
        const double grow = norm > 0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
        if (!last) h *= std::clamp(grow, 0.2, 5.0);
        else step = h * std::clamp(grow, 0.2, 5.0);
      } else {
        ++rejected_;
        h *= std::clamp(0.9 * std::pow(norm, -0.25), 0.1, 0.9);
        require(h > 0 && h > std::abs(x) * 1e-14, ErrorKind::SolveFailure,
                "ODE step size underflow");
      }
    }
    return y;
  }

  std::size_t accepted() const { return accepted_; }
  std::size_t rejected() const { return rejected_; }

 private:
  void attempt(double x, const State& y, double h, State& y_new, State& err) const {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    auto combo = [&](std::initializer_list<std::pair<double, const State*>> terms) {
      State out = y;
      for (const auto& [w, k] : terms)
        for (std::size_t i = 0; i < M; ++i) out[i] += h * w * (*k)[i];
      return out;
    };
    const State k1 = rhs_(x, y);
    const State k2 = rhs_(x + c2 * h, combo({{a21, &k1}}));
    const State k3 = rhs_(x + c3 * h, combo({{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs_(x + c4 * h, combo({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs_(x + c5 * h, combo({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 =
        rhs_(x + h, combo({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    y_new = combo({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = rhs_(x + h, y_new);
    for (std::size_t i = 0; i < M; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
  }

  Rhs rhs_;
  Options opt_;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
};

}  // namespace penrose::num
