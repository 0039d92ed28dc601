#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace penrose::num {

/// Truncated Taylor expansion about a point: c[k] = f^(k)(x0) / k!.
///
/// Used to get exact derivatives of closed-form profiles without
/// hand-differentiating every scenario builder.
template <std::size_t N>
struct Taylor {
  std::array<double, N + 1> c{};

  static constexpr Taylor constant(double v) {
    Taylor t;
    t.c[0] = v;
    return t;
  }
  static constexpr Taylor variable(double x0) {
    Taylor t;
    t.c[0] = x0;
    if constexpr (N >= 1) t.c[1] = 1.0;
    return t;
  }

  constexpr double value() const { return c[0]; }

  /// k-th derivative at the expansion point.
  constexpr double deriv(std::size_t k) const {
    double fact = 1.0;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return c[k] * fact;
  }

  /// Expansion of f' (one order lower).
  constexpr Taylor<N - 1> derivative() const requires(N >= 1) {
    Taylor<N - 1> d;
    for (std::size_t k = 0; k < N; ++k) d.c[k] = c[k + 1] * static_cast<double>(k + 1);
    return d;
  }

  template <std::size_t M>
  constexpr Taylor<M> truncate() const requires(M <= N) {
    Taylor<M> t;
    for (std::size_t k = 0; k <= M; ++k) t.c[k] = c[k];
    return t;
  }

  constexpr Taylor operator-() const {
    Taylor t;
    for (std::size_t k = 0; k <= N; ++k) t.c[k] = -c[k];
    return t;
  }
  constexpr Taylor& operator+=(const Taylor& o) {
    for (std::size_t k = 0; k <= N; ++k) c[k] += o.c[k];
    return *this;
  }
  constexpr Taylor& operator-=(const Taylor& o) {
    for (std::size_t k = 0; k <= N; ++k) c[k] -= o.c[k];
    return *this;
  }
  constexpr Taylor& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
};

template <std::size_t N>
constexpr Taylor<N> operator+(Taylor<N> a, const Taylor<N>& b) { return a += b; }
template <std::size_t N>
constexpr Taylor<N> operator-(Taylor<N> a, const Taylor<N>& b) { return a -= b; }
template <std::size_t N>
constexpr Taylor<N> operator+(Taylor<N> a, double s) { a.c[0] += s; return a; }
template <std::size_t N>
constexpr Taylor<N> operator+(double s, Taylor<N> a) { a.c[0] += s; return a; }
template <std::size_t N>
constexpr Taylor<N> operator-(Taylor<N> a, double s) { a.c[0] -= s; return a; }
template <std::size_t N>
constexpr Taylor<N> operator-(double s, const Taylor<N>& a) { return -a + s; }
template <std::size_t N>
constexpr Taylor<N> operator*(Taylor<N> a, double s) { return a *= s; }
template <std::size_t N>
constexpr Taylor<N> operator*(double s, Taylor<N> a) { return a *= s; }

template <std::size_t N>
constexpr Taylor<N> operator*(const Taylor<N>& a, const Taylor<N>& b) {
  Taylor<N> r;
  for (std::size_t k = 0; k <= N; ++k)
    for (std::size_t i = 0; i <= k; ++i) r.c[k] += a.c[i] * b.c[k - i];
  return r;
}

template <std::size_t N>
constexpr Taylor<N> operator/(const Taylor<N>& a, const Taylor<N>& b) {
  Taylor<N> q;
  for (std::size_t k = 0; k <= N; ++k) {
    double s = a.c[k];
    for (std::size_t i = 1; i <= k; ++i) s -= b.c[i] * q.c[k - i];
    q.c[k] = s / b.c[0];
  }
  return q;
}
template <std::size_t N>
constexpr Taylor<N> operator/(const Taylor<N>& a, double s) { return a * (1.0 / s); }
template <std::size_t N>
constexpr Taylor<N> operator/(double s, const Taylor<N>& b) { return Taylor<N>::constant(s) / b; }

template <std::size_t N>
Taylor<N> exp(const Taylor<N>& a) {
  Taylor<N> r;
  r.c[0] = std::exp(a.c[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += static_cast<double>(i) * a.c[i] * r.c[k - i];
    r.c[k] = s / static_cast<double>(k);
  }
  return r;
}

/// a^p for real p; requires a.value() > 0 unless p is a non-negative integer path.
template <std::size_t N>
Taylor<N> pow(const Taylor<N>& a, double p) {
  Taylor<N> r;
  r.c[0] = std::pow(a.c[0], p);
  for (std::size_t k = 1; k <= N; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i)
      s += (p * static_cast<double>(i) - static_cast<double>(k - i)) * a.c[i] * r.c[k - i];
    r.c[k] = s / (static_cast<double>(k) * a.c[0]);
  }
  return r;
}

template <std::size_t N>
Taylor<N> sqrt(const Taylor<N>& a) { return pow(a, 0.5); }

/// Integer power by repeated multiplication (valid when a.value() == 0).
template <std::size_t N>
constexpr Taylor<N> ipow(const Taylor<N>& a, unsigned n) {
  Taylor<N> r = Taylor<N>::constant(1.0);
  for (unsigned i = 0; i < n; ++i) r = r * a;
  return r;
}

/// Evaluates sum_k coeffs[k] * x^k by Horner's rule.
template <std::size_t N, std::size_t K>
constexpr Taylor<N> polyval(const std::array<double, K>& coeffs, const Taylor<N>& x) {
  Taylor<N> r = Taylor<N>::constant(0.0);
  for (std::size_t k = K; k-- > 0;) r = r * x + coeffs[k];
  return r;
}

}  // namespace penrose::num
