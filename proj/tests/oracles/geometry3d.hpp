#pragma once

// Brute-force 3D Cartesian oracles for spherically symmetric data. Every
// quantity is rebuilt from the full metric g_ij(x) and k_ij(x) by nested
// central differences, with no use of the radial reduction.

#include <array>
#include <cmath>
#include <functional>

namespace oracle {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using TensorField = std::function<Mat3(const Vec3&)>;
using ScalarField = std::function<double(const Vec3&)>;
using Radial = std::function<double(double)>;

inline Mat3 inverse(const Mat3& m) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  Mat3 inv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      inv[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / det;
    }
  return inv;
}

inline double norm(const Vec3& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

inline Vec3 shifted(Vec3 x, int k, double h) {
  x[k] += h;
  return x;
}

/// g = a(r)^2 dr^2 + rho(r)^2 dOmega^2 in Cartesian components.
inline TensorField spherical_metric(Radial a, Radial rho) {
  return [a, rho](const Vec3& x) {
    const double r = norm(x);
    const double A = a(r), P = rho(r) / r;
    Mat3 g{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double nn = x[i] * x[j] / (r * r);
        g[i][j] = P * P * ((i == j ? 1.0 : 0.0) - nn) + A * A * nn;
      }
    return g;
  };
}

/// k with mixed eigenvalues kr (radial) and kt (tangential) relative to g.
inline TensorField spherical_k(Radial a, Radial rho, Radial kr, Radial kt) {
  const auto g = spherical_metric(a, rho);
  return [g, a, kr, kt](const Vec3& x) {
    const double r = norm(x);
    const Mat3 gm = g(x);
    const double A = a(r), KR = kr(r), KT = kt(r);
    Mat3 k{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) k[i][j] = KT * gm[i][j] + (KR - KT) * A * A * x[i] * x[j] / (r * r);
    return k;
  };
}

/// d_k g_ij by central differences.
inline std::array<Mat3, 3> gradient(const TensorField& t, const Vec3& x, double h) {
  std::array<Mat3, 3> d{};
  for (int k = 0; k < 3; ++k) {
    const Mat3 p = t(shifted(x, k, h)), m = t(shifted(x, k, -h));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d[k][i][j] = (p[i][j] - m[i][j]) / (2 * h);
  }
  return d;
}

/// Gamma^l_ij, indexed [l][i][j].
inline std::array<Mat3, 3> christoffel(const TensorField& g, const Vec3& x, double h) {
  const Mat3 gi = inverse(g(x));
  const auto dg = gradient(g, x, h);
  std::array<Mat3, 3> G{};
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int m = 0; m < 3; ++m) s += gi[l][m] * (dg[i][m][j] + dg[j][m][i] - dg[m][i][j]);
        G[l][i][j] = 0.5 * s;
      }
  return G;
}

/// R = g^ij (d_k G^k_ij - d_j G^k_ik + G^k_kl G^l_ij - G^k_jl G^l_ik).
inline double scalar_curvature(const TensorField& g, const Vec3& x, double h) {
  const Mat3 gi = inverse(g(x));
  const auto G = christoffel(g, x, h);
  std::array<std::array<Mat3, 3>, 3> dG{};  // [k][l][i][j] = d_k G^l_ij
  for (int k = 0; k < 3; ++k) {
    const auto p = christoffel(g, shifted(x, k, h), h);
    const auto m = christoffel(g, shifted(x, k, -h), h);
    for (int l = 0; l < 3; ++l)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) dG[k][l][i][j] = (p[l][i][j] - m[l][i][j]) / (2 * h);
  }
  double R = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double ric = 0;
      for (int k = 0; k < 3; ++k) {
        ric += dG[k][k][i][j] - dG[j][k][i][k];
        for (int l = 0; l < 3; ++l) ric += G[k][k][l] * G[l][i][j] - G[k][j][l] * G[l][i][k];
      }
      R += gi[i][j] * ric;
    }
  return R;
}

/// 8 pi J_i = div(k - (tr k) g)_i.
inline Vec3 momentum_density(const TensorField& g, const TensorField& k, const Vec3& x, double h) {
  auto P = [&](const Vec3& y) {
    const Mat3 gm = g(y), km = k(y), gi = inverse(gm);
    double tr = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) tr += gi[i][j] * km[i][j];
    Mat3 p;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p[i][j] = km[i][j] - tr * gm[i][j];
    return p;
  };
  const Mat3 gi = inverse(g(x)), p0 = P(x);
  const auto dP = gradient(P, x, h);
  const auto G = christoffel(g, x, h);
  Vec3 out{};
  for (int i = 0; i < 3; ++i) {
    double s = 0;
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) {
        double cov = dP[l][i][j];
        for (int m = 0; m < 3; ++m) cov -= G[m][l][i] * p0[m][j] + G[m][l][j] * p0[i][m];
        s += gi[j][l] * cov;
      }
    out[i] = s / (8 * M_PI);
  }
  return out;
}

/// Jang operator (g^ij - f^i f^j / (1+|df|^2)) (Hess_ij f / sqrt(1+|df|^2) - k_ij).
inline double jang_operator(const TensorField& g, const TensorField& k, const ScalarField& f,
                            const Vec3& x, double h) {
  const Mat3 gi = inverse(g(x)), km = k(x);
  const auto G = christoffel(g, x, h);
  Vec3 df{};
  Mat3 d2f{};
  const double f0 = f(x);
  for (int i = 0; i < 3; ++i) {
    df[i] = (f(shifted(x, i, h)) - f(shifted(x, i, -h))) / (2 * h);
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        d2f[i][i] = (f(shifted(x, i, h)) - 2 * f0 + f(shifted(x, i, -h))) / (h * h);
      } else {
        const Vec3 pp = shifted(shifted(x, i, h), j, h), pm = shifted(shifted(x, i, h), j, -h);
        const Vec3 mp = shifted(shifted(x, i, -h), j, h), mm = shifted(shifted(x, i, -h), j, -h);
        d2f[i][j] = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
      }
    }
  }
  Vec3 up{};
  double grad2 = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) up[i] += gi[i][j] * df[j];
    grad2 += up[i] * df[i];
  }
  const double nu = 1 + grad2, sq = std::sqrt(nu);
  double out = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double hess = d2f[i][j];
      for (int l = 0; l < 3; ++l) hess -= G[l][i][j] * df[l];
      out += (gi[i][j] - up[i] * up[j] / nu) * (hess / sq - km[i][j]);
    }
  return out;
}

}  // namespace oracle
