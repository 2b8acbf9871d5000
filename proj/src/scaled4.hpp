// Internal helpers: complex numbers with a separate power-of-two exponent,
// 4x4 matrices of them, and an equilibrated partial-pivot solve.  The
// transfer cascade spans e^{+-2 |Im eta| a} per column family, far outside
// double range in the deep-evanescent tail, so every cascade quantity keeps
// its exponent explicit until the final bounded combination.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "obhgreen/errors.hpp"

namespace obh::green::detail {

using cdouble = std::complex<double>;

struct Sc {
  cdouble m{0.0, 0.0};  // mantissa, kept with max component in [0.5, 1)
  double e2 = 0.0;      // value = m * 2^e2 (e2 may be fractional)
};

inline Sc sc_make(cdouble v, double e2 = 0.0) {
  const double a = std::max(std::abs(v.real()), std::abs(v.imag()));
  if (a == 0.0) return {cdouble(0.0, 0.0), 0.0};
  int ex = 0;
  std::frexp(a, &ex);
  return {cdouble(std::ldexp(v.real(), -ex), std::ldexp(v.imag(), -ex)),
          e2 + ex};
}

inline Sc sc_mul(const Sc& a, const Sc& b) {
  return sc_make(a.m * b.m, a.e2 + b.e2);
}

inline Sc sc_div(const Sc& a, const Sc& b) {
  if (b.m == cdouble(0.0, 0.0))
    throw VanishingDenominator("scaled division by zero");
  return sc_make(a.m / b.m, a.e2 - b.e2);
}

inline Sc sc_add(const Sc& a, const Sc& b) {
  if (a.m == cdouble(0.0, 0.0)) return b;
  if (b.m == cdouble(0.0, 0.0)) return a;
  const double d = a.e2 - b.e2;
  if (d >= 0.0) {
    if (d > 1060.0) return a;
    return sc_make(a.m + b.m * std::exp2(-d), a.e2);
  }
  if (d < -1060.0) return b;
  return sc_make(b.m + a.m * std::exp2(d), b.e2);
}

// Multiply by exp(lambda) with complex lambda (natural log units).
inline Sc sc_mul_exp(const Sc& a, cdouble lambda) {
  constexpr double kLog2e = 1.4426950408889634074;  // 1/ln 2
  const cdouble phase = std::exp(cdouble(0.0, lambda.imag()));
  return sc_make(a.m * phase, a.e2 + lambda.real() * kLog2e);
}

inline double sc_log2_abs(const Sc& a) {
  if (a.m == cdouble(0.0, 0.0)) return -std::numeric_limits<double>::infinity();
  return a.e2 + std::log2(std::abs(a.m));
}

inline cdouble sc_to_cdouble(const Sc& a) {
  return a.m * std::exp2(a.e2);
}

inline cdouble sc_to_cdouble_checked(const Sc& a, const char* what) {
  if (a.m == cdouble(0.0, 0.0)) return {0.0, 0.0};
  if (a.e2 > 1020.0)
    throw DomainError(std::string(what) + ": value overflows double");
  return sc_to_cdouble(a);
}

using Mat4d = std::array<std::array<cdouble, 4>, 4>;
using ScMat4 = std::array<std::array<Sc, 4>, 4>;

inline ScMat4 sc_identity() {
  ScMat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = sc_make(cdouble(1.0, 0.0));
  return m;
}

inline ScMat4 sc_matmul(const ScMat4& a, const ScMat4& b) {
  ScMat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Sc acc{};
      for (int k = 0; k < 4; ++k) acc = sc_add(acc, sc_mul(a[i][k], b[k][j]));
      out[i][j] = acc;
    }
  return out;
}

// X = A^{-1} B by partial-pivot elimination with power-of-two column
// equilibration of A; cond_estimate receives ||A||_inf * ||A^{-1}||_inf of
// the equilibrated matrix.  Column scales of A are returned so callers can
// restore them: true X row i carries the factor 2^{-col_scale[i]}.
inline Mat4d solve4(Mat4d a, Mat4d b, std::array<int, 4>& col_scale,
                    double& cond_estimate) {
  for (int j = 0; j < 4; ++j) {
    double mx = 0.0;
    for (int i = 0; i < 4; ++i) mx = std::max(mx, std::abs(a[i][j]));
    if (mx == 0.0) throw IllConditioned("singular transmission matrix", 1e300);
    int ex = 0;
    std::frexp(mx, &ex);
    col_scale[j] = ex;
    for (int i = 0; i < 4; ++i) a[i][j] = cdouble(std::ldexp(a[i][j].real(), -ex),
                                                  std::ldexp(a[i][j].imag(), -ex));
  }
  double norm_a = 0.0;
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += std::abs(a[i][j]);
    norm_a = std::max(norm_a, s);
  }

  // Augment with the identity to extract A^{-1} for the condition estimate.
  std::array<std::array<cdouble, 8>, 4> rhs{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) rhs[i][j] = b[i][j];
    rhs[i][static_cast<size_t>(i) + 4] = 1.0;
  }

  for (int col = 0; col < 4; ++col) {
    int piv = col;
    double best = std::abs(a[col][col]);
    for (int i = col + 1; i < 4; ++i)
      if (std::abs(a[i][col]) > best) {
        best = std::abs(a[i][col]);
        piv = i;
      }
    if (best == 0.0) throw IllConditioned("singular transmission matrix", 1e300);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(rhs[piv], rhs[col]);
    }
    const cdouble inv = 1.0 / a[col][col];
    for (int i = 0; i < 4; ++i) {
      if (i == col) continue;
      const cdouble f = a[i][col] * inv;
      if (f == cdouble(0.0, 0.0)) continue;
      for (int j = col; j < 4; ++j) a[i][j] -= f * a[col][j];
      for (int j = 0; j < 8; ++j) rhs[i][j] -= f * rhs[col][j];
    }
    for (int j = col; j < 4; ++j) a[col][j] *= inv;
    for (int j = 0; j < 8; ++j) rhs[col][j] *= inv;
  }

  double norm_ainv = 0.0;
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int j = 4; j < 8; ++j) s += std::abs(rhs[i][j]);
    norm_ainv = std::max(norm_ainv, s);
  }
  cond_estimate = norm_a * norm_ainv;

  Mat4d x{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) x[i][j] = rhs[i][j];
  return x;
}

}  // namespace obh::green::detail
