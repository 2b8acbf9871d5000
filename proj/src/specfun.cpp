// Complex-argument cylindrical Bessel/Hankel evaluation.
//
// Everything is computed through the modified-Bessel pair (I, K) of
// w = -i z, which keeps each path free of catastrophic cancellation on the
// upper half plane:
//   J_n(z)     = i^n I_n(w),  I by backward (Miller) recurrence normalized
//                with  e^w = I_0 + 2 sum I_k;
//   H^(1)_n(z) = -(2i/pi) (-i)^n K_n(w),  K_0/K_1 by ascending series for
//                |w| <= 12 and by the asymptotic expansion beyond, then
//                forward recurrence (K is order-dominant, so this is stable).
// Arguments with Re z < 0 are mapped to the first quadrant with the
// reflection zeta = -conj(z).  Ladders are built in long double; the
// switchover radius (12) and Miller start order are frozen below and
// validated against an independent high-precision reference table.

#include "obhgreen/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace obh::specfun {
namespace {

using cld = std::complex<long double>;

constexpr long double kPi = 3.141592653589793238462643383279503L;
constexpr long double kEulerGamma = 0.577215664901532860606512090082402L;
constexpr double kSeriesRadius = 12.0;  // |w| switchover for K

int miller_start(int n_req, long double aw) {
  // Walk up from the turning point until the one-step backward ratio
  // a/(m + sqrt(m^2-a^2)) has decayed the minimal solution by e^-64.
  long double m = std::max<long double>(n_req, std::ceil(aw)) + 1.0L;
  long double decay = 0.0L;
  while (decay > -64.0L && m < 1.0e7L) {
    m += 1.0L;
    long double root = std::sqrt(std::max(0.0L, m * m - aw * aw));
    decay += std::log(aw / (m + root));
  }
  return static_cast<int>(m) + 2;
}

// I_k(w) e^{-Re w} for k = 0..nmax; requires Re w >= 0, w != 0.
// Runs in double below |w| = 580 (no overflow possible from a unit seed);
// falls back to long double above, where the downward growth e^{|w|} needs
// the wider exponent range.
std::vector<cld> scaled_i_ladder(int nmax, cld w) {
  const long double aw = std::abs(w);
  const int start = miller_start(nmax + 1, aw);
  std::vector<cld> raw(static_cast<size_t>(nmax) + 1);
  if (aw < 580.0L) {
    using cd = std::complex<double>;
    const cd wd(static_cast<double>(w.real()), static_cast<double>(w.imag()));
    const cd two_over_w = 2.0 / wd;
    cd above = 0.0;
    cd here = 1.0;
    cd sum = 0.0;
    for (int m = start; m >= 0; --m) {
      if (m <= nmax) raw[static_cast<size_t>(m)] = here;
      sum += (m == 0) ? here : 2.0 * here;
      if (m > 0) {
        const cd below = above + (two_over_w * static_cast<double>(m)) * here;
        above = here;
        here = below;
      }
    }
    const cd norm = std::exp(cd(0.0, static_cast<double>(w.imag()))) / sum;
    for (auto& v : raw) v *= cld(norm);
    return raw;
  }
  const cld inv_w = 1.0L / w;
  cld above = 0.0L;  // I_{m+1}, unnormalized
  cld here = 1.0L;   // I_m
  cld sum = 0.0L;    // I_0 + 2 sum_{k>=1} I_k, same normalization
  for (int m = start; m >= 0; --m) {
    if (m <= nmax) raw[static_cast<size_t>(m)] = here;
    sum += (m == 0) ? here : 2.0L * here;
    if (m > 0) {
      cld below = above + (2.0L * m) * inv_w * here;
      above = here;
      here = below;
    }
  }
  const cld norm = std::exp(cld(0.0L, w.imag())) / sum;
  for (auto& v : raw) v *= norm;
  return raw;
}

// Ascending series for K_n(w), n = 0 or 1 (DLMF 10.31.1); |w| <= ~13.
cld k_series(int n, cld w) {
  const cld q = 0.25L * w * w;  // (w/2)^2
  const cld half_w = 0.5L * w;
  const cld logw = std::log(half_w);

  // I_n(w) by its own series.
  cld i_term = (n == 0) ? cld(1.0L) : half_w;
  cld i_sum = i_term;
  cld late = 0.0L;  // sum with psi weights
  long double h_k = 0.0L;                      // H_0
  long double h_nk = (n == 0) ? 0.0L : 1.0L;   // H_n
  cld late_term = i_term;                      // (w/2)^n (q^k / (k!(n+k)!))
  late = late_term * (h_k + h_nk - 2.0L * kEulerGamma);
  for (int k = 1; k < 400; ++k) {
    i_term *= q / (static_cast<long double>(k) * (k + n));
    i_sum += i_term;
    h_k += 1.0L / k;
    h_nk += 1.0L / (k + n);
    late_term = i_term;
    late += late_term * (h_k + h_nk - 2.0L * kEulerGamma);
    if (std::abs(i_term) < 1e-23L * std::abs(i_sum) && k > 4) break;
  }

  cld finite = 0.0L;  // (1/2)(w/2)^{-n} sum_{k<n} ...
  if (n == 1) finite = 0.5L / half_w;

  const long double sgn = (n % 2 == 0) ? 1.0L : -1.0L;
  return finite - sgn * logw * i_sum + sgn * 0.5L * late;
}

// K_n(w) by composite Gauss-Legendre on int_0^inf e^{-w cosh t} cosh(nt) dt,
// n = 0 or 1.  Used for Re w > 4, |w| <= ~13 where the ascending series
// loses ~log10(e^{Re w} max-term) digits to cancellation; the integrand here
// peaks at e^{-Re w}, the same scale as the result, so nothing cancels.
cld k_integral(int n, cld w) {
  static const double kNode[10] = {
      0.0765265211334973337546404, 0.2277858511416450780804962,
      0.3737060887154195606725482, 0.5108670019508270980043641,
      0.6360536807265150254528367, 0.7463319064601507926143051,
      0.8391169718222188233945291, 0.9122344282513259058677524,
      0.9639719272779137912676661, 0.9931285991850949247861224};
  static const double kWeight[10] = {
      0.1527533871307258506980843, 0.1491729864726037467878287,
      0.1420961093183820513292983, 0.1316886384491766268984945,
      0.1181945319615184173123774, 0.1019301198172404350367501,
      0.0832767415767047487247581, 0.0626720483341090635695065,
      0.0406014298003869413310400, 0.0176140071391521183118620};
  // Double precision suffices here: the integrand is positive at real w and
  // at most mildly oscillatory in this band, so no digits cancel.
  using cd = std::complex<double>;
  const cd wd(static_cast<double>(w.real()), static_cast<double>(w.imag()));
  const double t_end = std::acosh(1.0 + 110.0 / wd.real());
  const double phase = std::abs(wd.imag()) * std::sinh(t_end);
  int panels = std::max(3, static_cast<int>(phase / 5.0) + 1);
  cd prev = 0.0;
  for (int round = 0; round < 6; ++round) {
    cd sum = 0.0;
    const double dt = t_end / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = (p + 0.5) * dt;
      for (int g = 0; g < 10; ++g) {
        for (double sign : {-1.0, 1.0}) {
          const double t = mid + sign * 0.5 * dt * kNode[g];
          const cd f = std::exp(-wd * std::cosh(t)) * std::cosh(n * t);
          sum += kWeight[g] * f;
        }
      }
    }
    sum *= 0.5 * dt;
    if (round > 0 && std::abs(sum - prev) < 4e-16 * std::abs(sum))
      return cld(sum);
    prev = sum;
    panels *= 2;
  }
  return cld(prev);
}

// Asymptotic expansion of K_n(w) e^{+w}, n = 0 or 1; |w| >= ~12.
cld k_asymptotic_scaled(int n, cld w) {
  const long double mu = 4.0L * n * n;
  cld term = 1.0L;
  cld sum = 1.0L;
  long double prev_mag = 1.0L;
  for (int k = 1; k < 80; ++k) {
    const long double num = mu - (2.0L * k - 1.0L) * (2.0L * k - 1.0L);
    term *= num / (8.0L * k) / w;
    const long double mag = std::abs(term);
    if (mag >= prev_mag) break;  // divergent tail reached
    sum += term;
    prev_mag = mag;
    if (mag < 1e-22L * std::abs(sum)) break;
  }
  return std::sqrt(kPi / (2.0L * w)) * sum;
}

// K_n(w) e^{+w} for n = 0..nmax, Re w >= 0, w != 0.
std::vector<cld> scaled_k_ladder(int nmax, cld w) {
  std::vector<cld> kt(static_cast<size_t>(std::max(nmax, 1)) + 1);
  if (std::abs(w) <= kSeriesRadius) {
    const cld ew = std::exp(w);
    if (w.real() > 4.0L) {
      kt[0] = k_integral(0, w) * ew;
      kt[1] = k_integral(1, w) * ew;
    } else {
      kt[0] = k_series(0, w) * ew;
      kt[1] = k_series(1, w) * ew;
    }
  } else {
    kt[0] = k_asymptotic_scaled(0, w);
    kt[1] = k_asymptotic_scaled(1, w);
  }
  const cld inv_w = 1.0L / w;
  for (int m = 1; m < nmax; ++m)
    kt[static_cast<size_t>(m) + 1] =
        kt[static_cast<size_t>(m) - 1] +
        (2.0L * m) * inv_w * kt[static_cast<size_t>(m)];
  kt.resize(static_cast<size_t>(nmax) + 1);
  return kt;
}

constexpr cld kPowMinusI[4] = {{1.0L, 0.0L}, {0.0L, -1.0L}, {-1.0L, 0.0L}, {0.0L, 1.0L}};
constexpr cld kPowPlusI[4] = {{1.0L, 0.0L}, {0.0L, 1.0L}, {-1.0L, 0.0L}, {0.0L, -1.0L}};

struct LongLadder {
  std::vector<cld> jt, jtp, ht, htp;
};

// Scaled ladders at z with Re z >= 0, Im z >= 0, z != 0.
LongLadder first_quadrant_ladder(int nmax, cld z) {
  const int nn = std::max(nmax, 1);
  const cld w = cld(0.0L, -1.0L) * z;  // -i z, Re w >= 0
  const std::vector<cld> it = scaled_i_ladder(nn, w);
  const std::vector<cld> ktw = scaled_k_ladder(nn, w);

  LongLadder out;
  out.jt.resize(static_cast<size_t>(nn) + 1);
  out.ht.resize(static_cast<size_t>(nn) + 1);
  const cld h_pref = cld(0.0L, -2.0L / kPi);  // -(2i/pi)
  for (int k = 0; k <= nn; ++k) {
    out.jt[static_cast<size_t>(k)] = kPowPlusI[k % 4] * it[static_cast<size_t>(k)];
    out.ht[static_cast<size_t>(k)] =
        h_pref * kPowMinusI[k % 4] * ktw[static_cast<size_t>(k)];
  }
  return out;
}

void fill_derivatives(LongLadder& lad, cld z, int nmax) {
  const int nn = std::max(nmax, 1);
  lad.jtp.resize(static_cast<size_t>(nn) + 1);
  lad.htp.resize(static_cast<size_t>(nn) + 1);
  lad.jtp[0] = -lad.jt[1];
  lad.htp[0] = -lad.ht[1];
  for (int k = 1; k <= nn; ++k) {
    const cld fac = static_cast<long double>(k) / z;
    lad.jtp[static_cast<size_t>(k)] =
        lad.jt[static_cast<size_t>(k) - 1] - fac * lad.jt[static_cast<size_t>(k)];
    lad.htp[static_cast<size_t>(k)] =
        lad.ht[static_cast<size_t>(k) - 1] - fac * lad.ht[static_cast<size_t>(k)];
  }
}

// Full scaled ladder for Im z >= 0, z != 0 (reflects Re z < 0 internally).
LongLadder upper_half_ladder(int nmax, cld z) {
  const bool reflected = z.real() < 0.0L;
  const cld zz = reflected ? -std::conj(z) : z;
  LongLadder lad = first_quadrant_ladder(nmax, zz);
  if (reflected) {
    // J_n(z) = (-1)^n conj(J_n(zeta)), H_n(z) = -(-1)^n conj(H_n(zeta));
    // the same relations hold for the scaled values.
    for (size_t k = 0; k < lad.jt.size(); ++k) {
      const long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
      lad.jt[k] = sgn * std::conj(lad.jt[k]);
      lad.ht[k] = -sgn * std::conj(lad.ht[k]);
    }
  }
  fill_derivatives(lad, z, nmax);
  return lad;
}

cdouble to_d(cld v) {
  return cdouble(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

void check_order(int n, int max_order) {
  if (n < 0 || n > max_order)
    throw DomainError("cylinder-function order outside validated envelope");
}

cdouble unscale_checked(cld scaled, cld log_scale, const char* what) {
  const cld v = scaled * std::exp(log_scale);
  if (!std::isfinite(static_cast<double>(v.real())) ||
      !std::isfinite(static_cast<double>(v.imag())))
    throw DomainError(std::string(what) + ": value not representable in double");
  return to_d(v);
}

cld to_ld(cdouble z) { return cld(z.real(), z.imag()); }

}  // namespace

cdouble bessel_j(int n, cdouble z) {
  check_order(n, kMaxOrder);
  if (std::abs(z) > kMaxModulus * (1.0 + 1e-12))
    throw DomainError("bessel_j: |z| outside validated envelope");
  if (z == cdouble(0.0, 0.0)) return n == 0 ? 1.0 : 0.0;
  if (z.imag() < 0.0) return std::conj(bessel_j(n, std::conj(z)));
  const LongLadder lad = upper_half_ladder(n, to_ld(z));
  return unscale_checked(lad.jt[static_cast<size_t>(n)],
                         cld(std::abs(to_ld(z).imag())), "bessel_j");
}

cdouble hankel1(int n, cdouble z) {
  check_order(n, kMaxOrder);
  if (std::abs(z) > kMaxModulus * (1.0 + 1e-12))
    throw DomainError("hankel1: |z| outside validated envelope");
  if (z == cdouble(0.0, 0.0))
    throw SingularArgument("hankel1 is singular at z = 0");
  if (z.imag() < 0.0)
    throw DomainError("hankel1: lower half plane not supported (Im z >= 0 branch)");
  const cld zz = to_ld(z);
  const LongLadder lad = upper_half_ladder(n, zz);
  return unscale_checked(lad.ht[static_cast<size_t>(n)], cld(0.0L, 1.0L) * zz,
                         "hankel1");
}

cdouble bessel_y(int n, cdouble z) {
  const cdouble h = hankel1(n, z);
  const cdouble j = bessel_j(n, z);
  return (h - j) / cdouble(0.0, 1.0);
}

CylFunValue deriv_pair(Kind kind, int n, cdouble z) {
  check_order(n, kMaxOrder);
  if (std::abs(z) > kMaxModulus * (1.0 + 1e-12))
    throw DomainError("deriv_pair: |z| outside validated envelope");
  CylFunValue out;
  out.order = n;
  out.argument = z;
  if (z == cdouble(0.0, 0.0)) {
    if (kind == Kind::H1) throw SingularArgument("hankel1 is singular at z = 0");
    out.value = (n == 0) ? 1.0 : 0.0;
    out.derivative = (n == 1) ? 0.5 : 0.0;
    return out;
  }
  if (kind == Kind::J && z.imag() < 0.0) {
    CylFunValue up = deriv_pair(kind, n, std::conj(z));
    out.value = std::conj(up.value);
    out.derivative = std::conj(up.derivative);
    return out;
  }
  if (kind == Kind::H1 && z.imag() < 0.0)
    throw DomainError("hankel1: lower half plane not supported (Im z >= 0 branch)");
  const cld zz = to_ld(z);
  const LongLadder lad = upper_half_ladder(n, zz);
  const size_t k = static_cast<size_t>(n);
  if (kind == Kind::J) {
    const cld s = cld(std::abs(zz.imag()));
    out.value = unscale_checked(lad.jt[k], s, "deriv_pair(J)");
    out.derivative = unscale_checked(lad.jtp[k], s, "deriv_pair(J)");
  } else {
    const cld s = cld(0.0L, 1.0L) * zz;
    out.value = unscale_checked(lad.ht[k], s, "deriv_pair(H1)");
    out.derivative = unscale_checked(lad.htp[k], s, "deriv_pair(H1)");
  }
  return out;
}

ScaledLadder scaled_ladder(int n_max, cdouble z) {
  check_order(n_max, kMaxOrderInternal);
  if (std::abs(z) > kMaxModulusScaled)
    throw DomainError("scaled_ladder: |z| outside validated envelope");
  if (z == cdouble(0.0, 0.0))
    throw SingularArgument("scaled_ladder requires z != 0");
  if (z.imag() < 0.0)
    throw DomainError("scaled_ladder: lower half plane not supported");
  const LongLadder lad = upper_half_ladder(n_max, to_ld(z));
  ScaledLadder out;
  out.z = z;
  const size_t count = static_cast<size_t>(n_max) + 1;
  out.j.resize(count);
  out.jp.resize(count);
  out.h.resize(count);
  out.hp.resize(count);
  for (size_t k = 0; k < count; ++k) {
    out.j[k] = to_d(lad.jt[k]);
    out.jp[k] = to_d(lad.jtp[k]);
    out.h[k] = to_d(lad.ht[k]);
    out.hp[k] = to_d(lad.htp[k]);
    for (cdouble v : {out.j[k], out.jp[k], out.h[k], out.hp[k]})
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("scaled_ladder: entry not representable in double");
  }
  return out;
}

}  // namespace obh::specfun
