#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "obhgreen/specfun.hpp"
#include "support/bessel_oracle.hpp"

using obh::specfun::bessel_j;
using obh::specfun::bessel_y;
using obh::specfun::CylFunValue;
using obh::specfun::deriv_pair;
using obh::specfun::hankel1;
using obh::specfun::Kind;
using obh::specfun::scaled_ladder;
using obh::specfun::ScaledLadder;
using cdouble = std::complex<double>;

namespace {

struct ReferenceRow {
  int n;
  double z_re, z_im;
  double j_re, j_im, jp_re, jp_im;
  double h_re, h_im, hp_re, hp_im;
};

#include "support/bessel_reference_table.inc"

constexpr double kPi = 3.14159265358979323846;

double rel_err(cdouble got, cdouble ref, double floor_scale) {
  return std::abs(got - ref) / std::max(std::abs(ref), floor_scale);
}

}  // namespace

TEST_CASE("bessel_j special points") {
  CHECK(bessel_j(0, 0.0) == cdouble(1.0, 0.0));
  CHECK(bessel_j(1, 0.0) == cdouble(0.0, 0.0));
  // Ascending-series value at z = 1.
  const cdouble j01 = bessel_j(0, 1.0);
  CHECK(std::abs(j01 - obh::testsupport::oracle_j(0, 1.0)) < 1e-14);
  CHECK(j01.real() == doctest::Approx(0.765197686557966).epsilon(1e-12));
  CHECK(std::abs(j01.imag()) < 1e-15);
}

TEST_CASE("hankel1 at z = 1 matches J + iY series") {
  const cdouble h = hankel1(0, 1.0);
  CHECK(h.real() == doctest::Approx(0.765197686557966).epsilon(1e-12));
  CHECK(h.imag() == doctest::Approx(0.088256964215677).epsilon(1e-11));
}

TEST_CASE("derivative identities") {
  const cdouble z(1.7, 0.4);
  CylFunValue d0 = deriv_pair(Kind::J, 0, z);
  CHECK(std::abs(d0.derivative + bessel_j(1, z)) < 1e-14);  // J0' = -J1

  CylFunValue d1 = deriv_pair(Kind::J, 1, 0.0);
  CHECK(d1.derivative == cdouble(0.5, 0.0));

  // H1 derivative against a central finite difference.  The difference
  // quotient amplifies evaluation noise by |H|/(|H'| step), so keep to
  // moderate arg(z) where H does not decay and the quotient is benign.
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> mod(0.5, 30.0), arg(0.0, 0.7);
  for (int trial = 0; trial < 40; ++trial) {
    const double r = mod(rng), a = arg(rng);
    const cdouble zz = std::polar(r, a);
    const int n = trial % 7;
    const double step = 1e-6 * r;
    const cdouble num =
        (hankel1(n, zz + step / 2) - hankel1(n, zz - step / 2)) / step;
    const CylFunValue d = deriv_pair(Kind::H1, n, zz);
    CHECK(rel_err(d.derivative, num, std::abs(d.value) / r) < 1e-6);
  }
}

TEST_CASE("reference table: unscaled values to 1e-9 relative") {
  double worst = 0.0;
  for (const ReferenceRow& row : kPlainReference) {
    const cdouble z(row.z_re, row.z_im);
    const cdouble rj(row.j_re, row.j_im), rjp(row.jp_re, row.jp_im);
    const cdouble rh(row.h_re, row.h_im), rhp(row.hp_re, row.hp_im);
    const CylFunValue j = deriv_pair(Kind::J, row.n, z);
    const CylFunValue h = deriv_pair(Kind::H1, row.n, z);
    const double pair_j = std::abs(rj) + std::abs(rjp);
    const double pair_h = std::abs(rh) + std::abs(rhp);
    worst = std::max(worst, rel_err(j.value, rj, 1e-3 * pair_j));
    worst = std::max(worst, rel_err(j.derivative, rjp, 1e-3 * pair_j));
    worst = std::max(worst, rel_err(h.value, rh, 1e-3 * pair_h));
    worst = std::max(worst, rel_err(h.derivative, rhp, 1e-3 * pair_h));
  }
  CHECK(worst < 1e-9);
  MESSAGE("plain reference worst relative error: ", worst);
}

TEST_CASE("reference table: scaled ladders at large |z|") {
  double worst = 0.0;
  for (const ReferenceRow& row : kScaledReference) {
    const cdouble z(row.z_re, row.z_im);
    const ScaledLadder lad = scaled_ladder(row.n, z);
    const size_t k = static_cast<size_t>(row.n);
    const cdouble rj(row.j_re, row.j_im), rjp(row.jp_re, row.jp_im);
    const cdouble rh(row.h_re, row.h_im), rhp(row.hp_re, row.hp_im);
    const double pair_j = std::abs(rj) + std::abs(rjp);
    const double pair_h = std::abs(rh) + std::abs(rhp);
    worst = std::max(worst, rel_err(lad.j[k], rj, 1e-3 * pair_j));
    worst = std::max(worst, rel_err(lad.jp[k], rjp, 1e-3 * pair_j));
    worst = std::max(worst, rel_err(lad.h[k], rh, 1e-3 * pair_h));
    worst = std::max(worst, rel_err(lad.hp[k], rhp, 1e-3 * pair_h));
  }
  CHECK(worst < 1e-9);
  MESSAGE("scaled reference worst relative error: ", worst);
}

TEST_CASE("series oracle agreement at small and moderate |z|") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> mod(1e-3, 15.0), arg(0.0, kPi);
  std::uniform_int_distribution<int> ord(0, 20);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = ord(rng);
    const cdouble z = std::polar(mod(rng), arg(rng));
    CHECK(rel_err(bessel_j(n, z), obh::testsupport::oracle_j(n, z), 1e-280) <
          1e-11);
    if (z.imag() < 2.0) {
      const cdouble h_ref = obh::testsupport::oracle_h1(n, z);
      CHECK(rel_err(hankel1(n, z), h_ref, 1e-280) < 1e-10);
    }
  }
}

TEST_CASE("Wronskian J_n H1_n' - J_n' H1_n = 2i/(pi z) over the envelope") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> mod(1e-3, 200.0), arg(0.0, kPi);
  std::uniform_int_distribution<int> ord(0, 80);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = ord(rng);
    const cdouble z = std::polar(mod(rng), arg(rng));
    const ScaledLadder lad = scaled_ladder(n, z);
    const size_t k = static_cast<size_t>(n);
    // The scale product exp(|Im z| + i z) has unit-modulus real part
    // exp(i Re z) on the upper half plane, so this never over/underflows.
    const cdouble scale = std::exp(cdouble(0.0, 1.0) * z + std::abs(z.imag()));
    const cdouble w = (lad.j[k] * lad.hp[k] - lad.jp[k] * lad.h[k]) * scale;
    const cdouble expected = cdouble(0.0, 2.0) / (kPi * z);
    worst = std::max(worst, std::abs(w - expected) / std::abs(expected));
  }
  CHECK(worst < 1e-9);
  MESSAGE("wronskian worst relative error: ", worst);
}

TEST_CASE("reflection J_n(conj z) = conj(J_n(z))") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> mod(1e-2, 150.0), arg(0.0, kPi);
  std::uniform_int_distribution<int> ord(0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = ord(rng);
    const cdouble z = std::polar(mod(rng), arg(rng));
    cdouble a, b;
    try {
      a = bessel_j(n, std::conj(z));
      b = std::conj(bessel_j(n, z));
    } catch (const obh::DomainError&) {
      continue;  // unrepresentable corner (high order, tiny |z|)
    }
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
  }
}

TEST_CASE("recurrence closure Z_{n-1} + Z_{n+1} = (2n/z) Z_n") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> mod(0.5, 180.0), arg(0.0, kPi);
  std::uniform_int_distribution<int> ord(1, 79);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = ord(rng);
    const cdouble z = std::polar(mod(rng), arg(rng));
    const ScaledLadder lad = scaled_ladder(n + 1, z);
    const size_t k = static_cast<size_t>(n);
    for (const auto* fam : {&lad.j, &lad.h}) {
      const cdouble lhs = (*fam)[k - 1] + (*fam)[k + 1];
      const cdouble rhs = (2.0 * n / z) * (*fam)[k];
      const double scale =
          std::abs((*fam)[k - 1]) + std::abs((*fam)[k + 1]) + std::abs(rhs);
      if (scale == 0.0) continue;
      // 1e-8 relative away from zeros of the combination.
      CHECK(std::abs(lhs - rhs) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("hankel1 decays along the imaginary direction") {
  for (int n : {0, 2, 7}) {
    double prev = std::abs(hankel1(n, cdouble(3.0, 2.0 + n)));
    for (double y = 3.0 + n; y < 60.0; y += 2.0) {
      const double cur = std::abs(hankel1(n, cdouble(3.0, y)));
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("domain and singularity errors") {
  CHECK_THROWS_AS((void)bessel_j(81, 1.0), obh::DomainError);
  CHECK_THROWS_AS((void)bessel_j(-1, 1.0), obh::DomainError);
  CHECK_THROWS_AS((void)bessel_j(0, cdouble(250.0, 0.0)), obh::DomainError);
  CHECK_THROWS_AS((void)hankel1(0, 0.0), obh::SingularArgument);
  CHECK_THROWS_AS((void)hankel1(0, cdouble(1.0, -0.5)), obh::DomainError);
  // High order at tiny argument: J underflows, H overflows double.
  CHECK_THROWS_AS((void)hankel1(80, cdouble(1e-3, 0.0)), obh::DomainError);
}

TEST_CASE("scaled ladder consistent with unscaled values in overlap") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> mod(0.5, 60.0), arg(0.0, 1.55);
  for (int trial = 0; trial < 100; ++trial) {
    const cdouble z = std::polar(mod(rng), arg(rng));
    const int n = trial % 12;
    const ScaledLadder lad = scaled_ladder(n, z);
    const cdouble jf = lad.j[static_cast<size_t>(n)] *
                       std::exp(cdouble(lad.log_j_scale(), 0.0));
    const cdouble hf =
        lad.h[static_cast<size_t>(n)] * std::exp(lad.log_h_scale());
    CHECK(rel_err(jf, bessel_j(n, z), 1e-280) < 1e-13);
    CHECK(rel_err(hf, hankel1(n, z), 1e-280) < 1e-13);
  }
}
