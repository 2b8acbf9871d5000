#include <cmath>
#include <complex>

#include "doctest.h"
#include "obhgreen/entanglement.hpp"

using namespace obh;
using namespace obh::entanglement;
using dynamics::RateSet;
using dynamics::ShiftSet;
using cdouble = std::complex<double>;

namespace {

RateSet make_rates(double gp, double gm) {
  RateSet r;
  r.gamma_plus = gp;
  r.gamma_minus = gm;
  r.gamma = 0.5 * (gp + gm);
  r.gamma_ab = 0.5 * (gp - gm);
  return r;
}

ShiftSet make_shifts(double dab) {
  ShiftSet s;
  s.delta_ab = dab;
  s.delta_plus = dab;
  s.delta_minus = -dab;
  return s;
}

}  // namespace

TEST_CASE("density matrix from amplitudes") {
  // Pure |+>.
  const TwoAtomState plus = density_matrix(1.0, 0.0);
  CHECK(plus.rho_pp == 1.0);
  CHECK(plus.rho_ll == 0.0);
  CHECK(negativity_eigen(plus) == doctest::Approx(0.5).epsilon(1e-12));
  const auto mu = pt_eigenvalues(plus);
  CHECK(mu[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(mu[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mu[3] == doctest::Approx(0.5).epsilon(1e-12));

  // Initial product state |u_A l_B>.
  const double s2 = 1.0 / std::sqrt(2.0);
  const TwoAtomState prod = density_matrix(s2, s2);
  CHECK(prod.rho_pp == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(prod.rho_mm == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(prod.rho_pm.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(prod.rho_ll < 1e-14);
  CHECK(negativity_eigen(prod) == 0.0);

  // Separable ground state.
  const TwoAtomState ground = density_matrix(0.0, 0.0);
  CHECK(negativity_eigen(ground) == 0.0);

  CHECK_THROWS_AS((void)density_matrix(1.0, 0.2), obh::InvariantViolation);
}

TEST_CASE("closed form equals the eigenvalue route everywhere") {
  const RateSet sets[] = {make_rates(0.758, 1.242), make_rates(2.0, 0.3),
                          make_rates(1.0, 1.0), make_rates(6.3, 0.05)};
  const double dabs[] = {0.0791, 5.0, 0.0, 42.0};
  double worst = 0.0;
  for (size_t i = 0; i < 4; ++i) {
    const ShiftSet s = make_shifts(dabs[i]);
    for (int j = 0; j <= 400; ++j) {
      const double t = 12.0 * j / 400.0;
      const auto [cp, cm] = dynamics::amplitudes(sets[i], s, t);
      const TwoAtomState state = density_matrix(cp, cm, t);
      const double ne = negativity_eigen(state);
      const double nc = negativity_closed(sets[i], s, t);
      worst = std::max(worst, std::abs(ne - nc));
      CHECK(ne >= 0.0);
    }
  }
  CHECK(worst < 1e-12);
  MESSAGE("max |eigen - closed| over traces: ", worst);
}

TEST_CASE("negativity vanishes at t = 0 exactly") {
  const RateSet r = make_rates(1.4, 0.6);
  const ShiftSet s = make_shifts(3.0);
  CHECK(negativity_closed(r, s, 0.0) == 0.0);
  const auto [cp, cm] = dynamics::amplitudes(r, s, 0.0);
  CHECK(negativity_eigen(density_matrix(cp, cm, 0.0)) == 0.0);
}

TEST_CASE("independent atoms never entangle") {
  const RateSet r = make_rates(1.0, 1.0);
  const ShiftSet s = make_shifts(0.0);
  for (double t : {0.1, 0.9, 3.0, 20.0}) {
    CHECK(negativity_closed(r, s, t) == 0.0);
    const auto [cp, cm] = dynamics::amplitudes(r, s, t);
    CHECK(negativity_eigen(density_matrix(cp, cm, t)) < 1e-14);
  }
}

TEST_CASE("long-time decay of the negativity") {
  const RateSet r = make_rates(0.758, 1.242);
  const ShiftSet s = make_shifts(0.0791);
  CHECK(negativity_closed(r, s, 50.0) < 1e-6);
}

TEST_CASE("short-time oscillation spacing approaches pi / (2 delta_ab)") {
  // Strong dipole-dipole coupling: maxima of cos^2(2 delta t) dominate.
  const RateSet r = make_rates(1.05, 0.95);
  const ShiftSet s = make_shifts(40.0);
  const auto trace = negativity_trace(r, s, 0.5, 20001);
  std::vector<double> maxima;
  for (size_t i = 1; i + 1 < trace.size(); ++i)
    if (trace[i].neg_eigen > trace[i - 1].neg_eigen &&
        trace[i].neg_eigen > trace[i + 1].neg_eigen)
      maxima.push_back(trace[i].t);
  REQUIRE(maxima.size() >= 4);
  const double expected = 3.14159265358979323846 / (2.0 * s.delta_ab);
  double avg = 0.0;
  for (size_t i = 1; i < maxima.size(); ++i) avg += maxima[i] - maxima[i - 1];
  avg /= static_cast<double>(maxima.size() - 1);
  CHECK(std::abs(avg - expected) < 0.2 * expected);
}

TEST_CASE("state invariants along a trace") {
  const RateSet r = make_rates(2.0, 0.3);
  const ShiftSet s = make_shifts(5.0);
  const auto trace = negativity_trace(r, s, 8.0, 200);
  CHECK(trace.size() == 200);
  for (const auto& row : trace) {
    const auto [cp, cm] = dynamics::amplitudes(r, s, row.t);
    const TwoAtomState state = density_matrix(cp, cm, row.t);
    state.validate();
    for (double ev : rho_eigenvalues(state)) CHECK(ev >= -1e-10);
    CHECK(std::abs(state.rho_pp + state.rho_mm + state.rho_ll - 1.0) < 1e-12);
  }
}
