#include <cmath>
#include <complex>

#include "doctest.h"
#include "obhgreen/medium.hpp"

using namespace obh::medium;
using cdouble = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("lorentz permittivity limits") {
  LorentzModel m;  // omega_p = 0.1, gamma = 0.01, omega_0 = 1

  // Static limit 1 + omega_p^2.
  const cdouble low = lorentz_permittivity(1e-9, m);
  CHECK(low.real() == doctest::Approx(1.01).epsilon(1e-9));
  CHECK(std::abs(low.imag()) < 1e-9);

  // On resonance: 1 + omega_p^2 / (-i gamma omega_0) = 1 + i.
  const cdouble res = lorentz_permittivity(1.0, m);
  CHECK(res.real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(res.imag() == doctest::Approx(1.0).epsilon(1e-14));

  // Direct complex arithmetic at omega = 0.1, independent route.
  const cdouble e = lorentz_permittivity(0.1, m);
  const cdouble denom = 1.0 - 0.01 - cdouble(0.0, 1.0) * 0.01 * 0.1;
  CHECK(std::abs(e - (1.0 + 0.01 / denom)) < 1e-15);
  CHECK(e.imag() > 0.0);

  CHECK_THROWS_AS((void)lorentz_permittivity(-1.0, m), obh::DomainError);
}

TEST_CASE("profile permittivity branches") {
  ObhGeometry g;
  LorentzModel m;
  CHECK(profile_permittivity(2.0 * g.a_s, 0.5, g, m) == cdouble(1.0, 0.0));
  CHECK(profile_permittivity(0.5 * g.a_c, 0.5, g, m) == g.eps_core);

  // Just outside the core the shell profile reads (a_s/a_c)^2 eps_L = 4 eps_L
  // = 4 (1 + omega_p^2 + ...), continuous with Re eps_core = 4 up to the
  // omega_p^2 dispersion correction for small gamma and omega << omega_0.
  LorentzModel weak{0.1, 1.0, 1e-8};
  const double r = g.a_c * (1.0 + 1e-12);
  const cdouble shell_val = profile_permittivity(r, 0.01, g, weak);
  CHECK(shell_val.real() ==
        doctest::Approx(4.0 * (1.0 + weak.omega_p * weak.omega_p)).epsilon(1e-4));

  // Boundary radii resolve to the inner region.
  const cdouble at_ac = profile_permittivity(g.a_c, 0.5, g, m);
  CHECK(at_ac == g.eps_core);
  const cdouble at_as = profile_permittivity(g.a_s, 0.5, g, m);
  CHECK(std::abs(at_as - lorentz_permittivity(0.5, m)) < 1e-12);
}

TEST_CASE("horizon relation check is enforced but overridable") {
  ObhGeometry bad;
  bad.a_c = 3.0 * kPi;
  CHECK_THROWS_AS(bad.validate(), obh::InvariantViolation);
  bad.enforce_horizon_relation = false;
  CHECK_NOTHROW(bad.validate());

  ObhGeometry inverted;
  inverted.a_c = 9.0 * kPi;  // a_c > a_s
  inverted.enforce_horizon_relation = false;
  CHECK_THROWS_AS(inverted.validate(), obh::InvariantViolation);
}

TEST_CASE("discretize_shell: paper layering") {
  ObhGeometry g;
  LorentzModel m;
  const LayerStack s = discretize_shell(g, m, 10);
  CHECK(s.regions() == 12);
  CHECK(s.interfaces() == 11);
  // Equal thickness 0.4 pi.
  for (int f = 0; f + 1 < s.interfaces(); ++f)
    CHECK(s.radii()[f] - s.radii()[f + 1] ==
          doctest::Approx(0.4 * kPi).epsilon(1e-12));
  CHECK(s.radii().front() == doctest::Approx(8.0 * kPi));
  CHECK(s.radii().back() == doctest::Approx(4.0 * kPi));

  // Layer 1 is vacuum, layer N the core.
  CHECK(s.eps(1, 0.3) == cdouble(1.0, 0.0));
  CHECK(s.eps(12, 0.3) == g.eps_core);

  // eps_2 = (a_1/a_2)^2 eps_L exactly.
  const double a1 = s.radii()[0], a2 = s.radii()[1];
  const cdouble expect = (a1 / a2) * (a1 / a2) * lorentz_permittivity(0.3, m);
  CHECK(std::abs(s.eps(2, 0.3) - expect) < 1e-15);

  CHECK_THROWS_AS((void)discretize_shell(g, m, 0), obh::InvariantViolation);
}

TEST_CASE("single shell layer degenerates to one homogeneous ring") {
  ObhGeometry g;
  LorentzModel m;
  const LayerStack s = discretize_shell(g, m, 1);
  CHECK(s.regions() == 3);
  CHECK(s.radii()[0] == doctest::Approx(g.a_s));
  CHECK(s.radii()[1] == doctest::Approx(g.a_c));
}

TEST_CASE("passivity and inward monotonicity of the stack") {
  ObhGeometry g;
  LorentzModel m;
  const LayerStack s = discretize_shell(g, m, 10);
  for (double omega : {0.05, 0.3, 0.8, 1.0, 1.7, 4.0}) {
    for (int layer = 2; layer < s.regions(); ++layer)
      CHECK(s.eps(layer, omega).imag() > 0.0);
  }
  // Below resonance Re eps grows inward.
  for (int layer = 2; layer + 1 < s.regions(); ++layer)
    CHECK(s.eps(layer + 1, 0.3).real() > s.eps(layer, 0.3).real());
}

TEST_CASE("stepwise profile converges to the smooth one on refinement") {
  ObhGeometry g;
  LorentzModel m;
  auto max_middev = [&](int layers) {
    const LayerStack s = discretize_shell(g, m, layers);
    double worst = 0.0;
    for (int f = 1; f < s.interfaces(); ++f) {
      const double mid = 0.5 * (s.radii()[f - 1] + s.radii()[f]);
      const cdouble step = s.eps(f + 1, 0.3);
      const cdouble smooth = profile_permittivity(mid, 0.3, g, m);
      worst = std::max(worst, std::abs(step - smooth) / std::abs(smooth));
    }
    return worst;
  };
  const double e10 = max_middev(10);
  const double e20 = max_middev(20);
  const double e40 = max_middev(40);
  CHECK(std::abs(e20 / e10 - 0.5) < 0.1);
  CHECK(std::abs(e40 / e20 - 0.5) < 0.1);

  // Midpoint sampling nulls the midpoint deviation by construction.
  const LayerStack sm = discretize_shell(g, m, 10, ShellSampling::midpoint);
  const double mid = 0.5 * (sm.radii()[0] + sm.radii()[1]);
  CHECK(std::abs(sm.eps(2, 0.3) - profile_permittivity(mid, 0.3, g, m)) <
        1e-14);
}

TEST_CASE("test factories") {
  const LayerStack v = LayerStack::vacuum(5.0);
  CHECK(v.regions() == 2);
  CHECK(v.eps(2, 0.7) == cdouble(1.0, 0.0));

  const LayerStack h = LayerStack::homogeneous_cylinder(5.0, {2.25, 0.0});
  CHECK(h.eps(2, 0.7) == cdouble(2.25, 0.0));

  CHECK_THROWS_AS(LayerStack::from_layers({3.0, 4.0}, {{1, 0}, {1, 0}}),
                  obh::InvariantViolation);
}
