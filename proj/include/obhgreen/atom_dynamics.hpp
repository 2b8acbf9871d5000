// Markovian two-atom quantities: single-atom and collective decay rates,
// dipole-dipole level shifts, and the symmetric/antisymmetric amplitude
// evolution.  Everything is reported in units of the free-space rate.
#pragma once

#include <complex>
#include <optional>
#include <utility>

#include "obhgreen/layered_green.hpp"
#include "obhgreen/medium.hpp"
#include "obhgreen/sommerfeld.hpp"

namespace obh::dynamics {

using cdouble = std::complex<double>;

// Two identical atoms at +r x_hat and -r x_hat with z-oriented dipoles.
struct AtomPair {
  double omega_a = 0.1;  // transition frequency (units omega_0)
  double r = 8.1 * 3.14159265358979323846;  // radial distance (units c/omega_0)
  double dipole = 1.0;   // enters only through the rate normalization

  double separation() const { return 2.0 * r; }
  void validate(const medium::LayerStack& stack) const;
};

struct RateSet {
  double gamma = 1.0;        // single-atom rate / Gamma_0
  double gamma_ab = 0.0;     // collective rate / Gamma_0
  double gamma_plus = 1.0;   // gamma + gamma_ab
  double gamma_minus = 1.0;  // gamma - gamma_ab
  double error_bound = 0.0;
  bool converged = true;
  bool hit_mode_cap = false;
  long evaluations = 0;

  void validate() const;  // gamma_plus, gamma_minus >= -tolerance
};

struct PvCrossCheck {
  double pv_value = 0.0;      // direct principal-value evaluation
  double kk_value = 0.0;      // real-part-of-Green route
  double discrepancy = 0.0;   // |pv - kk| / max(|kk|, floor)
  double bound = 0.0;         // quadrature + window-truncation estimate
  bool warning = false;       // discrepancy above 5%
};

struct ShiftSet {
  double delta_ab = 0.0;     // dipole-dipole shift / Gamma_0
  double delta_plus = 0.0;   // +delta_ab (common single-atom shift omitted)
  double delta_minus = 0.0;  // -delta_ab
  // Environment-induced part of the single-atom shift, reported as a
  // diagnostic; the vacuum Lamb shift is absorbed into omega_a.
  double lamb_scattering = 0.0;
  double error_bound = 0.0;
  bool converged = true;
  std::optional<PvCrossCheck> cross_check;
};

// Closed-form free-space collective quantities for z dipoles separated
// perpendicular to z, as functions of x = k * separation.
double vacuum_gamma_ab(double x);
double vacuum_delta_ab(double x);

enum class VacuumPart {
  closed_form,      // analytic vacuum rates plus scattering mode sums
  mode_expansion,   // everything through the cylindrical expansion
};

RateSet decay_rates(const AtomPair& atoms, const medium::LayerStack& stack,
                    const sommerfeld::QuadraturePolicy& policy,
                    VacuumPart vacuum = VacuumPart::closed_form);

enum class ShiftMethod {
  kramers_kronig,  // Re G at the transition frequency (default)
  pv_cross_check,  // additionally evaluate the windowed principal value
};

struct DispersionWindow {
  double lo = 0.01;
  double hi = 5.0;
  int samples = 96;     // frequency samples for the spectral interpolant
  double inner_rel_tol = 3e-4;  // tolerance of the per-frequency responses
};

ShiftSet dipole_shift(const AtomPair& atoms, const medium::LayerStack& stack,
                      const sommerfeld::QuadraturePolicy& policy,
                      ShiftMethod method = ShiftMethod::kramers_kronig,
                      const DispersionWindow& window = {});

// C_{+-}(t) = exp((-Gamma_pm/2 + i delta_pm) t) / sqrt(2) for the initial
// single-excitation product state; t in units of 1/Gamma_0.
std::pair<cdouble, cdouble> amplitudes(const RateSet& rates,
                                       const ShiftSet& shifts, double t);

}  // namespace obh::dynamics
