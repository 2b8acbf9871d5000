// Numerical engines for the axial-wavenumber integral, the azimuthal mode
// sum, and principal-value frequency integrals.
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "obhgreen/errors.hpp"

namespace obh::sommerfeld {

using cdouble = std::complex<double>;

struct QuadraturePolicy {
  double rel_tol = 1e-8;
  // Half-width of the excluded neighborhood around h = k1, as a fraction
  // of k1; the window is crossed on a semicircular detour.
  double branch_window = 1e-4;
  // Azimuthal order handling.
  int n_max = 60;
  int n_stop_consecutive = 5;
  double n_stop_rel = 1e-10;
  // Panel budget for one integral.
  int max_panels = 4000;
  // Evanescent truncation: stop extending once a tail block contributes
  // less than rel_tol times the accumulated magnitude, or once
  // |Im eta_1| = sqrt(h^2 - k1^2) exceeds eta_cap (units omega_0/c); a
  // cap-triggered stop folds the last block into the error bound.
  double eta_cap = 60.0;

  void validate() const;
};

struct IntegralResult {
  cdouble value{};
  double error_bound = 0.0;
  bool converged = true;
  long evaluations = 0;
};

struct IntegralPairResult {
  std::array<cdouble, 2> value{};
  double error_bound = 0.0;
  bool converged = true;
  long evaluations = 0;
};

// Integral of term(h) dh over the full real line, assuming term is even in
// h and analytic off the branch points at |h| = k1.  The contour runs along
// [0, k1-w], detours around k1 on a semicircle of radius w = branch_window*k1
// (on the side that analytically continues the Im eta >= 0 branch), then
// follows [k1+w, ...] with geometric tail extension; the result is doubled
// for the negative half-line.  Breakpoints (absolute h values) seed panel
// boundaries in addition to the default stratification.
IntegralResult integrate_h(const std::function<cdouble(cdouble)>& term,
                           double k1, const QuadraturePolicy& policy,
                           const std::vector<double>& breakpoints = {});

// Same contour, two integrands evaluated in one pass (shared workspaces are
// the caller's concern; convergence is controlled on both components).
IntegralPairResult integrate_h_pair(
    const std::function<std::array<cdouble, 2>(cdouble)>& term, double k1,
    const QuadraturePolicy& policy, const std::vector<double>& breakpoints = {});

// Plain adaptive integration of a complex-valued function over [a, b].
IntegralResult integrate_interval(const std::function<cdouble(double)>& f,
                                  double a, double b, double rel_tol,
                                  int max_panels = 2000);

struct ModeSumResult {
  cdouble value{};
  int n_used = 0;
  bool hit_cap = false;
};

// sum_{n = 0}^{...} (2 - delta_n0) term(n), stopping once
// n_stop_consecutive successive orders each contribute less than
// n_stop_rel relative to the accumulated sum.
ModeSumResult sum_modes(const std::function<cdouble(int)>& term,
                        const QuadraturePolicy& policy);

struct PvResult {
  double value = 0.0;
  double error_bound = 0.0;
  bool converged = true;
};

// Principal value of integral fn(x)/(x - pole) dx over [lo, hi] by
// singularity subtraction; fn must be smooth at the pole.
PvResult pv_integral(const std::function<double(double)>& fn, double pole,
                     double lo, double hi, double rel_tol = 1e-8,
                     const std::vector<double>& breakpoints = {});

}  // namespace obh::sommerfeld
