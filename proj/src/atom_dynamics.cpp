#include "obhgreen/atom_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace obh::dynamics {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRateTolerance = 1e-6;

// The two parity-resolved spectral integrals
//   I_pm = int dh sum_n (2 - delta_n0) (eta^2/k^3) T_n (1 +- (-1)^n)
// evaluated in one pass; T_n is the scattering product C H^2 (plus the
// background J H product in mode-expansion runs).
struct Response {
  cdouble i_plus{};
  cdouble i_minus{};
  double bound = 0.0;
  bool converged = true;
  bool hit_cap = false;
  long evaluations = 0;
};

Response spectral_response(const AtomPair& atoms,
                           const medium::LayerStack& stack, double omega,
                           const sommerfeld::QuadraturePolicy& policy,
                           bool include_vacuum_term) {
  green::ModeWorkspace ws(stack, omega, policy.n_max);
  ws.set_field_radii(atoms.r, atoms.r);

  Response out;
  auto term_pair = [&](cdouble h) -> std::array<cdouble, 2> {
    ws.set_h(h);
    const cdouble k1 = ws.k1();
    const cdouble eta = ws.eta1();
    const cdouble pref = eta * eta / (k1 * k1 * k1);
    cdouble s_plus = 0.0, s_minus = 0.0;
    int quiet_even = 0, quiet_odd = 0;
    for (int n = 0; n <= policy.n_max; ++n) {
      cdouble t = ws.scattered_product(n);
      if (include_vacuum_term) t += ws.vacuum_product(n);
      const double weight = (n == 0) ? 2.0 : 4.0;  // (2-delta)(1 +- (-1)^n)
      const bool even = (n % 2 == 0);
      cdouble& acc = even ? s_plus : s_minus;
      int& quiet = even ? quiet_even : quiet_odd;
      acc += weight * t;
      const double scale = std::max(std::abs(acc), 1e-300);
      if (weight * std::abs(t) <= policy.n_stop_rel * scale)
        ++quiet;
      else
        quiet = 0;
      if (quiet_even >= policy.n_stop_consecutive &&
          quiet_odd >= policy.n_stop_consecutive)
        break;
      if (n == policy.n_max) out.hit_cap = true;
    }
    return {pref * s_plus, pref * s_minus};
  };

  const auto bp = green::guided_band_breakpoints(stack, omega);
  const auto integral =
      sommerfeld::integrate_h_pair(term_pair, omega, policy, bp);
  out.i_plus = integral.value[0];
  out.i_minus = integral.value[1];
  out.bound = integral.error_bound;
  out.converged = integral.converged;
  out.evaluations = integral.evaluations;
  return out;
}

// Natural cubic spline on a strictly increasing grid; used to interpolate
// the sampled spectral density inside the principal-value cross-check.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
    const size_t n = x_.size();
    std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), d(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      a[i] = h0 / 6.0;
      b[i] = (h0 + h1) / 3.0;
      c[i] = h1 / 6.0;
      d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    }
    for (size_t i = 1; i < n; ++i) {  // Thomas sweep
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      d[i] -= w * d[i - 1];
    }
    m_[n - 1] = d[n - 1] / b[n - 1];
    for (size_t i = n - 1; i-- > 0;) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
  }

  double operator()(double x) const {
    size_t i = static_cast<size_t>(
        std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    i = std::clamp<size_t>(i, 1, x_.size() - 1);
    const double h = x_[i] - x_[i - 1];
    const double u = (x_[i] - x) / h;
    const double v = (x - x_[i - 1]) / h;
    return u * y_[i - 1] + v * y_[i] +
           ((u * u * u - u) * m_[i - 1] + (v * v * v - v) * m_[i]) * h * h /
               6.0;
  }

 private:
  std::vector<double> x_, y_, m_;
};

}  // namespace

void AtomPair::validate(const medium::LayerStack& stack) const {
  if (!(omega_a > 0.0))
    throw InvariantViolation("atom transition frequency must be positive");
  if (!(r > stack.outer_radius()))
    throw InvariantViolation("atoms must sit outside the outer shell radius");
}

void RateSet::validate() const {
  if (gamma_plus < -kRateTolerance || gamma_minus < -kRateTolerance)
    throw InvariantViolation(
        "collective rates must be nonnegative (Gamma >= |Gamma_AB|)");
}

double vacuum_gamma_ab(double x) {
  if (x == 0.0) return 1.0;
  const double s = std::sin(x), c = std::cos(x);
  return 1.5 * (s / x + c / (x * x) - s / (x * x * x));
}

double vacuum_delta_ab(double x) {
  const double s = std::sin(x), c = std::cos(x);
  return -0.75 * (-c / x + s / (x * x) + c / (x * x * x));
}

RateSet decay_rates(const AtomPair& atoms, const medium::LayerStack& stack,
                    const sommerfeld::QuadraturePolicy& policy,
                    VacuumPart vacuum) {
  atoms.validate(stack);
  policy.validate();
  const Response resp = spectral_response(
      atoms, stack, atoms.omega_a, policy,
      vacuum == VacuumPart::mode_expansion);

  RateSet out;
  if (vacuum == VacuumPart::mode_expansion) {
    out.gamma_plus = 0.75 * resp.i_plus.real();
    out.gamma_minus = 0.75 * resp.i_minus.real();
  } else {
    const double gab = vacuum_gamma_ab(atoms.omega_a * atoms.separation());
    out.gamma_plus = 1.0 + gab + 0.75 * resp.i_plus.real();
    out.gamma_minus = 1.0 - gab + 0.75 * resp.i_minus.real();
  }
  out.gamma = 0.5 * (out.gamma_plus + out.gamma_minus);
  out.gamma_ab = 0.5 * (out.gamma_plus - out.gamma_minus);
  out.error_bound = 0.75 * resp.bound;
  out.converged = resp.converged;
  out.hit_mode_cap = resp.hit_cap;
  out.evaluations = resp.evaluations;
  out.validate();
  return out;
}

ShiftSet dipole_shift(const AtomPair& atoms, const medium::LayerStack& stack,
                      const sommerfeld::QuadraturePolicy& policy,
                      ShiftMethod method, const DispersionWindow& window) {
  atoms.validate(stack);
  policy.validate();
  const Response resp =
      spectral_response(atoms, stack, atoms.omega_a, policy, false);

  ShiftSet out;
  const double scat =
      -(3.0 / 16.0) * (resp.i_plus.imag() - resp.i_minus.imag());
  out.delta_ab =
      vacuum_delta_ab(atoms.omega_a * atoms.separation()) + scat;
  out.lamb_scattering =
      -(3.0 / 16.0) * (resp.i_plus.imag() + resp.i_minus.imag());
  out.delta_plus = out.delta_ab;
  out.delta_minus = -out.delta_ab;
  out.error_bound = (3.0 / 16.0) * resp.bound * 2.0;
  out.converged = resp.converged;

  if (method == ShiftMethod::pv_cross_check) {
    if (!(window.lo < atoms.omega_a && atoms.omega_a < window.hi))
      throw DomainError("dispersion window must contain the transition frequency");
    // Sample the scattering spectral density Im G_AB over the window on a
    // log-spaced grid, densified around the material resonance and around
    // the pole, then feed the interpolant to the principal-value rule.
    sommerfeld::QuadraturePolicy inner = policy;
    inner.rel_tol = std::max(policy.rel_tol, window.inner_rel_tol);
    std::vector<double> grid;
    const int n_log = std::max(window.samples / 2, 8);
    for (int i = 0; i <= n_log; ++i)
      grid.push_back(window.lo *
                     std::pow(window.hi / window.lo,
                              static_cast<double>(i) / n_log));
    const int n_res = std::max(window.samples / 4, 8);
    for (int i = 0; i <= n_res; ++i) {
      grid.push_back(1.0 + 0.15 * (2.0 * i - n_res) / n_res);
      grid.push_back(atoms.omega_a *
                     (1.0 + 0.2 * (2.0 * i - n_res) / n_res));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    grid.erase(std::remove_if(grid.begin(), grid.end(),
                              [&](double w) {
                                return w < window.lo || w > window.hi;
                              }),
               grid.end());

    // fn(w') = (3 / omega_a^3) w'^2 Im G_AB^sc(w')
    //        = w'^3 gamma_ab^sc(w') / (2 pi omega_a^3).
    std::vector<double> vals;
    vals.reserve(grid.size());
    for (double w : grid) {
      const Response r = spectral_response(atoms, stack, w, inner, false);
      const double gab_sc = (3.0 / 8.0) * (r.i_plus.real() - r.i_minus.real());
      vals.push_back(w * w * w * gab_sc /
                     (2.0 * kPi * atoms.omega_a * atoms.omega_a * atoms.omega_a));
    }
    CubicSpline spline(grid, vals);
    const auto pv = sommerfeld::pv_integral(
        [&](double w) { return spline(w); }, atoms.omega_a, window.lo,
        window.hi, 1e-7, {1.0});

    // Tail estimates assuming ~1/w' falloff of the integrand beyond the
    // window and a ~w'^3 rise below it.
    const double hi_tail = vals.back() * window.hi / atoms.omega_a *
                           std::log(window.hi / (window.hi - atoms.omega_a));
    const double lo_tail =
        vals.front() * window.lo / (4.0 * (window.lo - atoms.omega_a));

    PvCrossCheck cc;
    cc.pv_value = pv.value + hi_tail + lo_tail;
    cc.kk_value = scat;
    const double floor = std::max(std::abs(cc.kk_value), 1e-12);
    cc.discrepancy = std::abs(cc.pv_value - cc.kk_value) / floor;
    cc.bound = (pv.error_bound + std::abs(hi_tail) + std::abs(lo_tail) +
                2.0 * window.inner_rel_tol * std::abs(cc.kk_value)) /
               floor;
    cc.warning = cc.discrepancy > 0.05;
    out.cross_check = cc;
  }
  return out;
}

std::pair<cdouble, cdouble> amplitudes(const RateSet& rates,
                                       const ShiftSet& shifts, double t) {
  if (t < 0.0) throw DomainError("amplitudes requires t >= 0");
  rates.validate();
  const double inv_sqrt2 = 0.70710678118654752440;
  const cdouble ep =
      std::exp(cdouble(-0.5 * rates.gamma_plus, shifts.delta_plus) * t);
  const cdouble em =
      std::exp(cdouble(-0.5 * rates.gamma_minus, shifts.delta_minus) * t);
  return {inv_sqrt2 * ep, inv_sqrt2 * em};
}

}  // namespace obh::dynamics
