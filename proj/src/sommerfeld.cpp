// Adaptive Gauss-Kronrod machinery and the branch-point contour.

#include "obhgreen/sommerfeld.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace obh::sommerfeld {
namespace {

constexpr double kPi = 3.14159265358979323846;

// 7-15 Gauss-Kronrod pair (QUADPACK dqk15 abscissae/weights).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
double vnorm(const T& v) {
  return std::abs(v);
}
template <>
double vnorm(const std::array<cdouble, 2>& v) {
  return std::max(std::abs(v[0]), std::abs(v[1]));
}

template <typename T>
void vzero(T& v) {
  v = T{};
}

template <typename T>
void vaxpy(T& acc, double w, const T& v) {
  acc += w * v;
}
template <>
void vaxpy(std::array<cdouble, 2>& acc, double w,
           const std::array<cdouble, 2>& v) {
  acc[0] += w * v[0];
  acc[1] += w * v[1];
}

template <typename T>
T vscale(const T& v, double s) {
  return s * v;
}
template <>
std::array<cdouble, 2> vscale(const std::array<cdouble, 2>& v, double s) {
  return {s * v[0], s * v[1]};
}

template <typename T>
T vsub(const T& a, const T& b) {
  return a - b;
}
template <>
std::array<cdouble, 2> vsub(const std::array<cdouble, 2>& a,
                            const std::array<cdouble, 2>& b) {
  return {a[0] - b[0], a[1] - b[1]};
}

template <typename T>
struct Panel {
  double a = 0.0, b = 0.0;
  T value{};
  double error = 0.0;
};

template <typename T, typename F>
Panel<T> gk15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T kron{}, gauss{};
  vzero(kron);
  vzero(gauss);
  for (int i = 0; i < 8; ++i) {
    if (i == 7) {
      const T fc = f(mid);
      vaxpy(kron, kWgk[7], fc);
      vaxpy(gauss, kWg[3], fc);
      break;
    }
    const T lo = f(mid - half * kXgk[i]);
    const T hi = f(mid + half * kXgk[i]);
    vaxpy(kron, kWgk[i], lo);
    vaxpy(kron, kWgk[i], hi);
    if (i % 2 == 1) {
      vaxpy(gauss, kWg[i / 2], lo);
      vaxpy(gauss, kWg[i / 2], hi);
    }
  }
  Panel<T> p;
  p.a = a;
  p.b = b;
  p.value = vscale(kron, half);
  p.error = vnorm(vsub(p.value, vscale(gauss, half)));
  return p;
}

// Adaptive refinement over a set of seed intervals for f on [seeds].
// Terminates when the summed error bound drops below
// max(rel_tol * |total|, abs_floor).
template <typename T>
struct AdaptState {
  T total{};
  double error = 0.0;
  bool converged = true;
  long evaluations = 0;
};

template <typename T, typename F>
AdaptState<T> adapt(const F& f, std::vector<double> seeds, double rel_tol,
                    double abs_floor, int max_panels) {
  auto cmp = [](const Panel<T>& x, const Panel<T>& y) {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  };
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, decltype(cmp)> heap(cmp);
  AdaptState<T> st;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  T running{};
  vzero(running);
  double err_sum = 0.0;
  for (size_t i = 0; i + 1 < seeds.size(); ++i) {
    if (!(seeds[i + 1] > seeds[i])) continue;
    Panel<T> p = gk15<T>(f, seeds[i], seeds[i + 1]);
    vaxpy(running, 1.0, p.value);
    err_sum += p.error;
    heap.push(std::move(p));
    st.evaluations += 15;
  }
  int panels = static_cast<int>(heap.size());
  std::vector<Panel<T>> done;
  auto target = [&]() { return std::max(rel_tol * vnorm(running), abs_floor); };
  while (err_sum > target() && panels < max_panels && !heap.empty()) {
    Panel<T> worst = heap.top();
    heap.pop();
    if (worst.error <= 0.0 ||
        worst.b - worst.a < 1e-14 * (std::abs(worst.b) + 1e-300)) {
      done.push_back(worst);
      continue;
    }
    vaxpy(running, -1.0, worst.value);
    err_sum -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    for (Panel<T> child : {gk15<T>(f, worst.a, mid), gk15<T>(f, mid, worst.b)}) {
      vaxpy(running, 1.0, child.value);
      err_sum += child.error;
      heap.push(std::move(child));
    }
    st.evaluations += 30;
    ++panels;
  }
  // Deterministic final summation in interval order.
  std::vector<Panel<T>> all = std::move(done);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
  T v{};
  vzero(v);
  double e = 0.0;
  for (const auto& p : all) {
    vaxpy(v, 1.0, p.value);
    e += p.error;
  }
  st.total = v;
  st.error = e;
  st.converged = e <= std::max(rel_tol * vnorm(v), abs_floor) * 1.0001;
  return st;
}

template <typename T>
struct ContourResult {
  T value{};
  double error = 0.0;
  bool converged = true;
  long evaluations = 0;
};

// Shared contour logic for scalar and pair integrands.
template <typename T, typename F>
ContourResult<T> integrate_contour(const F& f, double k1,
                                   const QuadraturePolicy& policy,
                                   const std::vector<double>& breakpoints) {
  policy.validate();
  if (!(k1 > 0.0)) throw DomainError("integrate_h requires k1 > 0");
  const double w = policy.branch_window * k1;

  ContourResult<T> out;
  vzero(out.value);

  // Segment [0, k1 - w], geometrically refined toward the branch point.
  std::vector<double> below = {0.0,          0.5 * k1,      0.8 * k1,
                               0.95 * k1,    0.99 * k1,     k1 - 10.0 * w,
                               k1 - w};
  for (double b : breakpoints)
    if (b > 0.0 && b < k1 - w) below.push_back(b);
  below.erase(std::remove_if(below.begin(), below.end(),
                             [&](double x) { return x < 0.0 || x > k1 - w; }),
              below.end());
  below.push_back(k1 - w);
  below.push_back(0.0);

  // Branch-point detour h = k1 + w e^{i theta}.  With the pointwise
  // Im eta >= 0 square root used throughout the integrands, the analytic
  // continuation between the two real segments is the theta in [-pi, 0]
  // semicircle (the other side crosses the cut of that branch).
  const cdouble iw(0.0, 1.0);
  auto arc = [&](double theta) -> T {
    const cdouble h = k1 + w * std::exp(iw * theta);
    const cdouble jac = iw * w * std::exp(iw * theta);
    T v = f(h);
    if constexpr (std::is_same_v<T, cdouble>) {
      return jac * v;
    } else {
      return T{jac * v[0], jac * v[1]};
    }
  };

  // Segment above the branch point up to the start of the tail.
  const double hi0 = std::max(1.5 * k1, k1 + 20.0 * w);
  std::vector<double> above = {k1 + w, k1 + 10.0 * w, 1.02 * k1, 1.05 * k1,
                               1.1 * k1, 1.25 * k1, hi0};
  for (double b : breakpoints)
    if (b > k1 + w && b < hi0) above.push_back(b);
  above.erase(std::remove_if(above.begin(), above.end(),
                             [&](double x) { return x < k1 + w || x > hi0; }),
              above.end());
  above.push_back(k1 + w);
  above.push_back(hi0);

  auto real_f = [&](double h) { return f(cdouble(h, 0.0)); };

  // Coarse magnitude estimate so each segment refines against the global
  // scale rather than its own (possibly tiny) value.
  auto coarse_norm = [&](auto&& g, const std::vector<double>& pts) {
    std::vector<double> s = pts;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    double acc = 0.0;
    for (size_t i = 0; i + 1 < s.size(); ++i)
      acc += vnorm(gk15<T>(g, s[i], s[i + 1]).value);
    return acc;
  };
  const std::vector<double> arc_seeds = {-kPi, -0.5 * kPi, 0.0};
  const double global_scale = coarse_norm(real_f, below) +
                              coarse_norm(arc, arc_seeds) +
                              coarse_norm(real_f, above);
  const double floor = 0.3 * policy.rel_tol * global_scale;

  auto st_below = adapt<T>(real_f, below, policy.rel_tol, floor,
                           policy.max_panels / 2);
  auto st_arc = adapt<T>(arc, arc_seeds, policy.rel_tol, floor,
                         policy.max_panels / 8);
  auto st_above = adapt<T>(real_f, above, policy.rel_tol, floor,
                           policy.max_panels / 2);

  vaxpy(out.value, 1.0, st_below.total);
  vaxpy(out.value, 1.0, st_arc.total);
  vaxpy(out.value, 1.0, st_above.total);
  out.error = st_below.error + st_arc.error + st_above.error;
  out.converged = st_below.converged && st_arc.converged && st_above.converged;
  out.evaluations = st_below.evaluations + st_arc.evaluations + st_above.evaluations;

  // Geometric tail extension with the evanescent truncation rule.
  double lo = hi0;
  int quiet = 0;
  const double h_cap = std::sqrt(k1 * k1 + policy.eta_cap * policy.eta_cap);
  double last_block = 0.0;
  bool capped = false;
  while (quiet < 2) {
    if (lo >= h_cap) {
      capped = true;
      break;
    }
    const double hi = std::min(std::max(lo * 1.5, lo + k1), h_cap);
    auto st = adapt<T>(real_f, {lo, 0.5 * (lo + hi), hi}, policy.rel_tol,
                       policy.rel_tol * vnorm(out.value), policy.max_panels / 8);
    vaxpy(out.value, 1.0, st.total);
    out.error += st.error;
    out.evaluations += st.evaluations;
    last_block = vnorm(st.total);
    if (last_block <= policy.rel_tol * vnorm(out.value) + 1e-300)
      ++quiet;
    else
      quiet = 0;
    lo = hi;
  }
  if (capped) {
    // Truncated-tail estimate; a cap that cuts off a still-significant tail
    // is a non-convergence.
    out.error += last_block;
    if (last_block > policy.rel_tol * vnorm(out.value)) out.converged = false;
  }

  out.value = vscale(out.value, 2.0);  // even symmetry in h
  out.error *= 2.0;
  return out;
}

}  // namespace

void QuadraturePolicy::validate() const {
  if (!(rel_tol > 0.0)) throw InvariantViolation("rel_tol must be positive");
  if (!(branch_window > 0.0) || branch_window > 0.05)
    throw InvariantViolation("branch_window must lie in (0, 0.05]");
  if (n_max < 1) throw InvariantViolation("n_max must be >= 1");
  if (n_max > 80)
    throw InvariantViolation("n_max exceeds the cylinder-function envelope");
  if (!(eta_cap > 0.0)) throw InvariantViolation("eta_cap must be positive");
}

IntegralResult integrate_h(const std::function<cdouble(cdouble)>& term,
                           double k1, const QuadraturePolicy& policy,
                           const std::vector<double>& breakpoints) {
  auto r = integrate_contour<cdouble>(term, k1, policy, breakpoints);
  return {r.value, r.error, r.converged, r.evaluations};
}

IntegralPairResult integrate_h_pair(
    const std::function<std::array<cdouble, 2>(cdouble)>& term, double k1,
    const QuadraturePolicy& policy, const std::vector<double>& breakpoints) {
  auto r = integrate_contour<std::array<cdouble, 2>>(term, k1, policy,
                                                     breakpoints);
  return {r.value, r.error, r.converged, r.evaluations};
}

IntegralResult integrate_interval(const std::function<cdouble(double)>& f,
                                  double a, double b, double rel_tol,
                                  int max_panels) {
  if (!(rel_tol > 0.0)) throw InvariantViolation("rel_tol must be positive");
  const double mid = 0.5 * (a + b);
  auto st = adapt<cdouble>(f, {a, mid, b}, rel_tol, 0.0, max_panels);
  return {st.total, st.error, st.converged, st.evaluations};
}

ModeSumResult sum_modes(const std::function<cdouble(int)>& term,
                        const QuadraturePolicy& policy) {
  policy.validate();
  ModeSumResult out;
  int quiet = 0;
  for (int n = 0; n <= policy.n_max; ++n) {
    const cdouble t = term(n);
    const double weight = (n == 0) ? 1.0 : 2.0;
    out.value += weight * t;
    out.n_used = n;
    const double scale = std::abs(out.value);
    if (weight * std::abs(t) <= policy.n_stop_rel * std::max(scale, 1e-300))
      ++quiet;
    else
      quiet = 0;
    if (quiet >= policy.n_stop_consecutive) return out;
  }
  out.hit_cap = true;
  return out;
}

PvResult pv_integral(const std::function<double(double)>& fn, double pole,
                     double lo, double hi, double rel_tol,
                     const std::vector<double>& breakpoints) {
  if (!(lo < pole && pole < hi))
    throw DomainError("pv_integral: pole must lie inside the window");
  const double f_pole = fn(pole);
  const double d = 1e-6 * (hi - lo);
  const double f_deriv = (fn(pole + d) - fn(pole - d)) / (2.0 * d);
  const double cut = 1e-9 * (hi - lo);
  auto g = [&](double x) -> double {
    const double dx = x - pole;
    if (std::abs(dx) < cut) return f_deriv;
    return (fn(x) - f_pole) / dx;
  };
  std::vector<double> seeds = {lo,
                               0.5 * (lo + pole),
                               pole - 1e-3 * (hi - lo),
                               pole,
                               pole + 1e-3 * (hi - lo),
                               0.5 * (pole + hi),
                               hi};
  for (double b : breakpoints)
    if (b > lo && b < hi) seeds.push_back(b);
  auto st = adapt<double>(g, seeds, rel_tol, 0.0, 4000);
  PvResult out;
  out.value = st.total + f_pole * std::log((hi - pole) / (pole - lo));
  out.error_bound = st.error;
  out.converged = st.converged;
  return out;
}

}  // namespace obh::sommerfeld
