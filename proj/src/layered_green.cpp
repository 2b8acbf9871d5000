#include "obhgreen/layered_green.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "scaled4.hpp"

namespace obh::green {
namespace {

using detail::Mat4d;
using detail::Sc;
using detail::ScMat4;

constexpr double kPi = 3.14159265358979323846;
constexpr cdouble kI(0.0, 1.0);

cdouble branch_eta(cdouble eta_sq) {
  cdouble eta = std::sqrt(eta_sq);
  if (eta.imag() < 0.0) eta = -eta;
  if (eta.imag() == 0.0 && eta.real() < 0.0) eta = -eta;
  return eta;
}

// Scaled transmission matrix of one layer at one radius, plus the slot
// scale exponents: column c of the true matrix carries exp(lambda[c]).
struct ScaledF {
  Mat4d m{};                     // scaled entries (double-representable)
  std::array<cdouble, 4> lambda{};  // natural-log column scales
};

ScaledF scaled_transmission(Polarization pol, const LayerMode& lm, int n,
                            double radius,
                            const specfun::ScaledLadder& lad) {
  const size_t k = static_cast<size_t>(n);
  const cdouble z = lm.eta * radius;
  if (z == cdouble(0.0, 0.0))
    throw SingularArgument("transmission matrix at eta a = 0 (branch point)");
  const cdouble ht = lad.h[k];
  const cdouble dht = lm.eta * lad.hp[k];
  const cdouble jt = lad.j[k];
  const cdouble djt = lm.eta * lad.jp[k];
  const cdouble zeta = lm.zeta;
  const cdouble zr = zeta / radius;
  const cdouble tau = lm.tau;
  const cdouble ell = lm.ell;

  ScaledF f;
  if (pol == Polarization::V) {
    f.m = {{{zr * ht, dht, zr * jt, djt},
            {ell * ht, 0.0, ell * jt, 0.0},
            {tau * dht, -zr * tau * ht, tau * djt, -zr * tau * jt},
            {0.0, tau * ell * ht, 0.0, tau * ell * jt}}};
  } else {
    f.m = {{{dht, -zr * ht, djt, -zr * jt},
            {0.0, ell * ht, 0.0, ell * jt},
            {zr * tau * ht, tau * dht, zr * tau * jt, tau * djt},
            {tau * ell * ht, 0.0, tau * ell * jt, 0.0}}};
  }
  const cdouble lam_h = kI * z;             // H_k(z) = h[k] e^{i z}
  const cdouble lam_j = std::abs(z.imag());  // J_k(z) = j[k] e^{|Im z|}
  f.lambda = {lam_h, lam_h, lam_j, lam_j};
  return f;
}

// True T_f in scaled representation from the two sides of one interface.
ScMat4 scaled_interface_transfer(const ScaledF& inner_side,
                                 const ScaledF& own_side,
                                 double* cond_out = nullptr) {
  if (inner_side.m == own_side.m && inner_side.lambda == own_side.lambda) {
    // Identical materials on both sides: the transfer is the identity
    // exactly, not merely to elimination roundoff.
    if (cond_out) *cond_out = 1.0;
    return detail::sc_identity();
  }
  std::array<int, 4> col_scale{};
  double cond = 0.0;
  const Mat4d x = detail::solve4(inner_side.m, own_side.m, col_scale, cond);
  if (cond_out) *cond_out = cond;
  if (cond > 1e12)
    throw IllConditioned("interface transmission matrix ill-conditioned", cond);
  ScMat4 t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Sc e = detail::sc_make(x[i][j], -col_scale[static_cast<size_t>(i)]);
      t[i][j] = detail::sc_mul_exp(
          e, own_side.lambda[static_cast<size_t>(j)] -
                 inner_side.lambda[static_cast<size_t>(i)]);
    }
  return t;
}

using ScRows = std::array<std::array<Sc, 4>, 2>;

Sc rows_coefficient(const ScRows& rows) {
  const Sc minus_one = detail::sc_make(cdouble(-1.0, 0.0));
  const Sc num = detail::sc_add(
      detail::sc_mul(rows[0][1], rows[1][2]),
      detail::sc_mul(detail::sc_mul(rows[1][1], rows[0][2]), minus_one));
  const Sc t00t11 = detail::sc_mul(rows[0][0], rows[1][1]);
  const Sc t01t10 = detail::sc_mul(rows[0][1], rows[1][0]);
  const Sc den = detail::sc_add(t00t11, detail::sc_mul(t01t10, minus_one));
  const double ref = std::max(detail::sc_log2_abs(t00t11),
                              detail::sc_log2_abs(t01t10));
  if (detail::sc_log2_abs(den) < ref - 46.5)
    throw VanishingDenominator(
        "scattering-coefficient denominator vanishes (resonance pole)");
  return detail::sc_div(num, den);
}

Sc cascade_coefficient(const ScMat4& total) {
  return rows_coefficient({total[0], total[1]});
}

int ladder_orders(int n_max) { return std::max(n_max, 1); }

}  // namespace

ModeParams mode_params(const medium::LayerStack& stack, int n, cdouble h,
                       cdouble omega) {
  if (n < 0) throw DomainError("mode order must be nonnegative");
  ModeParams mp;
  mp.n = n;
  mp.h = h;
  mp.omega = omega;
  mp.layers.reserve(static_cast<size_t>(stack.regions()));
  for (int j = 1; j <= stack.regions(); ++j) {
    const cdouble eps = stack.eps(j, omega);
    LayerMode lm;
    lm.tau = std::sqrt(eps);
    lm.k = lm.tau * omega;
    lm.eta = branch_eta(lm.k * lm.k - h * h);
    lm.zeta = kI * h * static_cast<double>(n) / lm.k;
    lm.ell = lm.eta * lm.eta / lm.k;
    mp.layers.push_back(lm);
  }
  return mp;
}

Mat4 transmission_matrix(Polarization pol, int layer, double radius,
                         const ModeParams& mode) {
  if (!(radius > 0.0)) throw DomainError("interface radius must be positive");
  const LayerMode& lm = mode.layer(layer);
  const cdouble z = lm.eta * radius;
  if (z == cdouble(0.0, 0.0))
    throw SingularArgument("transmission matrix at eta a = 0 (branch point)");
  const auto lad = specfun::scaled_ladder(ladder_orders(mode.n), z);
  const ScaledF f = scaled_transmission(pol, lm, mode.n, radius, lad);
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cdouble v =
          f.m[i][j] * std::exp(f.lambda[static_cast<size_t>(j)]);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("transmission matrix entry overflows double");
      out[i][j] = v;
    }
  return out;
}

Mat4 interface_transfer(Polarization pol, int interface_f,
                        const medium::LayerStack& stack,
                        const ModeParams& mode) {
  if (interface_f < 1 || interface_f > stack.interfaces())
    throw DomainError("interface index outside stack");
  const double a = stack.radii()[static_cast<size_t>(interface_f) - 1];
  const auto& lm_own = mode.layer(interface_f);
  const auto& lm_inner = mode.layer(interface_f + 1);
  const auto lad_own =
      specfun::scaled_ladder(ladder_orders(mode.n), lm_own.eta * a);
  const auto lad_inner =
      specfun::scaled_ladder(ladder_orders(mode.n), lm_inner.eta * a);
  const ScaledF f_own = scaled_transmission(pol, lm_own, mode.n, a, lad_own);
  const ScaledF f_inner =
      scaled_transmission(pol, lm_inner, mode.n, a, lad_inner);
  const ScMat4 t = scaled_interface_transfer(f_inner, f_own);
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out[i][j] = detail::sc_to_cdouble_checked(t[i][j], "interface_transfer");
  return out;
}

TransferCascade transfer_cascade(Polarization pol,
                                 const medium::LayerStack& stack,
                                 const ModeParams& mode) {
  TransferCascade c;
  c.pol = pol;
  for (int f = 1; f <= stack.interfaces(); ++f)
    c.interface_matrices.push_back(interface_transfer(pol, f, stack, mode));
  Mat4 total{};
  for (int i = 0; i < 4; ++i) total[i][i] = 1.0;
  for (const Mat4& t : c.interface_matrices) {
    Mat4 next{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        cdouble acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += t[i][k] * total[k][j];
        next[i][j] = acc;
      }
    total = next;
  }
  c.total = total;
  return c;
}

namespace {

Sc scaled_coefficient(Polarization pol, const medium::LayerStack& stack,
                      const ModeParams& mode) {
  ScMat4 total = detail::sc_identity();
  for (int f = 1; f <= stack.interfaces(); ++f) {
    const double a = stack.radii()[static_cast<size_t>(f) - 1];
    const auto& lm_own = mode.layer(f);
    const auto& lm_inner = mode.layer(f + 1);
    const auto lad_own =
        specfun::scaled_ladder(ladder_orders(mode.n), lm_own.eta * a);
    const auto lad_inner =
        specfun::scaled_ladder(ladder_orders(mode.n), lm_inner.eta * a);
    const ScaledF f_own = scaled_transmission(pol, lm_own, mode.n, a, lad_own);
    const ScaledF f_inner =
        scaled_transmission(pol, lm_inner, mode.n, a, lad_inner);
    total = detail::sc_matmul(scaled_interface_transfer(f_inner, f_own), total);
  }
  return cascade_coefficient(total);
}

}  // namespace

cdouble scattering_coefficient(Polarization pol,
                               const medium::LayerStack& stack,
                               const ModeParams& mode) {
  return detail::sc_to_cdouble_checked(scaled_coefficient(pol, stack, mode),
                                       "scattering_coefficient");
}

ScatterCoeffs scattering_coefficients(const medium::LayerStack& stack,
                                      const ModeParams& mode) {
  return {scattering_coefficient(Polarization::H, stack, mode),
          scattering_coefficient(Polarization::V, stack, mode)};
}

struct ModeWorkspace::Impl {
  medium::LayerStack stack;
  cdouble omega;
  int n_max;
  double r1 = 0.0, r2 = 0.0;

  cdouble h{};
  bool h_set = false;
  int n_have = -1;     // current ladder depth (lazily grown up to n_max)
  int depth_hint = 12;  // depth the previous node ended up needing
  std::vector<LayerMode> layers;                    // per layer
  std::vector<specfun::ScaledLadder> lad_own;       // per interface
  std::vector<specfun::ScaledLadder> lad_inner;     // per interface
  specfun::ScaledLadder lad_r1, lad_r2;
  std::vector<std::optional<Sc>> memo_v, memo_h;

  Impl(const medium::LayerStack& s, cdouble w, int nmax)
      : stack(s), omega(w), n_max(nmax) {
    if (nmax < 0 || nmax > specfun::kMaxOrder)
      throw DomainError("n_max outside cylinder-function envelope");
  }

  void set_h(cdouble hh) {
    h = hh;
    h_set = true;
    if (n_have > 0) depth_hint = n_have;
    n_have = -1;
    layers.clear();
    for (int j = 1; j <= stack.regions(); ++j) {
      const cdouble eps = stack.eps(j, omega);
      LayerMode lm;
      lm.tau = std::sqrt(eps);
      lm.k = lm.tau * omega;
      lm.eta = branch_eta(lm.k * lm.k - h * h);
      lm.zeta = kI * h / lm.k;  // per unit order; scaled by n when used
      lm.ell = lm.eta * lm.eta / lm.k;
      layers.push_back(lm);
    }
    memo_v.assign(static_cast<size_t>(n_max) + 1, std::nullopt);
    memo_h.assign(static_cast<size_t>(n_max) + 1, std::nullopt);
  }

  // Most quadrature nodes only need low orders before the mode-sum stop
  // rule fires, so the ladders start shallow and double on demand.
  void ensure_orders(int n) {
    if (!h_set) throw Error("ModeWorkspace: set_h first");
    if (n > n_max) throw DomainError("order outside workspace n_max");
    if (n <= n_have) return;
    int depth = std::max({12, depth_hint, n + 1, 2 * n_have});
    depth = std::min(depth, n_max);
    const int orders = ladder_orders(depth);
    lad_own.clear();
    lad_inner.clear();
    for (int f = 1; f <= stack.interfaces(); ++f) {
      const double a = stack.radii()[static_cast<size_t>(f) - 1];
      lad_own.push_back(specfun::scaled_ladder(
          orders, layers[static_cast<size_t>(f) - 1].eta * a));
      lad_inner.push_back(specfun::scaled_ladder(
          orders, layers[static_cast<size_t>(f)].eta * a));
    }
    if (r1 > 0.0) {
      lad_r1 = specfun::scaled_ladder(orders, layers[0].eta * r1);
      lad_r2 = specfun::scaled_ladder(orders, layers[0].eta * r2);
    }
    n_have = depth;
  }

  LayerMode with_order(const LayerMode& lm, int n) const {
    LayerMode out = lm;
    out.zeta = lm.zeta * static_cast<double>(n);
    return out;
  }

  Sc coeff(Polarization pol, int n) {
    if (!h_set) throw Error("ModeWorkspace: set_h before coeff");
    if (n < 0 || n > n_max) throw DomainError("order outside workspace n_max");
    auto& memo = (pol == Polarization::V) ? memo_v : memo_h;
    if (memo[static_cast<size_t>(n)]) return *memo[static_cast<size_t>(n)];
    ensure_orders(n);
    // Rows 0 and 1 of T_{N-1} ... T_1 are all the coefficient needs.
    ScRows rows{};
    bool first = true;
    for (int f = stack.interfaces(); f >= 1; --f) {
      const double a = stack.radii()[static_cast<size_t>(f) - 1];
      const ScaledF f_own = scaled_transmission(
          pol, with_order(layers[static_cast<size_t>(f) - 1], n), n, a,
          lad_own[static_cast<size_t>(f) - 1]);
      const ScaledF f_inner = scaled_transmission(
          pol, with_order(layers[static_cast<size_t>(f)], n), n, a,
          lad_inner[static_cast<size_t>(f) - 1]);
      const ScMat4 t = scaled_interface_transfer(f_inner, f_own);
      if (first) {
        rows[0] = t[0];
        rows[1] = t[1];
        first = false;
        continue;
      }
      ScRows next{};
      for (int r = 0; r < 2; ++r)
        for (int j = 0; j < 4; ++j) {
          Sc acc{};
          for (int k = 0; k < 4; ++k)
            acc = detail::sc_add(acc, detail::sc_mul(rows[r][k], t[k][j]));
          next[r][j] = acc;
        }
      rows = next;
    }
    const Sc c = rows_coefficient(rows);
    memo[static_cast<size_t>(n)] = c;
    return c;
  }
};

ModeWorkspace::ModeWorkspace(const medium::LayerStack& stack, cdouble omega,
                             int n_max)
    : impl_(std::make_unique<Impl>(stack, omega, n_max)) {}
ModeWorkspace::~ModeWorkspace() = default;

void ModeWorkspace::set_field_radii(double r1, double r2) {
  if (!(r1 > impl_->stack.outer_radius()) ||
      !(r2 > impl_->stack.outer_radius()))
    throw DomainError("field radii must lie outside the outer interface");
  impl_->r1 = r1;
  impl_->r2 = r2;
  impl_->n_have = -1;  // field ladders must be rebuilt
}

void ModeWorkspace::set_h(cdouble h) { impl_->set_h(h); }

cdouble ModeWorkspace::k1() const { return impl_->layers.at(0).k; }
cdouble ModeWorkspace::eta1() const { return impl_->layers.at(0).eta; }
int ModeWorkspace::n_max() const { return impl_->n_max; }

ScaledCoeff ModeWorkspace::coeff(Polarization pol, int n) {
  const Sc c = impl_->coeff(pol, n);
  return {c.m, c.e2};
}

cdouble ModeWorkspace::scattered_product(int n) {
  if (!(impl_->r1 > 0.0))
    throw Error("ModeWorkspace: set_field_radii before scattered_product");
  const Sc c = impl_->coeff(Polarization::V, n);
  impl_->ensure_orders(n);
  const size_t k = static_cast<size_t>(n);
  Sc p = detail::sc_mul(c, detail::sc_make(impl_->lad_r1.h[k]));
  p = detail::sc_mul(p, detail::sc_make(impl_->lad_r2.h[k]));
  p = detail::sc_mul_exp(
      p, kI * impl_->layers[0].eta * (impl_->r1 + impl_->r2));
  return detail::sc_to_cdouble_checked(p, "scattered_product");
}

cdouble ModeWorkspace::vacuum_product(int n) {
  if (!(impl_->r1 > 0.0))
    throw Error("ModeWorkspace: set_field_radii before vacuum_product");
  impl_->ensure_orders(n);
  const size_t k = static_cast<size_t>(n);
  const bool first_smaller = impl_->r1 <= impl_->r2;
  const auto& lad_lo = first_smaller ? impl_->lad_r1 : impl_->lad_r2;
  const auto& lad_hi = first_smaller ? impl_->lad_r2 : impl_->lad_r1;
  const double r_lo = std::min(impl_->r1, impl_->r2);
  const double r_hi = std::max(impl_->r1, impl_->r2);
  const cdouble eta = impl_->layers[0].eta;
  Sc p = detail::sc_mul(detail::sc_make(lad_lo.j[k]),
                        detail::sc_make(lad_hi.h[k]));
  p = detail::sc_mul_exp(
      p, cdouble(std::abs((eta * r_lo).imag()), 0.0) + kI * eta * r_hi);
  return detail::sc_to_cdouble_checked(p, "vacuum_product");
}

std::vector<double> guided_band_breakpoints(const medium::LayerStack& stack,
                                            double omega, int count) {
  double k1 = omega;
  double kmax = 0.0;
  for (int j = 1; j <= stack.regions(); ++j) {
    const cdouble k = std::sqrt(stack.eps(j, omega)) * omega;
    kmax = std::max(kmax, k.real());
  }
  std::vector<double> pts;
  if (kmax <= k1) return pts;
  const double hi = 1.05 * kmax;
  for (int i = 1; i < count; ++i)
    pts.push_back(k1 + (hi - k1) * i / count);
  return pts;
}

GreenResult scattering_green_zz(double r, double phi, double z, double rp,
                                double phip, double zp, double omega,
                                const medium::LayerStack& stack,
                                const sommerfeld::QuadraturePolicy& policy) {
  policy.validate();
  if (!(omega > 0.0)) throw DomainError("scattering_green_zz requires omega > 0");
  ModeWorkspace ws(stack, omega, policy.n_max);
  ws.set_field_radii(r, rp);
  const double dphi = phi - phip;
  const double dz = z - zp;

  GreenResult out;
  auto integrand = [&](cdouble h) -> cdouble {
    ws.set_h(h);
    const cdouble k1 = ws.k1();
    const cdouble eta = ws.eta1();
    auto term = [&](int n) {
      return ws.scattered_product(n) * std::cos(n * dphi);
    };
    const auto modes = sommerfeld::sum_modes(term, policy);
    if (modes.hit_cap) out.hit_mode_cap = true;
    return (eta * eta / (k1 * k1)) * modes.value * std::cos(h * dz);
  };
  const auto bp = guided_band_breakpoints(stack, omega);
  const auto integral =
      sommerfeld::integrate_h(integrand, omega, policy, bp);
  const cdouble pref = kI / (8.0 * kPi);
  out.value = pref * integral.value;
  out.error_bound = integral.error_bound / (8.0 * kPi);
  out.converged = integral.converged;
  out.evaluations = integral.evaluations;
  return out;
}

cdouble freespace_green_zz(double separation, double omega) {
  if (!(separation > 0.0))
    throw SingularArgument("freespace_green_zz is singular at R = 0");
  if (!(omega > 0.0)) throw DomainError("freespace_green_zz requires omega > 0");
  const double x = omega * separation;
  const cdouble ix = kI * x;
  return std::exp(ix) / (4.0 * kPi * separation) *
         (1.0 + kI / x - 1.0 / (x * x));
}

}  // namespace obh::green
