#include "obhgreen/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace obh::entanglement {
namespace {

using Mat4 = std::array<std::array<cdouble, 4>, 4>;

// Product-basis assembly, ordering {|uu>, |ul>, |lu>, |ll>}.
Mat4 product_basis(const TwoAtomState& s) {
  Mat4 rho{};
  rho[1][1] = 0.5 * (s.rho_pp + s.rho_mm + 2.0 * s.rho_pm.real());
  rho[2][2] = 0.5 * (s.rho_pp + s.rho_mm - 2.0 * s.rho_pm.real());
  rho[1][2] = 0.5 * (s.rho_pp - s.rho_mm -
                     cdouble(0.0, 2.0) * s.rho_pm.imag());
  rho[2][1] = std::conj(rho[1][2]);
  rho[3][3] = s.rho_ll;
  return rho;
}

// Partial transpose over atom A: with basis index 2a + b (a the A state),
// M'[2a+b][2c+d] = M[2c+b][2a+d].
Mat4 partial_transpose_a(const Mat4& m) {
  Mat4 out{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          out[2 * a + b][2 * c + d] = m[2 * c + b][2 * a + d];
  return out;
}

// Cyclic complex Jacobi eigenvalues of a 4x4 Hermitian matrix.
std::array<double, 4> hermitian_eigenvalues(Mat4 m) {
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off += std::norm(m[p][q]);
    if (off < 1e-30) break;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        const cdouble apq = m[p][q];
        if (std::abs(apq) < 1e-18) continue;
        const double app = m[p][p].real();
        const double aqq = m[q][q].real();
        // Unitary rotation diag(c, c) with phase that annihilates m[p][q].
        const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), aqq - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cdouble phase = apq / std::abs(apq);
        const cdouble sp = s * phase;
        for (int k = 0; k < 4; ++k) {
          const cdouble mkp = m[k][p];
          const cdouble mkq = m[k][q];
          m[k][p] = c * mkp - std::conj(sp) * mkq;
          m[k][q] = sp * mkp + c * mkq;
        }
        for (int k = 0; k < 4; ++k) {
          const cdouble mpk = m[p][k];
          const cdouble mqk = m[q][k];
          m[p][k] = c * mpk - sp * mqk;
          m[q][k] = std::conj(sp) * mpk + c * mqk;
        }
      }
  }
  std::array<double, 4> ev = {m[0][0].real(), m[1][1].real(), m[2][2].real(),
                              m[3][3].real()};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

void TwoAtomState::validate() const {
  if (rho_pp < -1e-12 || rho_mm < -1e-12 || rho_ll < -1e-12)
    throw InvariantViolation("negative population");
  if (std::abs(rho_pp + rho_mm + rho_ll - 1.0) > 1e-10)
    throw InvariantViolation("density matrix trace differs from one");
}

TwoAtomState density_matrix(cdouble c_plus, cdouble c_minus, double t) {
  const double np = std::norm(c_plus);
  const double nm = std::norm(c_minus);
  if (np + nm > 1.0 + 1e-12)
    throw InvariantViolation("amplitude norm exceeds one");
  TwoAtomState s;
  s.rho_pp = np;
  s.rho_mm = nm;
  s.rho_pm = c_plus * std::conj(c_minus);
  s.rho_ll = std::max(0.0, 1.0 - np - nm);
  s.t = t;
  return s;
}

std::array<double, 4> rho_eigenvalues(const TwoAtomState& s) {
  return hermitian_eigenvalues(product_basis(s));
}

std::array<double, 4> pt_eigenvalues(const TwoAtomState& s) {
  return hermitian_eigenvalues(partial_transpose_a(product_basis(s)));
}

double negativity_eigen(const TwoAtomState& s) {
  double acc = 0.0;
  for (double mu : pt_eigenvalues(s)) acc += std::abs(mu) - mu;
  return 0.5 * acc;
}

double negativity_closed(const dynamics::RateSet& rates,
                         const dynamics::ShiftSet& shifts, double t) {
  if (t < 0.0) throw DomainError("negativity_closed requires t >= 0");
  rates.validate();
  const double rho_pp = 0.5 * std::exp(-rates.gamma_plus * t);
  const double rho_mm = 0.5 * std::exp(-rates.gamma_minus * t);
  const double rho_ll = 1.0 - rho_pp - rho_mm;
  const double pop = rho_pp + rho_mm;
  const double coh = std::exp(-2.0 * rates.gamma * t) *
                     std::pow(std::cos(2.0 * shifts.delta_ab * t), 2);
  const double arg = std::max(0.0, rho_ll * rho_ll + pop * pop - coh);
  return std::max(0.0, 0.5 * (std::sqrt(arg) - rho_ll));
}

NegativityTrace negativity_trace(const dynamics::RateSet& rates,
                                 const dynamics::ShiftSet& shifts,
                                 double t_max, int samples) {
  if (!(t_max > 0.0) || samples < 2)
    throw DomainError("trace requires t_max > 0 and samples >= 2");
  NegativityTrace trace;
  trace.reserve(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = t_max * i / (samples - 1);
    const auto [cp, cm] = dynamics::amplitudes(rates, shifts, t);
    const TwoAtomState s = density_matrix(cp, cm, t);
    TraceSample row;
    row.t = t;
    row.rho_pp = s.rho_pp;
    row.rho_mm = s.rho_mm;
    row.rho_ll = s.rho_ll;
    row.neg_eigen = negativity_eigen(s);
    row.neg_closed = negativity_closed(rates, shifts, t);
    trace.push_back(row);
  }
  return trace;
}

}  // namespace obh::entanglement
