#include "single_interface_oracle.hpp"

#include <array>
#include <cmath>

#include "obhgreen/specfun.hpp"

namespace obh::testsupport {
namespace {

using cdouble = std::complex<double>;

cdouble branch_eta(cdouble eta_sq) {
  cdouble eta = std::sqrt(eta_sq);
  if (eta.imag() < 0.0) eta = -eta;
  if (eta.imag() == 0.0 && eta.real() < 0.0) eta = -eta;
  return eta;
}

// Dense 4x4 Gaussian elimination with partial pivoting (local copy so the
// oracle does not share the production solver).
std::array<cdouble, 4> solve(std::array<std::array<cdouble, 4>, 4> a,
                             std::array<cdouble, 4> b) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int i = col + 1; i < 4; ++i)
      if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int i = col + 1; i < 4; ++i) {
      const cdouble f = a[i][col] / a[col][col];
      for (int j = col; j < 4; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  std::array<cdouble, 4> x{};
  for (int i = 3; i >= 0; --i) {
    cdouble s = b[i];
    for (int j = i + 1; j < 4; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

SingleInterfaceCoeffs single_interface_coeffs(int n, double h, double omega,
                                              double a, cdouble eps2) {
  const cdouble i1(0.0, 1.0);
  const cdouble k1 = omega;
  const cdouble k2 = std::sqrt(eps2) * omega;
  const cdouble eta1 = branch_eta(k1 * k1 - h * h);
  const cdouble eta2 = branch_eta(k2 * k2 - h * h);

  using specfun::deriv_pair;
  using specfun::Kind;
  const auto J = deriv_pair(Kind::J, n, eta1 * a);
  const auto H = deriv_pair(Kind::H1, n, eta1 * a);
  const auto J2 = deriv_pair(Kind::J, n, eta2 * a);

  const cdouble ihn = i1 * h * static_cast<double>(n);

  // Unknowns (C_V, C_M, D_V, D_M); rows are continuity of
  // E_z, E_phi, H_z, H_phi at r = a.
  std::array<std::array<cdouble, 4>, 4> m{};
  m[0] = {eta1 * eta1 / k1 * H.value, 0.0, -eta2 * eta2 / k2 * J2.value, 0.0};
  m[1] = {-ihn / (k1 * a) * H.value, -eta1 * H.derivative,
          ihn / (k2 * a) * J2.value, eta2 * J2.derivative};
  m[2] = {0.0, eta1 * eta1 * H.value, 0.0, -eta2 * eta2 * J2.value};
  m[3] = {-k1 * eta1 * H.derivative, ihn / a * H.value,
          k2 * eta2 * J2.derivative, -ihn / a * J2.value};

  SingleInterfaceCoeffs out;
  {
    // Unit V (TM-type) source: incident J-radial N-wave.
    std::array<cdouble, 4> b = {-eta1 * eta1 / k1 * J.value,
                                ihn / (k1 * a) * J.value, 0.0,
                                k1 * eta1 * J.derivative};
    out.c1V = solve(m, b)[0];
  }
  {
    // Unit H (TE-type) source: incident J-radial M-wave.
    std::array<cdouble, 4> b = {0.0, eta1 * J.derivative,
                                -eta1 * eta1 * J.value,
                                -ihn / a * J.value};
    out.c1H = solve(m, b)[1];
  }
  return out;
}

}  // namespace obh::testsupport
