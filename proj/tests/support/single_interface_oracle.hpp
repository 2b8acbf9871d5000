// Test-only reference for the single-interface (N = 2) scattering
// coefficients, built directly from continuity of the tangential fields at
// the cylinder surface.  Shares only the Bessel kernels with the library;
// the linear system and its derivation are independent of the
// transfer-matrix route it cross-checks.
#pragma once

#include <complex>

namespace obh::testsupport {

struct SingleInterfaceCoeffs {
  std::complex<double> c1V;  // H-radial N-wave amplitude for a unit V source
  std::complex<double> c1H;  // H-radial M-wave amplitude for a unit H source
};

// Homogeneous cylinder of permittivity eps2 and radius a in vacuum; mode
// (n, h) at frequency omega (units c = omega_0 = 1).
SingleInterfaceCoeffs single_interface_coeffs(int n, double h, double omega,
                                              double a,
                                              std::complex<double> eps2);

}  // namespace obh::testsupport
