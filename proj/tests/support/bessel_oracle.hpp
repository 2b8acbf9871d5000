// Test-only reference implementations of J_n, Y_n by direct ascending
// series in long double.  Independent of src/specfun.cpp: that file never
// uses the J power series or the Y log-series, so agreement here is a real
// cross-check.  Valid for |z| <= ~16 where series cancellation stays small.
#pragma once

#include <complex>

namespace obh::testsupport {

std::complex<double> oracle_j(int n, std::complex<double> z);

// Principal branch; requires z not on the negative real axis and |z| <= ~16.
std::complex<double> oracle_y(int n, std::complex<double> z);

// J + iY; trustworthy only where the two terms do not cancel to below
// ~1e-12 relative, i.e. Im z <= ~2.
std::complex<double> oracle_h1(int n, std::complex<double> z);

}  // namespace obh::testsupport
