// Cylindrical Bessel and Hankel functions of integer order and complex
// argument, with derivatives and overflow-safe scaled variants.
#pragma once

#include <complex>
#include <vector>

#include "obhgreen/errors.hpp"

namespace obh::specfun {

using cdouble = std::complex<double>;

// Validated envelope for the unscaled entry points.
inline constexpr int kMaxOrder = 80;
inline constexpr double kMaxModulus = 200.0;

// Scaled ladders reach further; needed for deep-evanescent arguments.
inline constexpr int kMaxOrderInternal = 85;
inline constexpr double kMaxModulusScaled = 4000.0;

enum class Kind { J, H1 };

struct CylFunValue {
  int order = 0;
  cdouble argument{};
  cdouble value{};
  cdouble derivative{};  // with respect to the argument
};

// J_n(z).  Domain: 0 <= n <= kMaxOrder, |z| <= kMaxModulus.
cdouble bessel_j(int n, cdouble z);

// Y_n(z), principal branch (cut along the negative real axis, values on the
// cut taken as the limit from above).
cdouble bessel_y(int n, cdouble z);

// H^(1)_n(z) = J_n(z) + i Y_n(z).  Decays for Im z > 0.
cdouble hankel1(int n, cdouble z);

// Value and d/dz in one call.
CylFunValue deriv_pair(Kind kind, int n, cdouble z);

// Scaled ladder for k = 0..n_max:
//   j[k]  = J_k(z)      * exp(-|Im z|)
//   h[k]  = H^(1)_k(z)  * exp(-i z)
// jp/hp carry d/dz of the unscaled function times the same factor, so the
// usual recurrences hold among scaled entries.  The scale exponents are
// returned by log_j_scale / log_h_scale:
//   J_k(z)     = j[k] * exp(log_j_scale())
//   H^(1)_k(z) = h[k] * exp(log_h_scale())
struct ScaledLadder {
  cdouble z{};
  std::vector<cdouble> j, jp, h, hp;
  double log_j_scale() const { return std::abs(z.imag()); }
  cdouble log_h_scale() const { return cdouble(0.0, 1.0) * z; }
};

ScaledLadder scaled_ladder(int n_max, cdouble z);

}  // namespace obh::specfun
