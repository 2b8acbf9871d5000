// Transfer-matrix machinery for the layered cylinder and assembly of the
// zz component of the scattering Green function, plus the closed-form
// free-space reference.
#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "obhgreen/medium.hpp"
#include "obhgreen/sommerfeld.hpp"
#include "obhgreen/specfun.hpp"

namespace obh::green {

using cdouble = std::complex<double>;
using Mat4 = std::array<std::array<cdouble, 4>, 4>;

enum class Polarization { H, V };

// Per-layer spectral parameters for one (n, h, omega) mode:
//   k     = sqrt(eps) omega                (propagation constant)
//   eta   = sqrt(k^2 - h^2), Im eta >= 0   (transverse eigenvalue)
//   tau   = sqrt(eps / mu), mu = 1
//   zeta  = i h n / k
//   ell   = eta^2 / k
struct LayerMode {
  cdouble k, eta, tau, zeta, ell;
};

struct ModeParams {
  int n = 0;
  cdouble h{};
  cdouble omega{};
  std::vector<LayerMode> layers;  // index 0 holds layer 1 (exterior)

  const LayerMode& layer(int j) const { return layers.at(static_cast<size_t>(j) - 1); }
};

ModeParams mode_params(const medium::LayerStack& stack, int n, cdouble h,
                       cdouble omega);

// Transmission matrix F^{H,V} of layer j evaluated at interface radius a_m.
// Entries follow the even (cos) azimuthal family; rows mix the tangential
// field components, columns are (H-type, H-type, J-type, J-type) wave slots.
Mat4 transmission_matrix(Polarization pol, int layer, double radius,
                         const ModeParams& mode);

// T_f = [F_{(f+1)f}]^{-1} [F_{ff}] across interface f of the stack.
Mat4 interface_transfer(Polarization pol, int interface_f,
                        const medium::LayerStack& stack,
                        const ModeParams& mode);

struct TransferCascade {
  Polarization pol = Polarization::V;
  std::vector<Mat4> interface_matrices;  // T_f, f = 1..N-1
  Mat4 total{};                          // T_{N-1} ... T_1
};

TransferCascade transfer_cascade(Polarization pol,
                                 const medium::LayerStack& stack,
                                 const ModeParams& mode);

struct ScatterCoeffs {
  cdouble c1H{};
  cdouble c1V{};
};

// C_1^{11'} = (T12 T23 - T22 T13) / (T11 T22 - T12 T21) of the full cascade.
cdouble scattering_coefficient(Polarization pol,
                               const medium::LayerStack& stack,
                               const ModeParams& mode);
ScatterCoeffs scattering_coefficients(const medium::LayerStack& stack,
                                      const ModeParams& mode);

// Scattering coefficient as mantissa * 2^log2_scale; representable even in
// the deep-evanescent regime where C itself overflows double.
struct ScaledCoeff {
  cdouble mantissa{};
  double log2_scale = 0.0;
};

// Workspace reused across quadrature nodes: caches the per-layer cylinder
// ladders for the current h and memoizes scattering coefficients per order.
class ModeWorkspace {
 public:
  ModeWorkspace(const medium::LayerStack& stack, cdouble omega, int n_max);
  ~ModeWorkspace();
  ModeWorkspace(const ModeWorkspace&) = delete;
  ModeWorkspace& operator=(const ModeWorkspace&) = delete;

  // Field radii for the product evaluations below (both > outer radius).
  void set_field_radii(double r1, double r2);
  void set_h(cdouble h);

  cdouble k1() const;
  cdouble eta1() const;
  int n_max() const;

  ScaledCoeff coeff(Polarization pol, int n);
  // C_{1V} H_n(eta1 r1) H_n(eta1 r2), assembled without overflow.
  cdouble scattered_product(int n);
  // J_n(eta1 r<) H_n(eta1 r>), the background mode product.
  cdouble vacuum_product(int n);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Suggested panel seeds covering the guided band k1 < h < max_j Re k_j
// where the layered structure can have near-resonant response.
std::vector<double> guided_band_breakpoints(const medium::LayerStack& stack,
                                            double omega, int count = 48);

// zz component of the scattering Green function for field point
// (r, phi, z) and source point (rp, phip, zp), both in the exterior layer.
struct GreenResult {
  cdouble value{};
  double error_bound = 0.0;
  bool converged = true;
  bool hit_mode_cap = false;
  long evaluations = 0;
};

GreenResult scattering_green_zz(double r, double phi, double z, double rp,
                                double phip, double zp, double omega,
                                const medium::LayerStack& stack,
                                const sommerfeld::QuadraturePolicy& policy);

// Free-space dyadic Green zz component for z-oriented dipoles separated by
// R perpendicular to the cylinder axis:
//   e^{ikR} / (4 pi R) (1 + i/(kR) - 1/(kR)^2).
cdouble freespace_green_zz(double separation, double omega);

}  // namespace obh::green
