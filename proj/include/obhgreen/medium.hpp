// Dispersive material model of the optical black hole and its radial
// discretization into concentric homogeneous layers.
//
// Unit system: c = 1 and the shell resonance frequency omega_0 = 1.
// Radii are in c/omega_0, frequencies in omega_0.
#pragma once

#include <complex>
#include <vector>

#include "obhgreen/errors.hpp"

namespace obh::medium {

using cdouble = std::complex<double>;

// eps_L(w) = 1 + omega_p^2 / (omega_0^2 - w^2 - i gamma w)
struct LorentzModel {
  double omega_p = 0.1;
  double omega_0 = 1.0;
  double gamma = 0.01;

  void validate() const;
};

cdouble lorentz_permittivity(double omega, const LorentzModel& model);
// Complex-frequency continuation (used by Schwarz-reflection checks).
cdouble lorentz_permittivity(cdouble omega, const LorentzModel& model);

struct ObhGeometry {
  double a_s = 8.0 * 3.14159265358979323846;  // outer shell radius
  double a_c = 4.0 * 3.14159265358979323846;  // core radius
  cdouble eps_core{4.0, 0.33};
  // The canonical profile ties the core radius to the core permittivity by
  // a_c = a_s sqrt(1/Re eps_core); set false to build other geometries.
  bool enforce_horizon_relation = true;

  void validate() const;
};

// eps(r, w): 1 outside the shell, (a_s/r)^2 eps_L in the shell, eps_core in
// the core.  Radii exactly on a boundary resolve to the inner region.
cdouble profile_permittivity(double r, double omega, const ObhGeometry& geom,
                             const LorentzModel& model);

enum class ShellSampling {
  inner,     // eps_m evaluated at the layer's inner interface radius
  midpoint,  // eps_m evaluated at the layer's radial midpoint
};

// Concentric layer stack.  Layer indices are 1-based: layer 1 is the
// exterior background (eps = 1), layers 2..N-1 the shell, layer N the core.
// Interface f (1-based, radius radii()[f-1]) separates layers f and f+1;
// the radii descend from a_s to a_c.
class LayerStack {
 public:
  int regions() const { return static_cast<int>(radii_.size()) + 1; }
  int interfaces() const { return static_cast<int>(radii_.size()); }
  const std::vector<double>& radii() const { return radii_; }
  double outer_radius() const { return radii_.front(); }

  cdouble eps(int layer, double omega) const;
  cdouble eps(int layer, cdouble omega) const;

  // All layers vacuum; scattering coefficients vanish identically.
  static LayerStack vacuum(double radius);
  // Single homogeneous cylinder of permittivity eps inside radius.
  static LayerStack homogeneous_cylinder(double radius, cdouble eps);
  // Explicit per-layer permittivities (frequency independent); layer 1 must
  // be vacuum.  radii descending, eps_inner.size() == radii.size().
  static LayerStack from_layers(std::vector<double> radii,
                                std::vector<cdouble> eps_inner);

 private:
  friend LayerStack discretize_shell(const ObhGeometry&, const LorentzModel&,
                                     int, ShellSampling);
  LayerStack() = default;

  std::vector<double> radii_;         // descending interface radii
  std::vector<cdouble> fixed_eps_;    // per-layer value for layers 2..N if set
  std::vector<double> shell_scale_;   // (a_1/a_sample)^2 per shell layer, or 0
  LorentzModel model_;
  bool dispersive_ = false;
};

// Equal-thickness discretization of the shell between a_s and a_c into
// shell_layers pieces; the resulting stack has shell_layers + 2 regions.
LayerStack discretize_shell(const ObhGeometry& geom, const LorentzModel& model,
                            int shell_layers,
                            ShellSampling sampling = ShellSampling::inner);

}  // namespace obh::medium
