#include "obhgreen/medium.hpp"

#include <cmath>

namespace obh::medium {

void LorentzModel::validate() const {
  if (omega_p < 0.0 || gamma < 0.0 || omega_0 <= 0.0)
    throw InvariantViolation("LorentzModel requires omega_p, gamma >= 0 and omega_0 > 0");
}

cdouble lorentz_permittivity(cdouble omega, const LorentzModel& m) {
  m.validate();
  return 1.0 + m.omega_p * m.omega_p /
                   (m.omega_0 * m.omega_0 - omega * omega -
                    cdouble(0.0, 1.0) * m.gamma * omega);
}

cdouble lorentz_permittivity(double omega, const LorentzModel& m) {
  if (omega <= 0.0)
    throw DomainError("lorentz_permittivity requires omega > 0");
  return lorentz_permittivity(cdouble(omega, 0.0), m);
}

void ObhGeometry::validate() const {
  if (!(a_c > 0.0) || !(a_s > a_c))
    throw InvariantViolation("ObhGeometry requires 0 < a_c < a_s");
  if (enforce_horizon_relation) {
    const double expected = a_s * std::sqrt(1.0 / eps_core.real());
    if (std::abs(a_c - expected) > 1e-9 * a_s)
      throw InvariantViolation(
          "core radius does not satisfy a_c = a_s sqrt(1/Re eps_core); "
          "set enforce_horizon_relation = false to override");
  }
}

cdouble profile_permittivity(double r, double omega, const ObhGeometry& geom,
                             const LorentzModel& model) {
  geom.validate();
  if (r < 0.0) throw DomainError("profile_permittivity requires r >= 0");
  if (r > geom.a_s) return 1.0;
  if (r > geom.a_c) {
    const double s = geom.a_s / r;
    return s * s * lorentz_permittivity(omega, model);
  }
  return geom.eps_core;
}

cdouble LayerStack::eps(int layer, cdouble omega) const {
  if (layer < 1 || layer > regions())
    throw DomainError("layer index outside stack");
  if (layer == 1) return 1.0;
  if (dispersive_) {
    const double scale = shell_scale_[static_cast<size_t>(layer) - 2];
    if (scale > 0.0) return scale * lorentz_permittivity(omega, model_);
  }
  return fixed_eps_[static_cast<size_t>(layer) - 2];
}

cdouble LayerStack::eps(int layer, double omega) const {
  return eps(layer, cdouble(omega, 0.0));
}

LayerStack LayerStack::vacuum(double radius) {
  return homogeneous_cylinder(radius, 1.0);
}

LayerStack LayerStack::homogeneous_cylinder(double radius, cdouble eps) {
  return from_layers({radius}, {eps});
}

LayerStack LayerStack::from_layers(std::vector<double> radii,
                                   std::vector<cdouble> eps_inner) {
  if (radii.empty() || radii.size() != eps_inner.size())
    throw InvariantViolation("from_layers requires one permittivity per interface");
  for (size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] > radii[i + 1]))
      throw InvariantViolation("interface radii must descend");
  if (radii.back() <= 0.0) throw InvariantViolation("radii must be positive");
  LayerStack s;
  s.radii_ = std::move(radii);
  s.fixed_eps_ = std::move(eps_inner);
  s.shell_scale_.assign(s.fixed_eps_.size(), 0.0);
  s.dispersive_ = false;
  return s;
}

LayerStack discretize_shell(const ObhGeometry& geom, const LorentzModel& model,
                            int shell_layers, ShellSampling sampling) {
  geom.validate();
  model.validate();
  if (shell_layers < 1)
    throw InvariantViolation("discretize_shell requires shell_layers >= 1");

  const double delta = (geom.a_s - geom.a_c) / shell_layers;
  LayerStack s;
  s.model_ = model;
  s.dispersive_ = true;
  // Interfaces a_m = a_s - (m-1) delta, m = 1..shell_layers+1; the last one
  // is the core boundary a_c.
  for (int m = 0; m <= shell_layers; ++m)
    s.radii_.push_back(m == shell_layers ? geom.a_c : geom.a_s - m * delta);

  // Shell layer with inner interface a_m spans (a_m, a_{m-1}).
  for (int m = 1; m <= shell_layers; ++m) {
    const double inner = s.radii_[static_cast<size_t>(m)];
    const double outer = s.radii_[static_cast<size_t>(m) - 1];
    const double r_sample =
        sampling == ShellSampling::inner ? inner : 0.5 * (inner + outer);
    const double ratio = geom.a_s / r_sample;
    s.shell_scale_.push_back(ratio * ratio);
    s.fixed_eps_.push_back(0.0);
  }
  // Core region.
  s.shell_scale_.push_back(0.0);
  s.fixed_eps_.push_back(geom.eps_core);
  return s;
}

}  // namespace obh::medium
