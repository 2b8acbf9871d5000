// Run configuration: a flat key-value text format with section headers.
//
// Grammar (one entry per line):
//   [section]            section header
//   key = value          assignment inside the current section
//   # or ; prefix        comment line; blank lines ignored
//
// Unknown sections or keys are rejected.  serialize() emits the canonical
// form: fixed section and key order, numbers with 17 significant digits.
#pragma once

#include <complex>
#include <iosfwd>
#include <string>

#include "obhgreen/atom_dynamics.hpp"
#include "obhgreen/medium.hpp"
#include "obhgreen/sommerfeld.hpp"

namespace obh::config {

enum class Scenario { obh, vacuum };

struct RunConfig {
  // [geometry]
  double a_s = 8.0 * 3.14159265358979323846;
  double a_c = 4.0 * 3.14159265358979323846;
  double eps_core_re = 4.0;
  double eps_core_im = 0.33;
  bool enforce_horizon = true;

  // [lorentz]
  double omega_p = 0.1;
  double gamma = 0.01;

  // [discretization]
  int shell_layers = 10;
  std::string eps_sampling = "inner";  // or "midpoint"

  // [atom]
  double omega_a = 0.1;
  double r = 8.1 * 3.14159265358979323846;

  // [numerics]
  double rel_tol = 1e-8;
  int n_max = 60;
  double branch_window = 1e-4;
  double eta_cap = 60.0;
  double dispersion_lo = 0.01;
  double dispersion_hi = 5.0;
  int pv_samples = 96;

  // [time]
  double t_max = 50.0;
  int samples = 2001;

  // [run]
  Scenario scenario = Scenario::obh;

  void validate() const;  // throws ConfigError naming the offending field

  medium::LorentzModel lorentz() const;
  medium::ObhGeometry geometry() const;
  medium::LayerStack stack() const;  // vacuum stack for the vacuum scenario
  dynamics::AtomPair atoms() const;
  sommerfeld::QuadraturePolicy policy() const;
  dynamics::DispersionWindow dispersion_window() const;
};

RunConfig parse(const std::string& text);
RunConfig load_file(const std::string& path);
std::string serialize(const RunConfig& cfg);

// 17-significant-digit formatting used for every number the tool emits.
std::string format_g17(double v);

}  // namespace obh::config
