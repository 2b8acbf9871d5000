#include "obhgreen/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace obh::config {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& field) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected a number for " + field + ", got '" + v + "'",
                      field);
  }
}

int parse_int(const std::string& v, const std::string& field) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer for " + field + ", got '" + v + "'",
                      field);
  }
}

bool parse_bool(const std::string& v, const std::string& field) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("expected true/false for " + field + ", got '" + v + "'",
                    field);
}

}  // namespace

std::string format_g17(double v) {
  if (v == 0.0) return "0";  // normalize negative zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void RunConfig::validate() const {
  auto positive = [](double v, const char* f) {
    if (!(v > 0.0)) throw ConfigError(std::string(f) + " must be positive", f);
  };
  positive(a_s, "geometry.a_s");
  positive(a_c, "geometry.a_c");
  if (!(a_c < a_s))
    throw ConfigError("geometry.a_c must be smaller than geometry.a_s",
                      "geometry.a_c");
  if (omega_p < 0.0)
    throw ConfigError("lorentz.omega_p must be nonnegative", "lorentz.omega_p");
  if (gamma < 0.0)
    throw ConfigError("lorentz.gamma must be nonnegative", "lorentz.gamma");
  if (shell_layers < 1)
    throw ConfigError("discretization.shell_layers must be at least 1",
                      "discretization.shell_layers");
  if (eps_sampling != "inner" && eps_sampling != "midpoint")
    throw ConfigError("discretization.eps_sampling must be inner or midpoint",
                      "discretization.eps_sampling");
  positive(omega_a, "atom.omega_a");
  positive(r, "atom.r");
  if (scenario == Scenario::obh && !(r > a_s))
    throw ConfigError("atom.r must exceed geometry.a_s", "atom.r");
  positive(rel_tol, "numerics.rel_tol");
  if (n_max < 1 || n_max > 80)
    throw ConfigError("numerics.n_max must lie in [1, 80]", "numerics.n_max");
  if (!(branch_window > 0.0) || branch_window > 0.05)
    throw ConfigError("numerics.branch_window must lie in (0, 0.05]",
                      "numerics.branch_window");
  positive(eta_cap, "numerics.eta_cap");
  positive(dispersion_lo, "numerics.dispersion_lo");
  if (!(dispersion_hi > dispersion_lo))
    throw ConfigError("numerics.dispersion_hi must exceed dispersion_lo",
                      "numerics.dispersion_hi");
  if (pv_samples < 16)
    throw ConfigError("numerics.pv_samples must be at least 16",
                      "numerics.pv_samples");
  positive(t_max, "time.t_max");
  if (samples < 2)
    throw ConfigError("time.samples must be at least 2", "time.samples");
}

medium::LorentzModel RunConfig::lorentz() const {
  medium::LorentzModel m;
  m.omega_p = omega_p;
  m.gamma = gamma;
  return m;
}

medium::ObhGeometry RunConfig::geometry() const {
  medium::ObhGeometry g;
  g.a_s = a_s;
  g.a_c = a_c;
  g.eps_core = {eps_core_re, eps_core_im};
  g.enforce_horizon_relation = enforce_horizon;
  return g;
}

medium::LayerStack RunConfig::stack() const {
  if (scenario == Scenario::vacuum) return medium::LayerStack::vacuum(a_s);
  const auto sampling = eps_sampling == "inner" ? medium::ShellSampling::inner
                                                : medium::ShellSampling::midpoint;
  return medium::discretize_shell(geometry(), lorentz(), shell_layers, sampling);
}

dynamics::AtomPair RunConfig::atoms() const {
  dynamics::AtomPair a;
  a.omega_a = omega_a;
  a.r = r;
  return a;
}

sommerfeld::QuadraturePolicy RunConfig::policy() const {
  sommerfeld::QuadraturePolicy p;
  p.rel_tol = rel_tol;
  p.n_max = n_max;
  p.branch_window = branch_window;
  p.eta_cap = eta_cap;
  return p;
}

dynamics::DispersionWindow RunConfig::dispersion_window() const {
  dynamics::DispersionWindow w;
  w.lo = dispersion_lo;
  w.hi = dispersion_hi;
  w.samples = pv_samples;
  return w;
}

RunConfig parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("malformed section header at line " +
                              std::to_string(lineno),
                          t);
      section = t.substr(1, t.size() - 2);
      if (section != "geometry" && section != "lorentz" &&
          section != "discretization" && section != "atom" &&
          section != "numerics" && section != "time" && section != "run")
        throw ConfigError("unknown section [" + section + "]", section);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno),
                        t);
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const std::string field = section + "." + key;

    if (field == "geometry.a_s") cfg.a_s = parse_double(value, field);
    else if (field == "geometry.a_c") cfg.a_c = parse_double(value, field);
    else if (field == "geometry.eps_core_re") cfg.eps_core_re = parse_double(value, field);
    else if (field == "geometry.eps_core_im") cfg.eps_core_im = parse_double(value, field);
    else if (field == "geometry.enforce_horizon") cfg.enforce_horizon = parse_bool(value, field);
    else if (field == "lorentz.omega_p") cfg.omega_p = parse_double(value, field);
    else if (field == "lorentz.gamma") cfg.gamma = parse_double(value, field);
    else if (field == "discretization.shell_layers") cfg.shell_layers = parse_int(value, field);
    else if (field == "discretization.eps_sampling") cfg.eps_sampling = value;
    else if (field == "atom.omega_a") cfg.omega_a = parse_double(value, field);
    else if (field == "atom.r") cfg.r = parse_double(value, field);
    else if (field == "numerics.rel_tol") cfg.rel_tol = parse_double(value, field);
    else if (field == "numerics.n_max") cfg.n_max = parse_int(value, field);
    else if (field == "numerics.branch_window") cfg.branch_window = parse_double(value, field);
    else if (field == "numerics.eta_cap") cfg.eta_cap = parse_double(value, field);
    else if (field == "numerics.dispersion_lo") cfg.dispersion_lo = parse_double(value, field);
    else if (field == "numerics.dispersion_hi") cfg.dispersion_hi = parse_double(value, field);
    else if (field == "numerics.pv_samples") cfg.pv_samples = parse_int(value, field);
    else if (field == "time.t_max") cfg.t_max = parse_double(value, field);
    else if (field == "time.samples") cfg.samples = parse_int(value, field);
    else if (field == "run.scenario") {
      if (value == "obh") cfg.scenario = Scenario::obh;
      else if (value == "vacuum") cfg.scenario = Scenario::vacuum;
      else throw ConfigError("run.scenario must be obh or vacuum", field);
    } else {
      throw ConfigError("unknown key '" + field + "'", field);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string serialize(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[geometry]\n";
  out << "a_s = " << format_g17(cfg.a_s) << "\n";
  out << "a_c = " << format_g17(cfg.a_c) << "\n";
  out << "eps_core_re = " << format_g17(cfg.eps_core_re) << "\n";
  out << "eps_core_im = " << format_g17(cfg.eps_core_im) << "\n";
  out << "enforce_horizon = " << (cfg.enforce_horizon ? "true" : "false") << "\n";
  out << "\n[lorentz]\n";
  out << "omega_p = " << format_g17(cfg.omega_p) << "\n";
  out << "gamma = " << format_g17(cfg.gamma) << "\n";
  out << "\n[discretization]\n";
  out << "shell_layers = " << cfg.shell_layers << "\n";
  out << "eps_sampling = " << cfg.eps_sampling << "\n";
  out << "\n[atom]\n";
  out << "omega_a = " << format_g17(cfg.omega_a) << "\n";
  out << "r = " << format_g17(cfg.r) << "\n";
  out << "\n[numerics]\n";
  out << "rel_tol = " << format_g17(cfg.rel_tol) << "\n";
  out << "n_max = " << cfg.n_max << "\n";
  out << "branch_window = " << format_g17(cfg.branch_window) << "\n";
  out << "eta_cap = " << format_g17(cfg.eta_cap) << "\n";
  out << "dispersion_lo = " << format_g17(cfg.dispersion_lo) << "\n";
  out << "dispersion_hi = " << format_g17(cfg.dispersion_hi) << "\n";
  out << "pv_samples = " << cfg.pv_samples << "\n";
  out << "\n[time]\n";
  out << "t_max = " << format_g17(cfg.t_max) << "\n";
  out << "samples = " << cfg.samples << "\n";
  out << "\n[run]\n";
  out << "scenario = " << (cfg.scenario == Scenario::obh ? "obh" : "vacuum")
      << "\n";
  return out.str();
}

}  // namespace obh::config
