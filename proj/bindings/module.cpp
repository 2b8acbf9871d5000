// Python bindings for the main operations.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "obhgreen/atom_dynamics.hpp"
#include "obhgreen/config.hpp"
#include "obhgreen/entanglement.hpp"
#include "obhgreen/layered_green.hpp"
#include "obhgreen/medium.hpp"
#include "obhgreen/sommerfeld.hpp"
#include "obhgreen/specfun.hpp"

namespace py = pybind11;
using namespace obh;
using cdouble = std::complex<double>;

namespace {

green::Polarization pol_from_string(const std::string& s) {
  if (s == "H" || s == "h") return green::Polarization::H;
  if (s == "V" || s == "v") return green::Polarization::V;
  throw DomainError("polarization must be 'H' or 'V'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Layered-cylinder scattering Green tensor and two-atom "
            "entanglement dynamics";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<SingularArgument>(m, "SingularArgument");
  py::register_exception<InvariantViolation>(m, "InvariantViolation");

  // Cylinder functions.
  m.def("bessel_j", &specfun::bessel_j, py::arg("n"), py::arg("z"),
        "J_n(z) for complex argument");
  m.def("bessel_y", &specfun::bessel_y, py::arg("n"), py::arg("z"));
  m.def("hankel1", &specfun::hankel1, py::arg("n"), py::arg("z"),
        "H^(1)_n(z), Im z >= 0 branch");
  m.def(
      "deriv_pair",
      [](const std::string& kind, int n, cdouble z) {
        const auto v = specfun::deriv_pair(
            kind == "J" ? specfun::Kind::J : specfun::Kind::H1, n, z);
        return py::make_tuple(v.value, v.derivative);
      },
      py::arg("kind"), py::arg("n"), py::arg("z"),
      "(value, d/dz) for kind 'J' or 'H1'");

  // Medium.
  py::class_<medium::LorentzModel>(m, "LorentzModel")
      .def(py::init<>())
      .def_readwrite("omega_p", &medium::LorentzModel::omega_p)
      .def_readwrite("omega_0", &medium::LorentzModel::omega_0)
      .def_readwrite("gamma", &medium::LorentzModel::gamma);
  py::class_<medium::ObhGeometry>(m, "ObhGeometry")
      .def(py::init<>())
      .def_readwrite("a_s", &medium::ObhGeometry::a_s)
      .def_readwrite("a_c", &medium::ObhGeometry::a_c)
      .def_readwrite("eps_core", &medium::ObhGeometry::eps_core)
      .def_readwrite("enforce_horizon_relation",
                     &medium::ObhGeometry::enforce_horizon_relation);
  py::class_<medium::LayerStack>(m, "LayerStack")
      .def_property_readonly("radii", &medium::LayerStack::radii)
      .def_property_readonly("regions", &medium::LayerStack::regions)
      .def("eps",
           [](const medium::LayerStack& s, int layer, double omega) {
             return s.eps(layer, omega);
           })
      .def_static("vacuum", &medium::LayerStack::vacuum)
      .def_static("homogeneous_cylinder", &medium::LayerStack::homogeneous_cylinder);
  m.def("lorentz_permittivity",
        py::overload_cast<double, const medium::LorentzModel&>(
            &medium::lorentz_permittivity));
  m.def("profile_permittivity", &medium::profile_permittivity);
  py::enum_<medium::ShellSampling>(m, "ShellSampling")
      .value("inner", medium::ShellSampling::inner)
      .value("midpoint", medium::ShellSampling::midpoint);
  m.def("discretize_shell", &medium::discretize_shell, py::arg("geometry"),
        py::arg("model"), py::arg("shell_layers"),
        py::arg("sampling") = medium::ShellSampling::inner);

  // Quadrature.
  py::class_<sommerfeld::QuadraturePolicy>(m, "QuadraturePolicy")
      .def(py::init<>())
      .def_readwrite("rel_tol", &sommerfeld::QuadraturePolicy::rel_tol)
      .def_readwrite("branch_window", &sommerfeld::QuadraturePolicy::branch_window)
      .def_readwrite("n_max", &sommerfeld::QuadraturePolicy::n_max)
      .def_readwrite("eta_cap", &sommerfeld::QuadraturePolicy::eta_cap);
  m.def(
      "integrate_h",
      [](const std::function<cdouble(cdouble)>& f, double k1,
         const sommerfeld::QuadraturePolicy& pol) {
        const auto r = sommerfeld::integrate_h(f, k1, pol);
        return py::make_tuple(r.value, r.error_bound, r.converged);
      },
      py::arg("term"), py::arg("k1"),
      py::arg("policy") = sommerfeld::QuadraturePolicy{});
  m.def(
      "pv_integral",
      [](const std::function<double(double)>& f, double pole, double lo,
         double hi, double rel_tol) {
        const auto r = sommerfeld::pv_integral(f, pole, lo, hi, rel_tol);
        return py::make_tuple(r.value, r.error_bound, r.converged);
      },
      py::arg("fn"), py::arg("pole"), py::arg("lo"), py::arg("hi"),
      py::arg("rel_tol") = 1e-8);

  // Scattering coefficients and Green function.
  m.def(
      "scattering_coefficient",
      [](const std::string& pol, const medium::LayerStack& stack, int n,
         double h, double omega) {
        const auto mp = green::mode_params(stack, n, h, omega);
        return green::scattering_coefficient(pol_from_string(pol), stack, mp);
      },
      py::arg("pol"), py::arg("stack"), py::arg("n"), py::arg("h"),
      py::arg("omega"));
  m.def(
      "scattering_green_zz",
      [](double r, double phi, double z, double rp, double phip, double zp,
         double omega, const medium::LayerStack& stack,
         const sommerfeld::QuadraturePolicy& pol) {
        const auto g =
            green::scattering_green_zz(r, phi, z, rp, phip, zp, omega, stack, pol);
        return py::make_tuple(g.value, g.error_bound, g.converged);
      },
      py::arg("r"), py::arg("phi"), py::arg("z"), py::arg("rp"),
      py::arg("phip"), py::arg("zp"), py::arg("omega"), py::arg("stack"),
      py::arg("policy") = sommerfeld::QuadraturePolicy{});
  m.def("freespace_green_zz", &green::freespace_green_zz,
        py::arg("separation"), py::arg("omega"));

  // Atom dynamics.
  py::class_<dynamics::AtomPair>(m, "AtomPair")
      .def(py::init<>())
      .def_readwrite("omega_a", &dynamics::AtomPair::omega_a)
      .def_readwrite("r", &dynamics::AtomPair::r)
      .def_property_readonly("separation", &dynamics::AtomPair::separation);
  py::class_<dynamics::RateSet>(m, "RateSet")
      .def(py::init<>())
      .def_readwrite("gamma", &dynamics::RateSet::gamma)
      .def_readwrite("gamma_ab", &dynamics::RateSet::gamma_ab)
      .def_readwrite("gamma_plus", &dynamics::RateSet::gamma_plus)
      .def_readwrite("gamma_minus", &dynamics::RateSet::gamma_minus)
      .def_readonly("error_bound", &dynamics::RateSet::error_bound)
      .def_readonly("converged", &dynamics::RateSet::converged)
      .def_readonly("hit_mode_cap", &dynamics::RateSet::hit_mode_cap);
  py::class_<dynamics::ShiftSet>(m, "ShiftSet")
      .def(py::init<>())
      .def_readwrite("delta_ab", &dynamics::ShiftSet::delta_ab)
      .def_readwrite("delta_plus", &dynamics::ShiftSet::delta_plus)
      .def_readwrite("delta_minus", &dynamics::ShiftSet::delta_minus)
      .def_readonly("lamb_scattering", &dynamics::ShiftSet::lamb_scattering);
  m.def("vacuum_gamma_ab", &dynamics::vacuum_gamma_ab);
  m.def("vacuum_delta_ab", &dynamics::vacuum_delta_ab);
  py::enum_<dynamics::VacuumPart>(m, "VacuumPart")
      .value("closed_form", dynamics::VacuumPart::closed_form)
      .value("mode_expansion", dynamics::VacuumPart::mode_expansion);
  py::enum_<dynamics::ShiftMethod>(m, "ShiftMethod")
      .value("kramers_kronig", dynamics::ShiftMethod::kramers_kronig)
      .value("pv_cross_check", dynamics::ShiftMethod::pv_cross_check);
  py::class_<dynamics::DispersionWindow>(m, "DispersionWindow")
      .def(py::init<>())
      .def_readwrite("lo", &dynamics::DispersionWindow::lo)
      .def_readwrite("hi", &dynamics::DispersionWindow::hi)
      .def_readwrite("samples", &dynamics::DispersionWindow::samples);
  m.def("decay_rates", &dynamics::decay_rates, py::arg("atoms"),
        py::arg("stack"), py::arg("policy") = sommerfeld::QuadraturePolicy{},
        py::arg("vacuum") = dynamics::VacuumPart::closed_form);
  m.def("dipole_shift", &dynamics::dipole_shift, py::arg("atoms"),
        py::arg("stack"), py::arg("policy") = sommerfeld::QuadraturePolicy{},
        py::arg("method") = dynamics::ShiftMethod::kramers_kronig,
        py::arg("window") = dynamics::DispersionWindow{});
  m.def("amplitudes", &dynamics::amplitudes, py::arg("rates"),
        py::arg("shifts"), py::arg("t"));

  // Entanglement.
  py::class_<entanglement::TwoAtomState>(m, "TwoAtomState")
      .def_readonly("rho_pp", &entanglement::TwoAtomState::rho_pp)
      .def_readonly("rho_mm", &entanglement::TwoAtomState::rho_mm)
      .def_readonly("rho_pm", &entanglement::TwoAtomState::rho_pm)
      .def_readonly("rho_ll", &entanglement::TwoAtomState::rho_ll)
      .def_readonly("t", &entanglement::TwoAtomState::t);
  m.def("density_matrix", &entanglement::density_matrix, py::arg("c_plus"),
        py::arg("c_minus"), py::arg("t") = 0.0);
  m.def("negativity_eigen", &entanglement::negativity_eigen);
  m.def("negativity_closed", &entanglement::negativity_closed);
  m.def("pt_eigenvalues", &entanglement::pt_eigenvalues);
  py::class_<entanglement::TraceSample>(m, "TraceSample")
      .def_readonly("t", &entanglement::TraceSample::t)
      .def_readonly("rho_pp", &entanglement::TraceSample::rho_pp)
      .def_readonly("rho_mm", &entanglement::TraceSample::rho_mm)
      .def_readonly("rho_ll", &entanglement::TraceSample::rho_ll)
      .def_readonly("neg_eigen", &entanglement::TraceSample::neg_eigen)
      .def_readonly("neg_closed", &entanglement::TraceSample::neg_closed);
  m.def("negativity_trace", &entanglement::negativity_trace, py::arg("rates"),
        py::arg("shifts"), py::arg("t_max"), py::arg("samples"));

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
