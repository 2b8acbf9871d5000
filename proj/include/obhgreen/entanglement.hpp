// Reduced two-atom density matrix in the Dicke basis, partial transpose,
// and negativity (eigenvalue route and exact closed form).
#pragma once

#include <array>
#include <complex>
#include <vector>

#include "obhgreen/atom_dynamics.hpp"

namespace obh::entanglement {

using cdouble = std::complex<double>;

struct TwoAtomState {
  double rho_pp = 0.0;   // population of |+>
  double rho_mm = 0.0;   // population of |->
  cdouble rho_pm{};      // coherence <+|rho|->
  double rho_ll = 1.0;   // ground population (|U> stays empty)
  double t = 0.0;        // time stamp, units 1/Gamma_0

  void validate() const;
};

// State built from the symmetric/antisymmetric amplitudes.
TwoAtomState density_matrix(cdouble c_plus, cdouble c_minus, double t = 0.0);

// Eigenvalues of the density matrix in the product basis (ascending).
std::array<double, 4> rho_eigenvalues(const TwoAtomState& state);
// Eigenvalues of its partial transpose over atom A (ascending).
std::array<double, 4> pt_eigenvalues(const TwoAtomState& state);

// N = (1/2) sum_i (|mu_i| - mu_i) over the partial-transpose eigenvalues.
double negativity_eigen(const TwoAtomState& state);

// Exact closed form for the single-excitation family generated by the
// amplitude evolution; equals negativity_eigen to machine precision.
double negativity_closed(const dynamics::RateSet& rates,
                         const dynamics::ShiftSet& shifts, double t);

struct TraceSample {
  double t = 0.0;
  double rho_pp = 0.0;
  double rho_mm = 0.0;
  double rho_ll = 0.0;
  double neg_eigen = 0.0;
  double neg_closed = 0.0;
};

using NegativityTrace = std::vector<TraceSample>;

// Uniform time grid [0, t_max] with `samples` points.
NegativityTrace negativity_trace(const dynamics::RateSet& rates,
                                 const dynamics::ShiftSet& shifts,
                                 double t_max, int samples);

}  // namespace obh::entanglement
