#pragma once

#include "medcorr/types.hpp"

namespace medcorr {

// Laguerre polynomial L_k(x) by the three-term recurrence
// (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
double laguerre(int k, double x);

// <k| D(alpha) |k> = e^{-|alpha|^2/2} L_k(|alpha|^2).
double displacement_diagonal(int k, Complex alpha);

// Branch weights for dipole-coupled fields started in |mn0>:
//   d_{s s'} = 2 sqrt([1 + s e^{-2|a|^2} L_m(4|a|^2)][1 + s' e^{-2|a|^2} L_n(4|a|^2)])
// with s, s' = +/-. Radicands in [-1e-12, 0) are clipped to 0; anything
// lower is a domain error.
struct DipoleCoefficients {
  double pp, mm, pm, mp;
};
DipoleCoefficients dipole_coefficients(int m, int n, Complex alpha);

// Normalized branch state (D(alpha) + sign * D(-alpha)) |k> / sqrt(d_{ss})
// on a dim-dimensional Fock space. Degenerate branches (weight ~ 0, e.g.
// the minus branch at t=0) are rejected.
Vector dipole_branch_state(int k, Complex alpha, int sign, int dim);

// The 4x4 field state in the branch basis {|D_+ D_+>, |D_+ D_->,
// |D_- D_+>, |D_- D_->}: diagonal of squared weights plus an anti-diagonal
// of d_pp * d_mm, all over 16. Unit trace, PSD, and PPT for every m, n, t.
DensityOperator effective_two_qubit_state(int m, int n, Complex alpha);

// Reduced AB state of the dipole evolution from |mn0> at time t, assembled
// from displacement branches with alpha = i g t; the two atom branches add
// incoherently. Runs the field_dim doubling check and throws
// TruncationError when the truncation has not converged.
DensityOperator dipole_closed_form_reduced_ab(int m, int n, double g, double t, int field_dim);

}  // namespace medcorr
