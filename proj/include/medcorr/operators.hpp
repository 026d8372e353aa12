#pragma once

#include <initializer_list>
#include <span>
#include <utility>

#include "medcorr/types.hpp"

namespace medcorr {

// Truncated bosonic annihilation operator: <n-1|a|n> = sqrt(n). dim >= 2.
OperatorMatrix bosonic_annihilation(int dim);

// Two-level raising and lowering operators (sigma_plus, sigma_minus) in the
// basis {|0> = ground, |1> = excited}.
std::pair<OperatorMatrix, OperatorMatrix> qubit_ladder();

OperatorMatrix sigma_x();

// Identity on a d-dimensional space.
OperatorMatrix identity(int dim);

// Displacement operator exp(alpha a^dag - alpha* a) on a truncated space.
// Unitary up to truncation error; the caller owns the truncation choice
// (see truncation_converged in spectral.hpp).
OperatorMatrix displacement(Complex alpha, int dim);

// Kronecker products in the declared factor order (first factor slowest).
OperatorMatrix kron(const OperatorMatrix& x, const OperatorMatrix& y);
Vector kron(const Vector& x, const Vector& y);
OperatorMatrix tensor_product(std::span<const OperatorMatrix> ops);
Vector tensor_product(std::span<const Vector> vecs);

// op_a (x) op_b (x) op_c with nullptr meaning identity on that factor.
OperatorMatrix embed(const SystemLayout& layout, const OperatorMatrix* op_a,
                     const OperatorMatrix* op_b, const OperatorMatrix* op_c);

// Product basis state |occ_a occ_b occ_c>.
StateVector basis_state(const SystemLayout& layout, std::array<int, 3> occ);

// (1/sqrt(d_small)) sum_j |j>|j> on a d_large (x) d_small space.
StateVector max_entangled_state(int d_small, int d_large);

// Reduced density operator over the kept factors (indices into rho.dims,
// strictly increasing). Keep set must be a nonempty strict subset.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);

// Convenience for full tripartite states, e.g. partial_trace(rho, {Subsystem::A, Subsystem::B}).
DensityOperator partial_trace(const DensityOperator& rho, std::initializer_list<Subsystem> keep);

// Partial transpose of a two-factor state with respect to the given factor.
// Hermitian and trace preserving, possibly non-positive.
OperatorMatrix partial_transpose(const DensityOperator& rho, int factor = 0);

}  // namespace medcorr
