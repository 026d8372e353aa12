#pragma once

#include <functional>

#include "medcorr/types.hpp"

namespace medcorr {

// Hermitian eigendecomposition, eigenvalues ascending.
struct Eigh {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;  // columns are eigenvectors, unitary
};

// Throws std::invalid_argument unless max|op - op^dag| <= tol * max(1, max|op|).
void require_hermitian(const Matrix& op, double tolerance, const char* who);

// Full decomposition of a Hermitian matrix. Reconstruction error is bounded
// by ~1e-10 * ||op||; the input is rejected if it is not Hermitian to 1e-10.
Eigh spectral_decompose(const Matrix& op);

// Eigenvalues only; considerably cheaper than spectral_decompose.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& op);

// exp(i * scale * h) for Hermitian h, via the spectral form V e^{i s L} V^dag.
Matrix exp_i_scaled(const Matrix& h, double scale);

// Largest |eigenvalue| of a Hermitian matrix (its spectral norm).
double hermitian_spectral_norm(const Matrix& h);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& h);

// Throws PositivityError if any eigenvalue of rho is below -tol::positivity_clip.
void validate_positive(const DensityOperator& rho);

// Truncation adequacy by doubling: builds f(dim) and f(2*dim) and returns the
// relative Frobenius difference against the common top-left block (matrices)
// or leading entries (vectors, where tail weight counts as error). Have the
// builder return the window of elements the computation actually uses:
// rows and columns at the truncation edge never converge for operators that
// spread occupation, so whole-matrix comparisons report spurious drift.
double doubling_difference(const std::function<Matrix(int)>& build, int dim);
double doubling_difference_vec(const std::function<Vector(int)>& build, int dim);

inline bool truncation_converged(const std::function<Matrix(int)>& build, int dim,
                                 double rel_tol = 1e-6) {
  return doubling_difference(build, dim) < rel_tol;
}

}  // namespace medcorr
