#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace medcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Operators are plain dense matrices; which space they act on is positional.
using OperatorMatrix = Eigen::MatrixXcd;

namespace tol {
inline constexpr double hermiticity = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double norm = 1e-12;
// Eigenvalues in [-positivity_clip, 0) are treated as zero; anything more
// negative is a genuine positivity failure.
inline constexpr double positivity_clip = 1e-10;
inline constexpr double violation_slack = 1e-9;
// Probability mass a displaced occupied level may spill past a Fock
// truncation before the run is refused. Calibrated so the reported
// correlation values stay converged well below the reporting tolerances
// while genuinely cramped truncations are rejected.
inline constexpr double truncation_tail = 1e-4;
}  // namespace tol

enum class Subsystem { A = 0, B = 1, C = 2 };

// Dimensions of the A (x) B (x) C factorization. Composite indices are
// row-major with A slowest and C fastest:
//   index(a, b, c) = a * dim_b * dim_c + b * dim_c + c.
struct SystemLayout {
  int dim_a = 1;
  int dim_b = 1;
  int dim_c = 1;

  SystemLayout(int a, int b, int c) : dim_a(a), dim_b(b), dim_c(c) {
    if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("SystemLayout: dimensions must be >= 1");
  }

  int total() const { return dim_a * dim_b * dim_c; }

  int dim(Subsystem s) const {
    switch (s) {
      case Subsystem::A: return dim_a;
      case Subsystem::B: return dim_b;
      case Subsystem::C: return dim_c;
    }
    throw std::invalid_argument("SystemLayout: bad subsystem tag");
  }

  std::vector<int> dims() const { return {dim_a, dim_b, dim_c}; }

  int index_of(std::array<int, 3> occ) const {
    return (occ[0] * dim_b + occ[1]) * dim_c + occ[2];
  }
};

inline int product_of(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

// Pure state on a tensor-factored space. `dims` lists the factor dimensions
// in order, first factor slowest.
struct StateVector {
  Vector amps;
  std::vector<int> dims;

  int total() const { return static_cast<int>(amps.size()); }

  void validate() const {
    if (amps.size() != product_of(dims)) throw std::invalid_argument("StateVector: size does not match dims");
    if (std::abs(amps.norm() - 1.0) > tol::norm) throw std::invalid_argument("StateVector: not normalized");
  }
};

// Density operator on a tensor-factored space, same dims convention.
struct DensityOperator {
  Matrix mat;
  std::vector<int> dims;

  int total() const { return static_cast<int>(mat.rows()); }

  // Checks Hermiticity and unit trace. Positivity is checked separately
  // (it needs an eigendecomposition); see validate_positive in spectral.hpp.
  void validate_basic() const {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("DensityOperator: not square");
    if (mat.rows() != product_of(dims)) throw std::invalid_argument("DensityOperator: size does not match dims");
    double herm = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol::hermiticity * std::max(1.0, mat.cwiseAbs().maxCoeff()))
      throw std::invalid_argument("DensityOperator: not Hermitian");
    if (std::abs(mat.trace().real() - 1.0) > tol::trace || std::abs(mat.trace().imag()) > tol::trace)
      throw std::invalid_argument("DensityOperator: trace != 1");
  }
};

inline DensityOperator pure_density(const StateVector& psi) {
  return {psi.amps * psi.amps.adjoint(), psi.dims};
}

}  // namespace medcorr
