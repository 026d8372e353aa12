#include "medcorr/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "medcorr/errors.hpp"

namespace medcorr {

void require_hermitian(const Matrix& op, double tolerance, const char* who) {
  if (op.rows() != op.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
  double dev = (op - op.adjoint()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
  if (dev > tolerance * scale)
    throw std::invalid_argument(std::string(who) + ": matrix not Hermitian (deviation " +
                                std::to_string(dev) + ")");
}

Eigh spectral_decompose(const Matrix& op) {
  require_hermitian(op, 1e-10, "spectral_decompose");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectral_decompose: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& op) {
  require_hermitian(op, 1e-10, "hermitian_eigenvalues");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigenvalues: solver failed");
  return solver.eigenvalues();
}

Matrix exp_i_scaled(const Matrix& h, double scale) {
  Eigh eig = spectral_decompose(h);
  Vector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases[k] = std::exp(Complex(0.0, scale * eig.eigenvalues[k]));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

double hermitian_spectral_norm(const Matrix& h) {
  Eigen::VectorXd ev = hermitian_eigenvalues(h);
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

double min_eigenvalue(const Matrix& h) { return hermitian_eigenvalues(h).minCoeff(); }

void validate_positive(const DensityOperator& rho) {
  double lo = min_eigenvalue(rho.mat);
  if (lo < -tol::positivity_clip)
    throw PositivityError("density operator has eigenvalue " + std::to_string(lo));
}

double doubling_difference(const std::function<Matrix(int)>& build, int dim) {
  Matrix coarse = build(dim);
  Matrix fine = build(2 * dim);
  Matrix block = fine.topLeftCorner(coarse.rows(), coarse.cols());
  double ref = std::max(fine.norm(), 1e-300);
  return (coarse - block).norm() / ref;
}

double doubling_difference_vec(const std::function<Vector(int)>& build, int dim) {
  Vector coarse = build(dim);
  Vector fine = build(2 * dim);
  Vector head = fine.head(coarse.size());
  // Tail weight left out by the coarse truncation counts as error too.
  double tail = fine.tail(fine.size() - coarse.size()).norm();
  double ref = std::max(fine.norm(), 1e-300);
  return std::hypot((coarse - head).norm(), tail) / ref;
}

}  // namespace medcorr
