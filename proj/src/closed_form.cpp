#include "medcorr/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "medcorr/errors.hpp"
#include "medcorr/operators.hpp"

namespace medcorr {

double laguerre(int k, double x) {
  if (k < 0) throw std::invalid_argument("laguerre: order must be >= 0");
  double prev = 1.0;  // L_0
  if (k == 0) return prev;
  double cur = 1.0 - x;  // L_1
  for (int j = 1; j < k; ++j) {
    double next = ((2 * j + 1 - x) * cur - j * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double displacement_diagonal(int k, Complex alpha) {
  double a2 = std::norm(alpha);
  return std::exp(-a2 / 2.0) * laguerre(k, a2);
}

namespace {

double radicand_factor(int k, double a2, int sign) {
  double value = 1.0 + sign * std::exp(-2.0 * a2) * laguerre(k, 4.0 * a2);
  if (value < -1e-12)
    throw std::domain_error("dipole_coefficients: radicand " + std::to_string(value));
  return std::max(value, 0.0);
}

}  // namespace

DipoleCoefficients dipole_coefficients(int m, int n, Complex alpha) {
  if (m < 0 || n < 0) throw std::invalid_argument("dipole_coefficients: occupations must be >= 0");
  double a2 = std::norm(alpha);
  double fm_p = radicand_factor(m, a2, +1), fm_m = radicand_factor(m, a2, -1);
  double fn_p = radicand_factor(n, a2, +1), fn_m = radicand_factor(n, a2, -1);
  return {2.0 * std::sqrt(fm_p * fn_p), 2.0 * std::sqrt(fm_m * fn_m),
          2.0 * std::sqrt(fm_p * fn_m), 2.0 * std::sqrt(fm_m * fn_p)};
}

namespace {

// (D(alpha) + sign D(-alpha)) |k>, not normalized; squared norm d_{ss}^(kk).
Vector branch_unnormalized(int k, Complex alpha, int sign, int dim) {
  if (k < 0 || k >= dim) throw std::invalid_argument("branch occupation out of range for field_dim");
  OperatorMatrix d_plus = displacement(alpha, dim);
  OperatorMatrix d_minus = displacement(-alpha, dim);
  return d_plus.col(k) + double(sign) * d_minus.col(k);
}

}  // namespace

Vector dipole_branch_state(int k, Complex alpha, int sign, int dim) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("dipole_branch_state: sign must be +/-1");
  double a2 = std::norm(alpha);
  double weight = 2.0 * radicand_factor(k, a2, sign);  // d_{ss}^(kk)
  if (weight < 1e-12)
    throw std::domain_error("dipole_branch_state: branch weight vanishes at this time");
  return branch_unnormalized(k, alpha, sign, dim) / std::sqrt(weight);
}

DensityOperator effective_two_qubit_state(int m, int n, Complex alpha) {
  DipoleCoefficients d = dipole_coefficients(m, n, alpha);
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = d.pp * d.pp;
  rho(1, 1) = d.pm * d.pm;
  rho(2, 2) = d.mp * d.mp;
  rho(3, 3) = d.mm * d.mm;
  rho(0, 3) = rho(3, 0) = rho(1, 2) = rho(2, 1) = d.pp * d.mm;
  return {rho / 16.0, {2, 2}};
}

DensityOperator dipole_closed_form_reduced_ab(int m, int n, double g, double t, int field_dim) {
  if (m < 0 || n < 0) throw std::invalid_argument("dipole_closed_form_reduced_ab: occupations must be >= 0");
  Complex alpha = Complex(0.0, g * t);

  // Truncation adequacy: the displaced occupied level must keep its mass
  // inside the window; the spill grows with the level, so the higher
  // occupation is the worst case.
  int worst = std::max(m, n);
  if (worst >= field_dim)
    throw std::invalid_argument("dipole_closed_form_reduced_ab: occupation exceeds field_dim");
  OperatorMatrix probe = displacement(alpha, 2 * field_dim);
  double tail = probe.col(worst).tail(field_dim).squaredNorm();
  if (tail > tol::truncation_tail)
    throw TruncationError("dipole_closed_form_reduced_ab: field_dim " +
                          std::to_string(field_dim) + " too small (tail mass " +
                          std::to_string(tail) + " escapes the truncation)");

  // Unnormalized branches; the 1/sqrt(d) normalizations cancel against the
  // d coefficients, leaving weight 1/16 on each atom branch.
  Vector um_p = branch_unnormalized(m, alpha, +1, field_dim);
  Vector um_m = branch_unnormalized(m, alpha, -1, field_dim);
  Vector un_p = branch_unnormalized(n, alpha, +1, field_dim);
  Vector un_m = branch_unnormalized(n, alpha, -1, field_dim);

  Vector atom0 = kron(um_p, un_p) + kron(um_m, un_m);
  Vector atom1 = kron(um_p, un_m) + kron(um_m, un_p);
  Matrix rho = (atom0 * atom0.adjoint() + atom1 * atom1.adjoint()) / 16.0;
  return {std::move(rho), {field_dim, field_dim}};
}

}  // namespace medcorr
