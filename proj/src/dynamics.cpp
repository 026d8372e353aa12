#include "medcorr/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "medcorr/errors.hpp"
#include "medcorr/operators.hpp"
#include "medcorr/spectral.hpp"

namespace medcorr {

namespace {

void require_two_level_mediator(const SystemLayout& layout, const char* who) {
  if (layout.dim_c != 2)
    throw std::invalid_argument(std::string(who) + ": mediator must be two-level (dim_c == 2)");
}

}  // namespace

HamiltonianSpec build_jc_hamiltonian(const SystemLayout& layout, double g) {
  require_two_level_mediator(layout, "build_jc_hamiltonian");
  auto [sp, sm] = qubit_ladder();
  OperatorMatrix a = bosonic_annihilation(layout.dim_a);
  OperatorMatrix b = bosonic_annihilation(layout.dim_b);
  OperatorMatrix a_dag = a.adjoint();
  OperatorMatrix b_dag = b.adjoint();
  Matrix h_ac = g * (embed(layout, &a, nullptr, &sp) + embed(layout, &a_dag, nullptr, &sm));
  Matrix h_bc = g * (embed(layout, nullptr, &b, &sp) + embed(layout, nullptr, &b_dag, &sm));
  return {CouplingKind::jaynes_cummings, g, layout, std::move(h_ac), std::move(h_bc)};
}

HamiltonianSpec build_dipole_hamiltonian(const SystemLayout& layout, double g) {
  require_two_level_mediator(layout, "build_dipole_hamiltonian");
  OperatorMatrix sx = sigma_x();
  OperatorMatrix a = bosonic_annihilation(layout.dim_a);
  OperatorMatrix b = bosonic_annihilation(layout.dim_b);
  OperatorMatrix xa = a + a.adjoint();
  OperatorMatrix xb = b + b.adjoint();
  Matrix h_ac = g * embed(layout, &xa, nullptr, &sx);
  Matrix h_bc = g * embed(layout, nullptr, &xb, &sx);
  return {CouplingKind::dipole_dipole, g, layout, std::move(h_ac), std::move(h_bc)};
}

HamiltonianSpec build_custom_hamiltonian(const SystemLayout& layout, Matrix h_ac, Matrix h_bc) {
  if (h_ac.rows() != layout.total() || h_bc.rows() != layout.total())
    throw std::invalid_argument("build_custom_hamiltonian: pieces must act on the full space");
  require_hermitian(h_ac, 1e-10, "build_custom_hamiltonian (H_AC)");
  require_hermitian(h_bc, 1e-10, "build_custom_hamiltonian (H_BC)");
  return {CouplingKind::custom_bipartite_sum, 0.0, layout, std::move(h_ac), std::move(h_bc)};
}

double commutator_norm(const HamiltonianSpec& spec) {
  Matrix comm = spec.h_ac * spec.h_bc - spec.h_bc * spec.h_ac;
  // i[X, Y] is Hermitian for Hermitian X, Y; same spectral norm.
  return hermitian_spectral_norm(Complex(0, 1) * comm);
}

StateVector evolve_unitary(const StateVector& psi0, const HamiltonianSpec& spec, double t) {
  return UnitaryEvolver(spec).at(psi0, t);
}

UnitaryEvolver::UnitaryEvolver(const HamiltonianSpec& spec) : dims_(spec.layout.dims()) {
  Eigh eig = spectral_decompose(spec.full());
  eigenvalues_ = std::move(eig.eigenvalues);
  eigenvectors_ = std::move(eig.eigenvectors);
}

StateVector UnitaryEvolver::at(const StateVector& psi0, double t) const {
  if (psi0.amps.size() != eigenvectors_.rows())
    throw std::invalid_argument("UnitaryEvolver: state dimension mismatch");
  Vector coeffs = eigenvectors_.adjoint() * psi0.amps;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    coeffs[k] *= std::exp(Complex(0.0, -t * eigenvalues_[k]));
  return {eigenvectors_ * coeffs, dims_};
}

StateVector trotter_evolve(const StateVector& psi0, const HamiltonianSpec& spec, double t, int n) {
  if (n < 1) throw std::invalid_argument("trotter_evolve: n must be >= 1");
  if (psi0.amps.size() != spec.h_ac.rows())
    throw std::invalid_argument("trotter_evolve: state dimension mismatch");
  double dt = t / n;
  Matrix u_ac = exp_i_scaled(spec.h_ac, -dt);
  Matrix u_bc = exp_i_scaled(spec.h_bc, -dt);
  Vector psi = psi0.amps;
  for (int k = 0; k < n; ++k) psi = u_bc * (u_ac * psi);
  return {std::move(psi), psi0.dims};
}

TimeGrid::TimeGrid(double t_max_, int n_points_) : t_max(t_max_), n_points(n_points_) {
  if (t_max < 0) throw std::invalid_argument("TimeGrid: t_max must be >= 0");
  if (t_max == 0 ? n_points != 1 : n_points < 2)
    throw std::invalid_argument("TimeGrid: need n_points >= 2 (or exactly 1 when t_max = 0)");
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(n_points);
  for (int k = 0; k < n_points; ++k)
    out[k] = n_points == 1 ? 0.0 : t_max * k / (n_points - 1);
  return out;
}

namespace {

Matrix embed_jump(const SystemLayout& layout, const JumpOperator& jump) {
  if (jump.rate < 0) throw std::invalid_argument("lindblad_evolve: negative rate");
  const OperatorMatrix* ops[3] = {nullptr, nullptr, nullptr};
  ops[int(jump.where)] = &jump.op;
  return std::sqrt(jump.rate) * embed(layout, ops[0], ops[1], ops[2]);
}

}  // namespace

std::vector<DensityOperator> lindblad_evolve(const DensityOperator& rho0, const LindbladSpec& spec,
                                             const TimeGrid& grid, const LindbladOptions& options) {
  const SystemLayout& layout = spec.hamiltonian.layout;
  if (rho0.mat.rows() != layout.total())
    throw std::invalid_argument("lindblad_evolve: state dimension mismatch");
  rho0.validate_basic();

  Matrix h = spec.hamiltonian.full();
  std::vector<Matrix> qs, qdq;
  double dissipator_scale = 0.0;
  for (const JumpOperator& jump : spec.jumps) {
    Matrix q = embed_jump(layout, jump);
    qdq.push_back(q.adjoint() * q);
    dissipator_scale += hermitian_spectral_norm(qdq.back());
    qs.push_back(std::move(q));
  }
  double scale = hermitian_spectral_norm(h) + dissipator_scale;

  auto derivative = [&](const Matrix& rho) {
    Matrix out = Complex(0, -1) * (h * rho - rho * h);
    for (std::size_t k = 0; k < qs.size(); ++k)
      out += qs[k] * rho * qs[k].adjoint() - 0.5 * (qdq[k] * rho + rho * qdq[k]);
    return out;
  };

  auto check_sample = [&](const Matrix& rho, double t) {
    if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-8)
      throw IntegratorError(t, "trace drifted from 1");
    double lo = min_eigenvalue(0.5 * (rho + rho.adjoint().eval()));
    if (lo < -tol::positivity_clip)
      throw IntegratorError(t, "state lost positivity (eigenvalue " + std::to_string(lo) + ")");
  };

  std::vector<double> times = grid.times();
  std::vector<DensityOperator> out;
  out.reserve(times.size());
  Matrix rho = rho0.mat;
  check_sample(rho, times[0]);
  out.push_back({rho, rho0.dims});

  for (std::size_t s = 1; s < times.size(); ++s) {
    double span = times[s] - times[s - 1];
    int substeps = std::max(1, int(std::ceil(span * scale / options.max_step_scale)));
    double dt = span / substeps;
    for (int k = 0; k < substeps; ++k) {
      Matrix k1 = derivative(rho);
      Matrix k2 = derivative(rho + 0.5 * dt * k1);
      Matrix k3 = derivative(rho + 0.5 * dt * k2);
      Matrix k4 = derivative(rho + dt * k3);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    // RK4 preserves Hermiticity only up to roundoff; re-symmetrize.
    rho = 0.5 * (rho + rho.adjoint().eval());
    check_sample(rho, times[s]);
    out.push_back({rho, rho0.dims});
  }
  return out;
}

OperatorMatrix total_excitation_operator(const SystemLayout& layout) {
  require_two_level_mediator(layout, "total_excitation_operator");
  auto [sp, sm] = qubit_ladder();
  OperatorMatrix num_c = sp * sm;
  OperatorMatrix a = bosonic_annihilation(layout.dim_a);
  OperatorMatrix b = bosonic_annihilation(layout.dim_b);
  OperatorMatrix num_a = a.adjoint() * a;
  OperatorMatrix num_b = b.adjoint() * b;
  return embed(layout, &num_a, nullptr, nullptr) + embed(layout, nullptr, &num_b, nullptr) +
         embed(layout, nullptr, nullptr, &num_c);
}

}  // namespace medcorr
