#pragma once

#include <vector>

#include "medcorr/types.hpp"

namespace medcorr {

enum class CouplingKind { jaynes_cummings, dipole_dipole, custom_bipartite_sum };

// Mediated Hamiltonian H = H_AC + H_BC. The pieces are stored separately
// (full-space matrices) so product-formula evolution and commutator probes
// can get at them; by construction neither piece touches the other probe,
// so there is never a direct A-B term.
struct HamiltonianSpec {
  CouplingKind kind;
  double g = 1.0;
  SystemLayout layout;
  Matrix h_ac;  // acts on A and C, identity on B
  Matrix h_bc;  // acts on B and C, identity on A

  Matrix full() const { return h_ac + h_bc; }
};

// g (a sigma+ + a^dag sigma-) + g (b sigma+ + b^dag sigma-); requires a
// two-level mediator. Conserves a^dag a + b^dag b + sigma+ sigma-.
HamiltonianSpec build_jc_hamiltonian(const SystemLayout& layout, double g);

// g (a + a^dag) sigma_x + g (b + b^dag) sigma_x; requires a two-level
// mediator. The two pieces commute.
HamiltonianSpec build_dipole_hamiltonian(const SystemLayout& layout, double g);

// Caller-supplied full-space pieces, each Hermitian and acting trivially on
// the probe it does not name. Trivial action is the caller's promise; only
// Hermiticity and dimensions are checked.
HamiltonianSpec build_custom_hamiltonian(const SystemLayout& layout, Matrix h_ac, Matrix h_bc);

// Spectral norm of [H_AC, H_BC]. Zero iff the evolution factorizes exactly.
double commutator_norm(const HamiltonianSpec& spec);

// exp(-i H t) |psi0> via one spectral decomposition of the full H.
StateVector evolve_unitary(const StateVector& psi0, const HamiltonianSpec& spec, double t);

// Same evolution with the decomposition cached, for many sample times.
class UnitaryEvolver {
 public:
  explicit UnitaryEvolver(const HamiltonianSpec& spec);
  StateVector at(const StateVector& psi0, double t) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
  std::vector<int> dims_;
};

// First-order product formula (exp(-i dt H_BC) exp(-i dt H_AC))^n with
// dt = t/n. Both factor unitaries are built once and reused n times.
StateVector trotter_evolve(const StateVector& psi0, const HamiltonianSpec& spec, double t, int n);

// Uniform sample times 0 = t_0 < ... < t_{n-1} = t_max.
struct TimeGrid {
  double t_max;
  int n_points;

  TimeGrid(double t_max_, int n_points_);
  std::vector<double> times() const;
};

// Jump operator sqrt(rate) * op acting on one subsystem only.
struct JumpOperator {
  Subsystem where;
  OperatorMatrix op;  // on the named factor's space
  double rate = 1.0;
};

struct LindbladSpec {
  HamiltonianSpec hamiltonian;
  std::vector<JumpOperator> jumps;
};

struct LindbladOptions {
  // RK4 substep ceiling: dt * (||H|| + sum rate ||Q||^2) <= max_step_scale.
  // Halving this changes correlation outputs by well under 1e-6. The default
  // keeps the per-step error so small that pure-state zero eigenvalues stay
  // within the global positivity clip over long runs.
  double max_step_scale = 0.005;
};

// Fixed-step RK4 integration of
//   rho' = -i[H, rho] + sum_k (Q_k rho Q_k^dag - {Q_k^dag Q_k, rho}/2)
// sampled on the grid. Each sample is checked for unit trace (1e-8) and
// positivity; failures raise IntegratorError naming the sample time.
std::vector<DensityOperator> lindblad_evolve(const DensityOperator& rho0, const LindbladSpec& spec,
                                             const TimeGrid& grid,
                                             const LindbladOptions& options = {});

// a^dag a + b^dag b + sigma+ sigma- on the full space (two-level mediator).
OperatorMatrix total_excitation_operator(const SystemLayout& layout);

}  // namespace medcorr
