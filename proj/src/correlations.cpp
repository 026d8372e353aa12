#include "medcorr/correlations.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "medcorr/errors.hpp"
#include "medcorr/operators.hpp"
#include "medcorr/spectral.hpp"

namespace medcorr {

namespace {

constexpr double log2e = 1.4426950408889634;

double entropy_bits(const Eigen::VectorXd& eigenvalues, const char* who) {
  double s = 0.0;
  for (double lam : eigenvalues) {
    if (lam < -tol::positivity_clip)
      throw PositivityError(std::string(who) + ": eigenvalue " + std::to_string(lam));
    if (lam > 0.0) s -= lam * std::log(lam) * log2e;
  }
  return s;
}

void require_two_factor(const DensityOperator& rho, const char* who) {
  if (rho.dims.size() != 2)
    throw std::invalid_argument(std::string(who) + ": expects a two-factor state");
}

}  // namespace

std::string measure_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::mutual_information: return "mutual_information";
    case MeasureKind::classical_lower_bound: return "classical";
    case MeasureKind::discord_lower_bound: return "discord";
    case MeasureKind::negativity: return "negativity";
  }
  throw std::invalid_argument("measure_name: bad kind");
}

MeasureKind parse_measure(const std::string& name) {
  for (MeasureKind kind : all_measures)
    if (name == measure_name(kind)) return kind;
  throw std::invalid_argument("unknown measure '" + name + "'");
}

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_bits(hermitian_eigenvalues(rho.mat), "von_neumann_entropy");
}

double mutual_information(const DensityOperator& rho) {
  require_two_factor(rho, "mutual_information");
  double s0 = von_neumann_entropy(partial_trace(rho, std::vector<int>{0}));
  double s1 = von_neumann_entropy(partial_trace(rho, std::vector<int>{1}));
  return s0 + s1 - von_neumann_entropy(rho);
}

double classical_lower_bound(const DensityOperator& rho, const Matrix* basis_0,
                             const Matrix* basis_1) {
  require_two_factor(rho, "classical_lower_bound");
  const int d0 = rho.dims[0], d1 = rho.dims[1];
  if (basis_0 && (basis_0->rows() != d0 || basis_0->cols() != d0))
    throw std::invalid_argument("classical_lower_bound: basis_0 dimension mismatch");
  if (basis_1 && (basis_1->rows() != d1 || basis_1->cols() != d1))
    throw std::invalid_argument("classical_lower_bound: basis_1 dimension mismatch");

  // Outcome distribution p(x,y) = <xy| rho |xy> over the product basis.
  Eigen::MatrixXd p(d0, d1);
  if (!basis_0 && !basis_1) {
    for (int x = 0; x < d0; ++x)
      for (int y = 0; y < d1; ++y) p(x, y) = rho.mat(x * d1 + y, x * d1 + y).real();
  } else {
    Matrix u = kron(basis_0 ? *basis_0 : Matrix(Matrix::Identity(d0, d0)),
                    basis_1 ? *basis_1 : Matrix(Matrix::Identity(d1, d1)));
    Matrix rotated = u.adjoint() * rho.mat * u;
    for (int x = 0; x < d0; ++x)
      for (int y = 0; y < d1; ++y) p(x, y) = rotated(x * d1 + y, x * d1 + y).real();
  }

  auto shannon = [](const Eigen::VectorXd& probs) {
    return entropy_bits(probs, "classical_lower_bound");
  };
  return shannon(p.rowwise().sum()) + shannon(p.colwise().sum().transpose()) -
         shannon(Eigen::Map<const Eigen::VectorXd>(p.data(), p.size()));
}

double discord_lower_bound(const DensityOperator& rho) {
  require_two_factor(rho, "discord_lower_bound");
  double s1 = von_neumann_entropy(partial_trace(rho, std::vector<int>{1}));
  return s1 - von_neumann_entropy(rho);
}

double negativity(const DensityOperator& rho) {
  require_two_factor(rho, "negativity");
  Eigen::VectorXd ev = hermitian_eigenvalues(partial_transpose(rho));
  return (ev.cwiseAbs().sum() - 1.0) / 2.0;
}

double evaluate_measure(MeasureKind kind, const DensityOperator& rho) {
  switch (kind) {
    case MeasureKind::mutual_information: return mutual_information(rho);
    case MeasureKind::classical_lower_bound: return classical_lower_bound(rho);
    case MeasureKind::discord_lower_bound: return discord_lower_bound(rho);
    case MeasureKind::negativity: return negativity(rho);
  }
  throw std::invalid_argument("evaluate_measure: bad kind");
}

double correlation_capacity(MeasureKind kind, int d_c) {
  if (d_c < 2) throw std::invalid_argument("correlation_capacity: d_c must be >= 2");
  switch (kind) {
    case MeasureKind::mutual_information: return 2.0 * std::log2(double(d_c));
    case MeasureKind::classical_lower_bound: return std::log2(double(d_c));
    case MeasureKind::discord_lower_bound: return std::log2(double(d_c));
    case MeasureKind::negativity: return (d_c - 1) / 2.0;
  }
  throw std::invalid_argument("correlation_capacity: bad kind");
}

double initial_correlation_term(const DensityOperator& rho0) {
  if (rho0.dims.size() != 3)
    throw std::invalid_argument("initial_correlation_term: expects a three-factor state");
  double s_ac = von_neumann_entropy(partial_trace(rho0, std::vector<int>{0, 2}));
  double s_b = von_neumann_entropy(partial_trace(rho0, std::vector<int>{1}));
  return s_ac + s_b - von_neumann_entropy(rho0);
}

namespace {

// Reshapes of a pure tripartite state: rows indexed by the kept composite
// index, columns by the traced one, so the reduction is M M^dag.
Matrix reshape_ab_c(const StateVector& psi) {
  const int dc = psi.dims[2], dab = psi.dims[0] * psi.dims[1];
  return Eigen::Map<const Matrix>(psi.amps.data(), dc, dab).transpose();
}

Matrix reshape_ac_b(const StateVector& psi) {
  const int da = psi.dims[0], db = psi.dims[1], dc = psi.dims[2];
  Matrix m(da * dc, db);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < dc; ++c) m(a * dc + c, b) = psi.amps[(a * db + b) * dc + c];
  return m;
}

struct SampleSource {
  std::function<DensityOperator(std::size_t)> reduced_ab;  // two-factor state on A,B
  std::function<double()> initial_term;                    // I_{AC:B} of sample 0
  std::vector<int> dims;
  std::size_t count;
};

CorrelationTrajectory evaluate_impl(const std::vector<double>& times, const SampleSource& source,
                                    const std::vector<MeasureKind>& measures) {
  if (source.count == 0) throw std::invalid_argument("evaluate_trajectory: empty trajectory");
  if (times.size() != source.count)
    throw std::invalid_argument("evaluate_trajectory: times and states differ in length");
  if (source.dims.size() != 3)
    throw std::invalid_argument("evaluate_trajectory: states must be on the full three-factor space");
  if (measures.empty()) throw std::invalid_argument("evaluate_trajectory: no measures requested");

  CorrelationTrajectory out;
  out.times = times;
  out.initial_correlation_term = source.initial_term();

  const int d_c = source.dims[2];
  for (MeasureKind kind : measures) {
    double capacity = correlation_capacity(kind, d_c);
    out.bounds[kind] = kind == MeasureKind::negativity
                           ? capacity
                           : out.initial_correlation_term + capacity;
    out.values[kind].reserve(source.count);
    out.violations[kind] = {};
  }
  if (out.values.count(MeasureKind::negativity) &&
      out.initial_correlation_term > tol::violation_slack) {
    out.negativity_bound_applicable = false;
    out.note =
        "negativity bound assumes an initial state uncorrelated across AC:B; "
        "here I_{AC:B}(0) > 0, so its violations are indicative only";
  }

  for (std::size_t s = 0; s < source.count; ++s) {
    DensityOperator rho_ab = source.reduced_ab(s);
    for (MeasureKind kind : measures) {
      double value = evaluate_measure(kind, rho_ab);
      out.values[kind].push_back(value);
      ViolationRecord& record = out.violations[kind];
      if (!record.violated && value > out.bounds[kind] + tol::violation_slack) {
        record.violated = true;
        record.first_time = times[s];
      }
    }
  }
  return out;
}

}  // namespace

CorrelationTrajectory evaluate_trajectory(const std::vector<double>& times,
                                          const std::vector<StateVector>& states,
                                          const std::vector<MeasureKind>& measures) {
  SampleSource source;
  source.count = states.size();
  if (!states.empty()) {
    source.dims = states[0].dims;
    source.reduced_ab = [&states](std::size_t s) {
      const StateVector& psi = states[s];
      Matrix m = reshape_ab_c(psi);
      return DensityOperator{m * m.adjoint(), {psi.dims[0], psi.dims[1]}};
    };
    source.initial_term = [&states] {
      // Pure full state: S_ABC = 0, so the term is S_AC + S_B.
      Matrix m = reshape_ac_b(states[0]);
      Matrix rho_ac = m * m.adjoint();
      Matrix rho_b = m.transpose() * m.conjugate();
      return entropy_bits(hermitian_eigenvalues(rho_ac), "initial_correlation_term") +
             entropy_bits(hermitian_eigenvalues(rho_b), "initial_correlation_term");
    };
  }
  return evaluate_impl(times, source, measures);
}

CorrelationTrajectory evaluate_trajectory(const std::vector<double>& times,
                                          const std::vector<DensityOperator>& states,
                                          const std::vector<MeasureKind>& measures) {
  SampleSource source;
  source.count = states.size();
  if (!states.empty()) {
    source.dims = states[0].dims;
    source.reduced_ab = [&states](std::size_t s) {
      return partial_trace(states[s], {Subsystem::A, Subsystem::B});
    };
    source.initial_term = [&states] { return initial_correlation_term(states[0]); };
  }
  return evaluate_impl(times, source, measures);
}

int dimension_witness(MeasureKind kind, double observed) {
  if (!std::isfinite(observed)) throw std::invalid_argument("dimension_witness: observed not finite");
  if (kind == MeasureKind::negativity && observed < 0)
    throw std::invalid_argument("dimension_witness: negativity must be >= 0");
  for (int d = 2;; ++d) {
    double capacity = correlation_capacity(kind, d);
    if (capacity >= observed - 1e-12 * std::max(1.0, std::abs(observed))) return d;
  }
}

}  // namespace medcorr
