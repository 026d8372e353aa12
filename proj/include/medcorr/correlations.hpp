#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "medcorr/types.hpp"

namespace medcorr {

enum class MeasureKind { mutual_information, classical_lower_bound, discord_lower_bound, negativity };

inline constexpr MeasureKind all_measures[] = {
    MeasureKind::mutual_information, MeasureKind::classical_lower_bound,
    MeasureKind::discord_lower_bound, MeasureKind::negativity};

// Short names used on the command line and in CSV output.
std::string measure_name(MeasureKind kind);
MeasureKind parse_measure(const std::string& name);  // throws invalid_argument

// -sum lambda log2 lambda, in bits. Eigenvalues in [-1e-10, 0) count as 0;
// anything lower raises PositivityError.
double von_neumann_entropy(const DensityOperator& rho);

// All four quantifiers act on a two-factor state, the cut being between the
// factors: I = S_0 + S_1 - S_01.
double mutual_information(const DensityOperator& rho);

// Mutual information of the outcome distribution of projective measurements
// in a product basis (default: the computational/Fock basis; pass unitaries
// whose columns are the local bases to measure elsewhere). A lower bound on
// the classical correlations; no optimization over bases is performed.
double classical_lower_bound(const DensityOperator& rho, const Matrix* basis_0 = nullptr,
                             const Matrix* basis_1 = nullptr);

// -S(0|1) = S_1 - S_01. May be negative; reported as-is. A lower bound on
// the relative entropy of discord.
double discord_lower_bound(const DensityOperator& rho);

// (||rho^{T_0}||_1 - 1) / 2 from the eigenvalues of the partial transpose.
double negativity(const DensityOperator& rho);

double evaluate_measure(MeasureKind kind, const DensityOperator& rho);

// Largest value each measure can reach across a d_c-dimensional mediator:
// 2 log2 d_c, log2 d_c, log2 d_c, (d_c - 1)/2. For the two lower-bound
// measures this is the capacity of the bounded quantity, so an observed
// violation by the lower bound implies one by the true quantity.
double correlation_capacity(MeasureKind kind, int d_c);

// I_{AC:B} of a full tripartite state: S_AC + S_B - S_ABC.
double initial_correlation_term(const DensityOperator& rho0);

struct ViolationRecord {
  bool violated = false;
  std::optional<double> first_time;
};

struct CorrelationTrajectory {
  std::vector<double> times;
  std::map<MeasureKind, std::vector<double>> values;
  std::map<MeasureKind, double> bounds;
  std::map<MeasureKind, ViolationRecord> violations;
  double initial_correlation_term = 0.0;
  // The capacity-only negativity bound is established for initial states of
  // the form rho_AC (x) rho_B; when the input starts correlated across that
  // cut the bound is still reported, flagged here with a note.
  bool negativity_bound_applicable = true;
  std::string note;
};

// Reduce each full-space sample to AB and evaluate the requested measures
// across the A:B cut. Bounds: initial_correlation_term + capacity for the
// entropic measures, capacity alone for negativity. A sample violates when
// value > bound + 1e-9; the first such time is recorded.
CorrelationTrajectory evaluate_trajectory(const std::vector<double>& times,
                                          const std::vector<StateVector>& states,
                                          const std::vector<MeasureKind>& measures);
CorrelationTrajectory evaluate_trajectory(const std::vector<double>& times,
                                          const std::vector<DensityOperator>& states,
                                          const std::vector<MeasureKind>& measures);

// Smallest d_c whose capacity covers the observed value (boundary inclusive
// within 1e-12 relative slack). The caller must already have subtracted any
// initial-correlation offset.
int dimension_witness(MeasureKind kind, double observed);

}  // namespace medcorr
