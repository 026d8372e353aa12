#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "medcorr/correlations.hpp"
#include "medcorr/dynamics.hpp"
#include "medcorr/types.hpp"

namespace medcorr {

enum class ScenarioCoupling { jc, dipole };

struct DissipatorConfig {
  Subsystem where;
  enum class Kind { lowering, dephasing } kind;
  double rate;
};

// One simulation run as described by a config file. Initial states are
// either a product occupation like "110" or an explicit amplitude list over
// the product basis (which then requires an explicit field_dim).
struct ScenarioConfig {
  ScenarioCoupling coupling = ScenarioCoupling::jc;
  double g = 1.0;
  std::array<int, 3> occupations{};            // used when amplitudes empty
  std::vector<Complex> amplitudes;             // optional explicit state
  double t_max_gt = 0.0;
  int n_points = 401;
  std::optional<int> field_dim;                // nullopt = auto
  std::vector<MeasureKind> measures{all_measures, all_measures + 4};
  std::vector<DissipatorConfig> dissipators;
  std::string output_path = "trajectory.csv";
};

// Line-oriented key=value parser; '#' starts a comment, blank lines are
// skipped, unknown or repeated keys are errors. Throws ParseError carrying
// the offending line number.
ScenarioConfig parse_config(const std::string& text);

struct ScenarioResult {
  SystemLayout layout;
  int field_dim;
  CorrelationTrajectory trajectory;
};

// Pick the field truncation: exact N+1 for the excitation-conserving
// coupling, 8 (1 + ceil(g t_max)) for the dipole one.
int auto_field_dim(const ScenarioConfig& config);

// Build the initial state, evolve (unitary, or Lindblad when dissipators
// are present), and evaluate the requested measures over the A:B cut.
ScenarioResult run_scenario(const ScenarioConfig& config);

// CSV rows `gt,measure,value,bound,violated`, LF endings, 12 significant
// digits; plus the human-readable per-measure summary lines.
std::string trajectory_csv(const CorrelationTrajectory& trajectory);
std::string violation_summary(const CorrelationTrajectory& trajectory);

// Shortest round-trippable decimal: printf %.12g.
std::string format_g12(double value);

}  // namespace medcorr
