// End-to-end acceptance gate. Runs the eight headline checks against the
// built library and the installed CLI binary (path passed as argv[1]) and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "medcorr/closed_form.hpp"
#include "medcorr/correlations.hpp"
#include "medcorr/dynamics.hpp"
#include "medcorr/operators.hpp"
#include "medcorr/scenario.hpp"
#include "medcorr/spectral.hpp"

using namespace medcorr;

namespace {

std::string cli_path;
int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("%s: criterion %d — %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++failures;
}

void run_criterion(int criterion, const std::string& what, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& err) {
    report(criterion, what, false, std::string("exception: ") + err.what());
  }
}

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  std::string command = "'" + cli_path + "' " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  std::string output;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::map<std::string, double> parse_key_values(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = std::strtod(line.c_str() + eq + 1, nullptr);
  }
  return out;
}

std::vector<MeasureKind> four_measures() { return {all_measures, all_measures + 4}; }

// Evolve |occ> under the chosen coupling and evaluate all four measures on
// a uniform gt grid. Mirrors the scenario pipeline without file output.
CorrelationTrajectory evolve_and_measure(ScenarioCoupling coupling, std::array<int, 3> occ,
                                         double t_max_gt, int n_points, int field_dim) {
  SystemLayout layout(field_dim, field_dim, 2);
  HamiltonianSpec h = coupling == ScenarioCoupling::jc ? build_jc_hamiltonian(layout, 1.0)
                                                       : build_dipole_hamiltonian(layout, 1.0);
  UnitaryEvolver evolver(h);
  StateVector psi0 = basis_state(layout, occ);
  std::vector<double> times(n_points);
  std::vector<StateVector> states;
  states.reserve(n_points);
  for (int k = 0; k < n_points; ++k) {
    times[k] = t_max_gt * k / (n_points - 1);
    states.push_back(evolver.at(psi0, times[k]));
  }
  return evaluate_trajectory(times, states, four_measures());
}

double max_of(const std::vector<double>& values) {
  double out = values[0];
  for (double v : values) out = std::max(out, v);
  return out;
}

// Trajectories kept around for the cross-cutting property checks (7).
std::vector<const CorrelationTrajectory*> recorded;
std::vector<CorrelationTrajectory> storage;

const CorrelationTrajectory& record(CorrelationTrajectory&& trajectory) {
  storage.reserve(16);
  storage.push_back(std::move(trajectory));
  recorded.push_back(&storage.back());
  return storage.back();
}

void criterion_1() {
  run_criterion(1, "mediator capacities from the CLI", [] {
    CliResult d2 = run_cli("capacities 2");
    CliResult d3 = run_cli("capacities 3");
    if (d2.exit_code != 0 || d3.exit_code != 0) {
      report(1, "mediator capacities from the CLI", false,
             "nonzero exit: " + std::to_string(d2.exit_code) + "/" + std::to_string(d3.exit_code));
      return;
    }
    auto v2 = parse_key_values(d2.output);
    auto v3 = parse_key_values(d3.output);
    double log2_3 = std::log2(3.0);
    bool ok = v2.at("mutual_information") == 2.0 && v2.at("classical") == 1.0 &&
              v2.at("discord") == 1.0 && v2.at("negativity") == 0.5 &&
              std::abs(v3.at("mutual_information") - 2.0 * log2_3) < 1e-12 &&
              std::abs(v3.at("classical") - log2_3) < 1e-12 &&
              std::abs(v3.at("discord") - log2_3) < 1e-12 && v3.at("negativity") == 1.0;
    report(1, "mediator capacities from the CLI", ok,
           ok ? "" : "printed values off: " + d2.output + d3.output);
  });
}

void criterion_2() {
  run_criterion(2, "entanglement outruns its bound from |101> while total correlations hold", [] {
    const CorrelationTrajectory& traj =
        record(evolve_and_measure(ScenarioCoupling::jc, {1, 0, 1}, 4.0, 401, 3));
    double max_neg = max_of(traj.values.at(MeasureKind::negativity));
    double max_mi = max_of(traj.values.at(MeasureKind::mutual_information));
    bool ok = max_neg > 0.5 + 1e-6 && max_mi <= 2.0 + 1e-9;
    report(2, "entanglement outruns its bound from |101> while total correlations hold", ok,
           "max negativity " + format_g12(max_neg) + ", max mutual information " +
               format_g12(max_mi));
  });
}

void criterion_3() {
  run_criterion(3, "every quantifier violates somewhere; more photons violate sooner", [] {
    const CorrelationTrajectory& t110 =
        record(evolve_and_measure(ScenarioCoupling::jc, {1, 1, 0}, 4.0, 401, 3));
    const CorrelationTrajectory& t210 =
        record(evolve_and_measure(ScenarioCoupling::jc, {2, 1, 0}, 4.0, 401, 4));
    const CorrelationTrajectory& t220 =
        record(evolve_and_measure(ScenarioCoupling::jc, {2, 2, 0}, 4.0, 401, 5));

    bool all_violated = true;
    std::string detail;
    for (MeasureKind kind : four_measures()) {
      bool any = t110.violations.at(kind).violated || t210.violations.at(kind).violated ||
                 t220.violations.at(kind).violated;
      all_violated = all_violated && any;
      detail += measure_name(kind) + (any ? " violated; " : " never violated; ");
    }

    std::optional<double> first110 = t110.violations.at(MeasureKind::mutual_information).first_time;
    std::optional<double> first220 = t220.violations.at(MeasureKind::mutual_information).first_time;
    bool ordering = first110 && first220 && *first220 < *first110;
    detail += "first MI violation gt: |220> " +
              (first220 ? format_g12(*first220) : std::string("none")) + " vs |110> " +
              (first110 ? format_g12(*first110) : std::string("none"));
    report(3, "every quantifier violates somewhere; more photons violate sooner",
           all_violated && ordering, detail);
  });
}

void criterion_4() {
  run_criterion(4, "commuting coupling never violates", [] {
    bool ok = true;
    std::string detail;
    for (std::array<int, 3> occ : {std::array<int, 3>{1, 1, 0}, std::array<int, 3>{2, 2, 0}}) {
      const CorrelationTrajectory& traj =
          record(evolve_and_measure(ScenarioCoupling::dipole, occ, 2.0, 101, 24));
      double max_neg = max_of(traj.values.at(MeasureKind::negativity));
      double max_mi = max_of(traj.values.at(MeasureKind::mutual_information));
      ok = ok && max_neg <= 1e-8 && max_mi <= 1.0 + 1e-9;
      detail += "|" + std::to_string(occ[0]) + std::to_string(occ[1]) + "0>: max negativity " +
                format_g12(max_neg) + ", max mutual information " + format_g12(max_mi) + "; ";
    }
    report(4, "commuting coupling never violates", ok, detail);
  });
}

void criterion_5() {
  run_criterion(5, "closed form and numerics tell the same story", [] {
    const int dim = 16;
    SystemLayout layout(dim, dim, 2);
    HamiltonianSpec dd = build_dipole_hamiltonian(layout, 1.0);
    UnitaryEvolver evolver(dd);

    double worst_entry = 0.0, worst_pt = 0.0;
    for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
      StateVector psi0 = basis_state(layout, {m, n, 0});
      for (double gt : {0.25, 0.5, 1.0}) {
        DensityOperator evolved =
            partial_trace(pure_density(evolver.at(psi0, gt)), {Subsystem::A, Subsystem::B});
        DensityOperator closed = dipole_closed_form_reduced_ab(m, n, 1.0, gt, dim);
        worst_entry =
            std::max(worst_entry, (evolved.mat - closed.mat).cwiseAbs().maxCoeff());
        double pt_min =
            min_eigenvalue(partial_transpose(effective_two_qubit_state(m, n, Complex(0, gt))));
        worst_pt = std::min(worst_pt, pt_min);
      }
    }
    bool ok = worst_entry <= 1e-6 && worst_pt >= -1e-10;
    report(5, "closed form and numerics tell the same story", ok,
           "worst entrywise gap " + format_g12(worst_entry) + ", lowest partial-transpose eigenvalue " +
               format_g12(worst_pt));
  });
}

void criterion_6() {
  run_criterion(6, "product formula converges at first order", [] {
    SystemLayout layout(3, 3, 2);
    HamiltonianSpec jc = build_jc_hamiltonian(layout, 1.0);
    StateVector psi0 = basis_state(layout, {1, 1, 0});
    StateVector exact = evolve_unitary(psi0, jc, 1.0);

    bool ratios_ok = true;
    std::string detail = "error ratios:";
    double prev = (trotter_evolve(psi0, jc, 1.0, 64).amps - exact.amps).norm();
    for (int n : {128, 256, 512}) {
      double cur = (trotter_evolve(psi0, jc, 1.0, n).amps - exact.amps).norm();
      double ratio = prev / cur;
      detail += " " + format_g12(ratio);
      ratios_ok = ratios_ok && ratio >= 1.8 && ratio <= 2.2;
      prev = cur;
    }

    SystemLayout wide(16, 16, 2);
    HamiltonianSpec dd = build_dipole_hamiltonian(wide, 1.0);
    StateVector phi0 = basis_state(wide, {1, 1, 0});
    double dd_gap =
        (trotter_evolve(phi0, dd, 1.0, 1).amps - evolve_unitary(phi0, dd, 1.0).amps).norm();
    detail += "; commuting one-step gap " + format_g12(dd_gap);
    report(6, "product formula converges at first order", ratios_ok && dd_gap <= 1e-10, detail);
  });
}

void criterion_7() {
  run_criterion(7, "property suites hold", [] {
    std::string detail;

    // Chain inequalities on every sample of every recorded run.
    bool chain_ok = true;
    for (const CorrelationTrajectory* traj : recorded) {
      const auto& mi = traj->values.at(MeasureKind::mutual_information);
      const auto& cl = traj->values.at(MeasureKind::classical_lower_bound);
      const auto& di = traj->values.at(MeasureKind::discord_lower_bound);
      for (std::size_t k = 0; k < mi.size(); ++k)
        chain_ok = chain_ok && cl[k] <= mi[k] + 1e-9 && di[k] <= mi[k] + 1e-9;
    }
    detail += chain_ok ? "chains hold on all recorded samples; " : "chain inequality broken; ";

    // State invariants along a fresh unitary trajectory.
    bool states_ok = true;
    {
      SystemLayout layout(3, 3, 2);
      UnitaryEvolver evolver(build_jc_hamiltonian(layout, 1.0));
      StateVector psi0 = basis_state(layout, {1, 1, 0});
      for (int k = 0; k <= 40; ++k) {
        StateVector psi = evolver.at(psi0, 0.1 * k);
        states_ok = states_ok && std::abs(psi.amps.norm() - 1.0) < 1e-10;
        DensityOperator rho_ab =
            partial_trace(pure_density(psi), {Subsystem::A, Subsystem::B});
        rho_ab.validate_basic();
        validate_positive(rho_ab);
      }
    }
    detail += states_ok ? "norm/trace/positivity hold; " : "state invariant broken; ";

    // Damped cavity against the analytic decay law.
    bool decay_ok = true;
    {
      SystemLayout layout(4, 2, 2);
      Matrix zero = Matrix::Zero(layout.total(), layout.total());
      LindbladSpec spec{build_custom_hamiltonian(layout, zero, zero),
                        {{Subsystem::A, bosonic_annihilation(4), 0.5}}};
      TimeGrid grid(2.0, 21);
      std::vector<DensityOperator> rho_t =
          lindblad_evolve(pure_density(basis_state(layout, {2, 0, 0})), spec, grid);
      OperatorMatrix a = bosonic_annihilation(4);
      OperatorMatrix n_a = a.adjoint() * a;
      OperatorMatrix number = embed(layout, &n_a, nullptr, nullptr);
      std::vector<double> times = grid.times();
      double worst = 0.0;
      for (std::size_t k = 0; k < times.size(); ++k) {
        double n = (number * rho_t[k].mat).trace().real();
        worst = std::max(worst, std::abs(n - 2.0 * std::exp(-0.5 * times[k])));
      }
      decay_ok = worst < 1e-6;
      detail += "decay-law gap " + format_g12(worst) + "; ";
    }

    // Local-unitary invariance on 50 seeded random states.
    bool invariance_ok = true;
    {
      std::mt19937 rng(771177);
      std::normal_distribution<double> gauss;
      auto random_matrix = [&](int rows, int cols) {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
          for (int j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
        return m;
      };
      double worst = 0.0;
      for (int trial = 0; trial < 50; ++trial) {
        Matrix m = random_matrix(4, 6);
        Matrix rho_m = m * m.adjoint();
        rho_m /= rho_m.trace();
        DensityOperator rho{rho_m, {2, 2}};
        Matrix u_a = Eigen::HouseholderQR<Matrix>(random_matrix(2, 2)).householderQ();
        Matrix u_b = Eigen::HouseholderQR<Matrix>(random_matrix(2, 2)).householderQ();
        Matrix u = kron(u_a, u_b);
        DensityOperator rotated{u * rho.mat * u.adjoint(), rho.dims};
        worst = std::max(worst, std::abs(mutual_information(rotated) - mutual_information(rho)));
        worst = std::max(worst, std::abs(discord_lower_bound(rotated) - discord_lower_bound(rho)));
        worst = std::max(worst, std::abs(negativity(rotated) - negativity(rho)));
        worst = std::max(worst, std::abs(classical_lower_bound(rotated, &u_a, &u_b) -
                                         classical_lower_bound(rho)));
      }
      invariance_ok = worst < 1e-9;
      detail += "worst local-unitary drift " + format_g12(worst);
    }

    report(7, "property suites hold", chain_ok && states_ok && decay_ok && invariance_ok, detail);
  });
}

void criterion_8() {
  run_criterion(8, "identical runs produce identical bytes", [] {
    std::string config_path = "acceptance_run.cfg";
    std::string csv_path = "acceptance_run.csv";
    {
      std::ofstream cfg(config_path, std::ios::binary);
      cfg << "coupling=jc\ninitial_state=110\nt_max_gt=4\noutput_path=" << csv_path << "\n";
    }
    auto slurp = [](const std::string& path) {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      return buffer.str();
    };

    CliResult first_run = run_cli("run " + config_path);
    std::string first = slurp(csv_path);
    CliResult second_run = run_cli("run " + config_path);
    std::string second = slurp(csv_path);
    std::remove(config_path.c_str());
    std::remove(csv_path.c_str());

    bool ok = first_run.exit_code == 0 && second_run.exit_code == 0 && !first.empty() &&
              first == second;
    report(8, "identical runs produce identical bytes", ok,
           "CSV size " + std::to_string(first.size()) + " bytes, exits " +
               std::to_string(first_run.exit_code) + "/" + std::to_string(second_run.exit_code));
  });
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli-binary>\n", argv[0]);
    return 2;
  }
  cli_path = argv[1];

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  if (failures > 0) {
    std::printf("%d of 8 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
