#include "medcorr/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "medcorr/errors.hpp"
#include "medcorr/operators.hpp"

namespace medcorr {

namespace {

std::string trim(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& value, int line, const std::string& key) {
  std::size_t used = 0;
  double out;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ParseError(line, key + ": not a number: '" + value + "'");
  }
  if (used != value.size() || !std::isfinite(out))
    throw ParseError(line, key + ": not a finite number: '" + value + "'");
  return out;
}

int parse_int(const std::string& value, int line, const std::string& key) {
  std::size_t used = 0;
  int out;
  try {
    out = std::stoi(value, &used);
  } catch (const std::exception&) {
    throw ParseError(line, key + ": not an integer: '" + value + "'");
  }
  if (used != value.size()) throw ParseError(line, key + ": not an integer: '" + value + "'");
  return out;
}

// Split on commas that are not inside parentheses.
std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : value) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

Complex parse_amplitude(const std::string& token, int line) {
  if (!token.empty() && token.front() == '(') {
    double re, im;
    if (std::sscanf(token.c_str(), "(%lf,%lf)", &re, &im) != 2)
      throw ParseError(line, "initial_state: bad amplitude '" + token + "' (want (re,im))");
    return {re, im};
  }
  return {parse_double(token, line, "initial_state"), 0.0};
}

Subsystem parse_subsystem(const std::string& token, int line) {
  if (token == "A") return Subsystem::A;
  if (token == "B") return Subsystem::B;
  if (token == "C") return Subsystem::C;
  throw ParseError(line, "lindblad: subsystem must be A, B, or C, got '" + token + "'");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig config;
  std::set<std::string> seen;
  bool have_coupling = false, have_state = false, have_t_max = false;

  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    std::string content = raw.substr(0, raw.find('#'));
    content = trim(content);
    if (content.empty()) continue;

    std::size_t eq = content.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key=value");
    std::string key = trim(content.substr(0, eq));
    std::string value = trim(content.substr(eq + 1));
    if (key.empty()) throw ParseError(line, "empty key");
    if (!seen.insert(key).second) throw ParseError(line, "repeated key '" + key + "'");

    if (key == "coupling") {
      if (value == "jc") config.coupling = ScenarioCoupling::jc;
      else if (value == "dipole") config.coupling = ScenarioCoupling::dipole;
      else if (value == "custom")
        throw ParseError(line, "custom coupling needs explicit Hamiltonian matrices; "
                               "drive the library API directly for that");
      else throw ParseError(line, "coupling must be jc or dipole, got '" + value + "'");
      have_coupling = true;
    } else if (key == "g") {
      config.g = parse_double(value, line, key);
      if (config.g <= 0) throw ParseError(line, "g must be > 0");
    } else if (key == "initial_state") {
      if (value.find(',') != std::string::npos || value.find('(') != std::string::npos) {
        for (const std::string& token : split_list(value))
          config.amplitudes.push_back(parse_amplitude(token, line));
      } else {
        if (value.size() != 3 || !std::isdigit((unsigned char)value[0]) ||
            !std::isdigit((unsigned char)value[1]) || !std::isdigit((unsigned char)value[2]))
          throw ParseError(line, "initial_state: want three digits like 110, got '" + value + "'");
        for (int k = 0; k < 3; ++k) config.occupations[k] = value[k] - '0';
        if (config.occupations[2] >= 2)
          throw ParseError(line, "initial_state: mediator occupation " +
                                     std::to_string(config.occupations[2]) +
                                     " out of range for a two-level mediator");
      }
      have_state = true;
    } else if (key == "t_max_gt") {
      config.t_max_gt = parse_double(value, line, key);
      if (config.t_max_gt <= 0) throw ParseError(line, "t_max_gt must be > 0");
      have_t_max = true;
    } else if (key == "n_points") {
      config.n_points = parse_int(value, line, key);
      if (config.n_points < 2) throw ParseError(line, "n_points must be >= 2");
    } else if (key == "field_dim") {
      if (value == "auto") {
        config.field_dim.reset();
      } else {
        int dim = parse_int(value, line, key);
        if (dim < 2) throw ParseError(line, "field_dim must be >= 2 or auto");
        config.field_dim = dim;
      }
    } else if (key == "measures") {
      if (value == "all") continue;  // default already
      config.measures.clear();
      for (const std::string& token : split_list(value)) {
        MeasureKind kind;
        try {
          kind = parse_measure(token);
        } catch (const std::invalid_argument& err) {
          throw ParseError(line, std::string("measures: ") + err.what());
        }
        for (MeasureKind prior : config.measures)
          if (prior == kind) throw ParseError(line, "measures: '" + token + "' repeated");
        config.measures.push_back(kind);
      }
      if (config.measures.empty()) throw ParseError(line, "measures: empty list");
    } else if (key == "lindblad") {
      for (const std::string& token : split_list(value)) {
        std::size_t c1 = token.find(':');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos : token.find(':', c1 + 1);
        if (c2 == std::string::npos)
          throw ParseError(line, "lindblad: want subsystem:kind:rate, got '" + token + "'");
        DissipatorConfig dis;
        dis.where = parse_subsystem(trim(token.substr(0, c1)), line);
        std::string kind = trim(token.substr(c1 + 1, c2 - c1 - 1));
        if (kind == "lowering") dis.kind = DissipatorConfig::Kind::lowering;
        else if (kind == "dephasing") dis.kind = DissipatorConfig::Kind::dephasing;
        else throw ParseError(line, "lindblad: kind must be lowering or dephasing, got '" + kind + "'");
        dis.rate = parse_double(trim(token.substr(c2 + 1)), line, "lindblad rate");
        if (dis.rate < 0) throw ParseError(line, "lindblad: rate must be >= 0");
        config.dissipators.push_back(dis);
      }
    } else if (key == "output_path") {
      if (value.empty()) throw ParseError(line, "output_path: empty");
      config.output_path = value;
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }

  if (!have_coupling) throw ParseError(0, "missing required key 'coupling'");
  if (!have_state) throw ParseError(0, "missing required key 'initial_state'");
  if (!have_t_max) throw ParseError(0, "missing required key 't_max_gt'");
  if (!config.amplitudes.empty() && !config.field_dim)
    throw ParseError(0, "initial_state amplitude lists need an explicit field_dim");
  return config;
}

int auto_field_dim(const ScenarioConfig& config) {
  if (config.coupling == ScenarioCoupling::jc) {
    // Total excitation is conserved, so N+1 Fock levels per field are exact.
    int n_total = config.occupations[0] + config.occupations[1] + config.occupations[2];
    return std::max(2, n_total + 1);
  }
  // Displacement magnitude grows like g t; leave generous headroom.
  return 8 * (1 + int(std::ceil(config.t_max_gt)));
}

namespace {

StateVector initial_state(const ScenarioConfig& config, const SystemLayout& layout) {
  if (config.amplitudes.empty()) {
    if (config.occupations[0] >= layout.dim_a || config.occupations[1] >= layout.dim_b)
      throw std::invalid_argument("initial occupations do not fit the field truncation");
    return basis_state(layout, config.occupations);
  }
  if (int(config.amplitudes.size()) != layout.total())
    throw std::invalid_argument("initial_state amplitude list has " +
                                std::to_string(config.amplitudes.size()) + " entries, expected " +
                                std::to_string(layout.total()));
  Vector amps(layout.total());
  for (int k = 0; k < layout.total(); ++k) amps[k] = config.amplitudes[k];
  double norm = amps.norm();
  if (std::abs(norm - 1.0) > 1e-8)
    throw std::invalid_argument("initial_state amplitudes have norm " + std::to_string(norm));
  return {amps / norm, layout.dims()};
}

OperatorMatrix dissipator_operator(const DissipatorConfig& dis, const SystemLayout& layout) {
  int dim = layout.dim(dis.where);
  if (dis.where == Subsystem::C) {
    auto [sp, sm] = qubit_ladder();
    return dis.kind == DissipatorConfig::Kind::lowering ? sm : OperatorMatrix(sp * sm);
  }
  OperatorMatrix a = bosonic_annihilation(dim);
  return dis.kind == DissipatorConfig::Kind::lowering ? a : OperatorMatrix(a.adjoint() * a);
}

// The dipole coupling displaces each field by up to g t_max. Probe at 2x the
// truncation and demand that the displaced occupied level keeps its probability
// mass inside the window; the spill grows with the level, so the highest one
// is the worst case.
void require_dipole_truncation(int field_dim, double t_max_gt, int max_level) {
  OperatorMatrix probe = displacement(Complex(0.0, t_max_gt), 2 * field_dim);
  double tail = probe.col(max_level).tail(field_dim).squaredNorm();
  if (tail > tol::truncation_tail)
    throw TruncationError("field_dim " + std::to_string(field_dim) +
                          " too small for gt up to " + format_g12(t_max_gt) +
                          " (tail mass " + format_g12(tail) +
                          " escapes the truncation)");
}

int max_occupied_field_level(const StateVector& psi, const SystemLayout& layout) {
  int max_level = 0;
  for (int a = 0; a < layout.dim_a; ++a)
    for (int b = 0; b < layout.dim_b; ++b)
      for (int c = 0; c < layout.dim_c; ++c)
        if (std::abs(psi.amps[layout.index_of({a, b, c})]) > 1e-12)
          max_level = std::max({max_level, a, b});
  return max_level;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
  int field_dim = config.field_dim ? *config.field_dim : auto_field_dim(config);
  SystemLayout layout(field_dim, field_dim, 2);
  StateVector psi0 = initial_state(config, layout);

  HamiltonianSpec h = config.coupling == ScenarioCoupling::jc
                          ? build_jc_hamiltonian(layout, config.g)
                          : build_dipole_hamiltonian(layout, config.g);
  if (config.coupling == ScenarioCoupling::dipole)
    require_dipole_truncation(field_dim, config.t_max_gt,
                              max_occupied_field_level(psi0, layout));

  // Sample times are in gt units; the engines run in absolute time.
  TimeGrid grid(config.t_max_gt / config.g, config.n_points);
  std::vector<double> abs_times = grid.times();
  std::vector<double> gt_times(abs_times.size());
  for (std::size_t k = 0; k < abs_times.size(); ++k) gt_times[k] = abs_times[k] * config.g;

  CorrelationTrajectory trajectory;
  if (config.dissipators.empty()) {
    UnitaryEvolver evolver(h);
    std::vector<StateVector> states;
    states.reserve(abs_times.size());
    for (double t : abs_times) states.push_back(evolver.at(psi0, t));
    trajectory = evaluate_trajectory(gt_times, states, config.measures);
  } else {
    LindbladSpec lindblad{h, {}};
    for (const DissipatorConfig& dis : config.dissipators)
      lindblad.jumps.push_back({dis.where, dissipator_operator(dis, layout), dis.rate});
    std::vector<DensityOperator> states = lindblad_evolve(pure_density(psi0), lindblad, grid);
    trajectory = evaluate_trajectory(gt_times, states, config.measures);
  }

  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + config.output_path + "'");
  out << trajectory_csv(trajectory);
  if (!out.flush()) throw std::runtime_error("failed writing '" + config.output_path + "'");

  return {layout, field_dim, std::move(trajectory)};
}

std::string format_g12(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::string trajectory_csv(const CorrelationTrajectory& trajectory) {
  std::string out = "gt,measure,value,bound,violated\n";
  for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
    for (const auto& [kind, values] : trajectory.values) {
      double bound = trajectory.bounds.at(kind);
      bool violated = values[s] > bound + tol::violation_slack;
      out += format_g12(trajectory.times[s]);
      out += ',';
      out += measure_name(kind);
      out += ',';
      out += format_g12(values[s]);
      out += ',';
      out += format_g12(bound);
      out += ',';
      out += violated ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

std::string violation_summary(const CorrelationTrajectory& trajectory) {
  std::string out;
  for (const auto& [kind, values] : trajectory.values) {
    double max_value = values[0];
    for (double v : values) max_value = std::max(max_value, v);
    const ViolationRecord& record = trajectory.violations.at(kind);
    out += "measure=" + measure_name(kind) + " bound=" + format_g12(trajectory.bounds.at(kind)) +
           " max=" + format_g12(max_value) + " first_violation_gt=" +
           (record.first_time ? format_g12(*record.first_time) : std::string("none")) + "\n";
  }
  if (!trajectory.negativity_bound_applicable) out += "note: " + trajectory.note + "\n";
  return out;
}

}  // namespace medcorr
