#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "medcorr/correlations.hpp"
#include "medcorr/errors.hpp"
#include "medcorr/scenario.hpp"

namespace {

constexpr const char* version_string = "medcorr 1.0.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw medcorr::ParseError(0, "cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_command(const std::string& config_path) {
  medcorr::ScenarioConfig config = medcorr::parse_config(read_file(config_path));
  medcorr::ScenarioResult result = medcorr::run_scenario(config);
  std::cout << "field_dim=" << result.field_dim << " samples=" << result.trajectory.times.size()
            << " output=" << config.output_path << "\n";
  std::cout << medcorr::violation_summary(result.trajectory);
  return 0;
}

int witness_command(const std::string& measure, double value) {
  medcorr::MeasureKind kind = medcorr::parse_measure(measure);
  int least_dim = medcorr::dimension_witness(kind, value);
  std::cout << "d_C >= " << least_dim << "\n";
  return 0;
}

int capacities_command(int d_c) {
  // Full double precision so the printed values round-trip exactly.
  char buffer[40];
  for (medcorr::MeasureKind kind : medcorr::all_measures) {
    std::snprintf(buffer, sizeof buffer, "%.17g", medcorr::correlation_capacity(kind, d_c));
    std::cout << medcorr::measure_name(kind) << "=" << buffer << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation dynamics of two probes coupled through a small mediator"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Simulate a scenario config and write the trajectory CSV");
  run->add_option("config", config_path, "path to a key=value config file")->required();

  std::string witness_measure;
  double witness_value = 0.0;
  CLI::App* witness =
      app.add_subcommand("witness", "Smallest mediator dimension consistent with an observed value");
  witness->add_option("measure", witness_measure,
                      "mutual_information | classical | discord | negativity")
      ->required();
  witness->add_option("value", witness_value, "observed correlation value")->required();

  int capacities_dc = 0;
  CLI::App* capacities =
      app.add_subcommand("capacities", "Print the four correlation capacities of a d_C-level mediator");
  capacities->add_option("d_C", capacities_dc, "mediator dimension, >= 2")->required();

  try {
    app.parse(argc, argv);
    if (run->parsed()) return run_command(config_path);
    if (witness->parsed()) return witness_command(witness_measure, witness_value);
    if (capacities->parsed()) return capacities_command(capacities_dc);
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const medcorr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
