#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "medcorr/errors.hpp"
#include "medcorr/scenario.hpp"

using namespace medcorr;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int caught_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& err) {
    return err.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("minimal config gets defaults") {
  ScenarioConfig config = parse_config("coupling=jc\ninitial_state=110\nt_max_gt=4\n");
  CHECK(config.coupling == ScenarioCoupling::jc);
  CHECK(config.g == 1.0);
  CHECK(config.occupations == std::array<int, 3>{1, 1, 0});
  CHECK(config.t_max_gt == 4.0);
  CHECK(config.n_points == 401);
  CHECK_FALSE(config.field_dim.has_value());
  CHECK(config.measures.size() == 4);
  CHECK(config.output_path == "trajectory.csv");
  CHECK(config.dissipators.empty());
}

TEST_CASE("comments, blanks, and spacing are tolerated") {
  ScenarioConfig config = parse_config(
      "# scenario\n"
      "\n"
      "coupling = dipole   # commuting pieces\n"
      "  initial_state=220\n"
      "t_max_gt = 2.0\n"
      "n_points=81\n"
      "field_dim = 24\n"
      "measures = negativity,mutual_information\n"
      "output_path = out.csv\n");
  CHECK(config.coupling == ScenarioCoupling::dipole);
  CHECK(config.n_points == 81);
  CHECK(config.field_dim == 24);
  CHECK(config.measures.size() == 2);
  CHECK(config.output_path == "out.csv");
}

TEST_CASE("bad configs name the offending line") {
  CHECK(caught_line("coupling=warp\ninitial_state=110\nt_max_gt=4\n") == 1);
  CHECK(caught_line("coupling=jc\ninitial_state=112\nt_max_gt=4\n") == 2);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=4\nwarp_factor=9\n") == 4);
  CHECK(caught_line("coupling=jc\ncoupling=jc\ninitial_state=110\nt_max_gt=4\n") == 2);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=zero\n") == 3);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=-1\n") == 3);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=4\nn_points=1\n") == 4);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=4\ng=0\n") == 4);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=4\nfield_dim=1\n") == 4);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=4\nmeasures=sparkle\n") == 4);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=4\nmeasures=discord,discord\n") == 4);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=4\nlindblad=D:lowering:0.1\n") == 4);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=4\nlindblad=A:melting:0.1\n") == 4);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nt_max_gt=4\nlindblad=A:lowering:-1\n") == 4);
  CHECK(caught_line("coupling=custom\ninitial_state=110\nt_max_gt=4\n") == 1);
  CHECK(caught_line("coupling=jc\ninitial_state=110\nnonsense\nt_max_gt=4\n") == 3);

  // Missing requireds and file-level problems report line 0.
  CHECK(caught_line("coupling=jc\nt_max_gt=4\n") == 0);
  CHECK(caught_line("initial_state=110\nt_max_gt=4\n") == 0);
  CHECK(caught_line("coupling=jc\ninitial_state=110\n") == 0);
}

TEST_CASE("amplitude lists") {
  std::string text =
      "coupling=jc\n"
      "field_dim=2\n"
      "t_max_gt=1\n"
      "initial_state=(0.7071067811865476,0),0,0,0,0,0,(0,0.7071067811865476),0\n";
  ScenarioConfig config = parse_config(text);
  REQUIRE(config.amplitudes.size() == 8);
  CHECK(config.amplitudes[0].real() == doctest::Approx(0.7071067811865476));
  CHECK(config.amplitudes[6].imag() == doctest::Approx(0.7071067811865476));

  // Needs the dimension pinned down.
  CHECK(caught_line("coupling=jc\nt_max_gt=1\ninitial_state=1,0,0,0,0,0,0,0\n") == 0);
}

TEST_CASE("automatic field truncation") {
  ScenarioConfig jc = parse_config("coupling=jc\ninitial_state=110\nt_max_gt=4\n");
  CHECK(auto_field_dim(jc) == 3);
  jc.occupations = {2, 2, 0};
  CHECK(auto_field_dim(jc) == 5);
  jc.occupations = {0, 0, 0};
  CHECK(auto_field_dim(jc) == 2);

  ScenarioConfig dd = parse_config("coupling=dipole\ninitial_state=110\nt_max_gt=2\n");
  CHECK(auto_field_dim(dd) == 24);
  dd.t_max_gt = 2.5;
  CHECK(auto_field_dim(dd) == 32);
}

TEST_CASE("short run writes a well-formed table") {
  std::string csv_path = "scenario_smoke.csv";
  ScenarioConfig config = parse_config(
      "coupling=jc\ninitial_state=110\nt_max_gt=1.2\nn_points=7\noutput_path=" + csv_path + "\n");
  ScenarioResult result = run_scenario(config);

  CHECK(result.field_dim == 3);
  CHECK(result.layout.dim_c == 2);
  CHECK(result.trajectory.times.size() == 7);
  CHECK(result.trajectory.times.back() == doctest::Approx(1.2));

  std::string csv = slurp(csv_path);
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "gt,measure,value,bound,violated");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    // Five comma-separated fields, flag is 0 or 1.
    int commas = 0;
    for (char ch : line) commas += ch == ',';
    CHECK(commas == 4);
    CHECK((line.back() == '0' || line.back() == '1'));
  }
  CHECK(rows == 7 * 4);
  CHECK(csv.find("\r") == std::string::npos);
  std::remove(csv_path.c_str());
}

TEST_CASE("printed numbers survive a read-back") {
  for (double value : {0.0, 0.5, 1.0 / 3.0, 2.0 * std::log2(3.0), 1e-9, 123456.789}) {
    std::string printed = format_g12(value);
    double parsed = std::strtod(printed.c_str(), nullptr);
    CHECK(format_g12(parsed) == printed);
  }
}

TEST_CASE("summary lines") {
  ScenarioConfig config = parse_config(
      "coupling=jc\ninitial_state=110\nt_max_gt=1.2\nn_points=7\noutput_path=summary_tmp.csv\n");
  ScenarioResult result = run_scenario(config);
  std::string summary = violation_summary(result.trajectory);
  CHECK(summary.find("measure=mutual_information bound=2 ") != std::string::npos);
  CHECK(summary.find("measure=negativity bound=0.5 ") != std::string::npos);
  CHECK(summary.find("first_violation_gt=") != std::string::npos);
  std::remove("summary_tmp.csv");
}

TEST_CASE("identical configs produce identical bytes") {
  std::string text =
      "coupling=jc\ninitial_state=101\nt_max_gt=2\nn_points=41\noutput_path=determinism_tmp.csv\n";
  run_scenario(parse_config(text));
  std::string first = slurp("determinism_tmp.csv");
  run_scenario(parse_config(text));
  std::string second = slurp("determinism_tmp.csv");
  CHECK(first == second);
  CHECK(first.size() > 1000);
  std::remove("determinism_tmp.csv");
}

TEST_CASE("dissipative run stays sane") {
  ScenarioConfig config = parse_config(
      "coupling=jc\ninitial_state=110\nt_max_gt=1\nn_points=5\n"
      "lindblad=A:lowering:0.3,C:dephasing:0.2\noutput_path=lindblad_tmp.csv\n");
  ScenarioResult result = run_scenario(config);
  const auto& mi = result.trajectory.values.at(MeasureKind::mutual_information);
  REQUIRE(mi.size() == 5);
  for (double v : mi) {
    CHECK(std::isfinite(v));
    CHECK(v >= -1e-9);
  }
  std::remove("lindblad_tmp.csv");
}

TEST_CASE("cramped dipole truncation is refused") {
  ScenarioConfig config = parse_config(
      "coupling=dipole\ninitial_state=110\nt_max_gt=2\nfield_dim=6\noutput_path=never.csv\n");
  CHECK_THROWS_AS(run_scenario(config), TruncationError);
}

}  // TEST_SUITE
