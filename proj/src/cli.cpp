#include "locus/cli.hpp"

#include "locus/analytic.hpp"
#include "locus/fieldgen.hpp"
#include "locus/json_io.hpp"
#include "locus/oracle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace locus::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  int resolution = 0;
  std::optional<double> tol;
  std::string what = "objective";
  std::vector<double> levels;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int do_solve(const Options& o) {
  const Scenario s = load_scenario(o.input);
  const SolutionSet set = solve(s);
  emit(o.output, solution_to_json(set).dump(2) + "\n");
  return set.resolved ? kOk : kUnresolved;
}

int do_oracle(const Options& o) {
  const Scenario s = load_scenario(o.input);
  OracleConfig cfg;
  if (o.tol) cfg.dedup_radius = *o.tol;
  const GridSpec g = default_grid(s, o.resolution);
  const OracleSolution sol = run_oracle(s, g, cfg);
  emit(o.output, oracle_to_json(sol, g).dump(2) + "\n");
  return kOk;
}

int do_verify(const Options& o) {
  const Scenario s = load_scenario(o.input);
  OracleConfig cfg;
  cfg.resolution = o.resolution;
  if (o.tol) cfg.position_tol = *o.tol;
  const SolutionSet set = solve(s);
  const OracleSolution sol = run_oracle(s, cfg);
  const VerificationReport report = verify(s, set, sol, cfg);
  std::cout << "case: " << set.case_label << "\n" << report.str() << "\n";
  switch (report.verdict) {
    case Verdict::Pass:
      return kOk;
    case Verdict::OracleOnly:
      return kUnresolved;
    case Verdict::Fail:
      break;
  }
  return kVerifyFail;
}

int do_field(const Options& o) {
  const Scenario s = load_scenario(o.input);
  const GridSpec g = default_grid(s, o.resolution > 0 ? o.resolution : 101);
  std::ostringstream text;
  if (o.what == "gradient") {
    write_csv(text, gradient_field(s, g), s.dim);
  } else {
    write_csv(text, objective_field(s, g), s.dim);
  }
  emit(o.output, text.str());
  return kOk;
}

int do_levels(const Options& o) {
  const Scenario s = load_scenario(o.input);
  if (s.count() != 1) {
    std::cerr << "error: levels needs a one-sensor scenario\n";
    return kInvalidInput;
  }
  if (!(s.d(0) > 0)) {
    std::cerr << "error: levels needs a positive range\n";
    return kInvalidInput;
  }
  std::cout << "level,inner,outer\n";
  char buf[64];
  for (const LevelRadii& r : level_radii(s.d(0), s.model, o.levels)) {
    std::snprintf(buf, sizeof buf, "%.17g,", r.level);
    std::cout << buf;
    if (r.inner) {
      std::snprintf(buf, sizeof buf, "%.17g", *r.inner);
      std::cout << buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g\n", r.outer);
    std::cout << buf;
  }
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Minimizer sets of summed range-error objectives"};
  app.require_subcommand(1);
  Options o;

  auto* solve_cmd = app.add_subcommand("solve", "analytic minimizer set as JSON");
  solve_cmd->add_option("-i,--input", o.input, "scenario JSON")->required();
  solve_cmd->add_option("-o,--output", o.output, "output path (default stdout)");

  auto* oracle_cmd = app.add_subcommand("oracle", "grid-scan minimizer as JSON");
  oracle_cmd->add_option("-i,--input", o.input, "scenario JSON")->required();
  oracle_cmd->add_option("--res", o.resolution, "grid points per axis")->check(CLI::Range(3, 100000));
  oracle_cmd->add_option("--tol", o.tol, "deduplication radius")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("-o,--output", o.output, "output path (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "compare analytic and oracle answers");
  verify_cmd->add_option("-i,--input", o.input, "scenario JSON")->required();
  verify_cmd->add_option("--res", o.resolution, "grid points per axis")->check(CLI::Range(3, 100000));
  verify_cmd->add_option("--tol", o.tol, "position tolerance")->check(CLI::PositiveNumber);

  auto* field_cmd = app.add_subcommand("field", "objective or gradient on a grid as CSV");
  field_cmd->add_option("-i,--input", o.input, "scenario JSON")->required();
  field_cmd->add_option("--what", o.what, "objective or gradient")
      ->check(CLI::IsMember({"objective", "gradient"}));
  field_cmd->add_option("--res", o.resolution, "grid points per axis")->check(CLI::Range(3, 100000));
  field_cmd->add_option("-o,--output", o.output, "CSV path")->required();

  auto* levels_cmd = app.add_subcommand("levels", "level-set radii for one sensor");
  levels_cmd->add_option("-i,--input", o.input, "scenario JSON")->required();
  levels_cmd->add_option("--levels", o.levels, "comma-separated levels")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*solve_cmd) return do_solve(o);
    if (*oracle_cmd) return do_oracle(o);
    if (*verify_cmd) return do_verify(o);
    if (*field_cmd) return do_field(o);
    return do_levels(o);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const InvalidScenario& e) {
    std::cerr << "error: invalid scenario: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kInvalidInput;
}

}  // namespace locus::cli
