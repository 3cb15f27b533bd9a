#include "trajcx/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <CLI11.hpp>

#include "trajcx/aggregation.hpp"
#include "trajcx/oracle.hpp"
#include "trajcx/report.hpp"
#include "trajcx/scenario.hpp"

namespace trajcx {

namespace {

unsigned thread_count() {
  if (const char* env = std::getenv("TRAJCOMPLEX_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct AnalyzeArgs {
  std::string file;
  std::string field = "cpinvpie";
  std::string format = "table";
  double rho0 = 0.0;  // 0: take the scenario's value
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
};

void print_diagnostics(const Error& e, std::ostream& err) {
  if (const auto* se = dynamic_cast<const ScenarioError*>(&e)) {
    for (const Diagnostic& d : se->diagnostics()) {
      err << "error: " << d.path << ": " << d.message << '\n';
    }
    return;
  }
  err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
}

Report analyze(const AnalyzeArgs& a, bool with_oracle) {
  const Scenario scenario = load_scenario(a.file);
  const std::vector<Trajectory> trajectories = build_trajectories(scenario);
  ScenarioOptions options;
  options.rho0 = a.rho0 > 0.0 ? a.rho0 : scenario.rho0;
  options.field = *parse_pair_field(a.field);
  options.threads = thread_count();

  Report report;
  report.scenario_name = scenario.name.empty() ? a.file : scenario.name;
  report.complexity = scenario_complexity(trajectories, options);
  if (!with_oracle) return report;

  for (std::size_t i = 0; i < report.complexity.pairs.size(); ++i) {
    const PairComplexity& pc = report.complexity.pairs[i];
    OracleColumns columns;
    if (!pc.empty_overlap) {
      const auto find = [&](const std::string& id) -> const Trajectory& {
        return *std::find_if(trajectories.begin(), trajectories.end(),
                             [&](const Trajectory& t) { return t.id == id; });
      };
      const RelativeTrajectory rel = relative_trajectory(find(pc.pair.first), find(pc.pair.second));
      const oracle::PairMcEstimate mc =
          oracle::pair_cp_mc(rel, options.rho0, a.samples, a.seed + i, options.threads);
      columns.estimate = mc.combined;
      columns.std_error = mc.combined_stderr;
    }
    columns.abs_diff = std::abs(columns.estimate - pc.cpinvpie);
    report.oracle.push_back(columns);
  }
  return report;
}

void add_analyze_options(CLI::App* cmd, AnalyzeArgs& a) {
  cmd->add_option("scenario", a.file, "Scenario file")->required();
  cmd->add_option("--field", a.field, "Pair indicator aggregated over the scenario")
      ->check(CLI::IsMember({"cpinvpie", "cpsum", "cpweight"}));
  cmd->add_option("--rho0", a.rho0, "Separation radius in nmi (default: from the scenario)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", a.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json-lines"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conflict-probability complexity of 4D flight trajectories", "trajcx"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Report pairwise and scenario complexity");
  add_analyze_options(analyze_cmd, analyze_args);

  AnalyzeArgs oracle_args;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Analyze and compare against a Monte-Carlo estimate");
  add_analyze_options(oracle_cmd, oracle_args);
  oracle_cmd->add_option("--samples", oracle_args.samples, "Monte-Carlo samples per segment")
      ->check(CLI::Range(std::uint64_t{10000}, std::uint64_t{1000000000}));
  oracle_cmd->add_option("--seed", oracle_args.seed, "Random seed");

  std::string family = "parallel-offset";
  double sweep_min = 0.0;
  double sweep_max = 50.0;
  int sweep_steps = 51;
  double sweep_rho0 = kDefaultRho0;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Emit (offset, cp) rows for a geometry family");
  sweep_cmd->add_option("--family", family, "Geometry family")
      ->check(CLI::IsMember({"parallel-offset"}));
  sweep_cmd->add_option("--min", sweep_min, "First offset, nmi");
  sweep_cmd->add_option("--max", sweep_max, "Last offset, nmi");
  sweep_cmd->add_option("--steps", sweep_steps, "Number of rows")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--rho0", sweep_rho0, "Separation radius, nmi")->check(CLI::PositiveNumber);

  int example_index = 1;
  std::string example_out;
  CLI::App* gen_cmd = app.add_subcommand("gen-example", "Write a canonical example scenario");
  gen_cmd->add_option("index", example_index, "Example number")
      ->required()
      ->check(CLI::Range(1, kExampleCount));
  gen_cmd->add_option("-o,--output", example_out, "Output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed() || oracle_cmd->parsed()) {
      const bool with_oracle = oracle_cmd->parsed();
      const AnalyzeArgs& a = with_oracle ? oracle_args : analyze_args;
      const Report report = analyze(a, with_oracle);
      write_report(report, *parse_report_format(a.format), out);
    } else if (sweep_cmd->parsed()) {
      out << "offset_nmi,cp,cp_infinite\n";
      for (int k = 0; k < sweep_steps; ++k) {
        const double offset =
            sweep_steps == 1 ? sweep_min
                             : sweep_min + (sweep_max - sweep_min) * k / (sweep_steps - 1);
        const std::vector<Trajectory> pair = build_trajectories(parallel_offset_pair(offset));
        const PairComplexity pc = pair_complexity(pair[0], pair[1], sweep_rho0);
        out << format_number(offset) << ',' << format_number(pc.cpinvpie) << ','
            << format_number(pc.segment_cps.front().cp.value_infinite) << '\n';
      }
    } else if (gen_cmd->parsed()) {
      const Scenario s = gen_example(example_index);
      if (example_out.empty()) {
        out << serialize_scenario(s);
      } else {
        save_scenario(s, example_out);
      }
    }
  } catch (const Error& e) {
    print_diagnostics(e, err);
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace trajcx
