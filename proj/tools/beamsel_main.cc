// Copyright 2026 The Beamsel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve single instances, run the exhaustive
// oracle, run SR sweeps, check the closed forms against sampling, print
// the worked examples and render sweep charts.
//
// Exit codes: 0 success, 1 other failure (including a failed validation),
// 2 infeasible instance, 3 parse or validation error, 4 size limit.

#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "beamsel/difference_of_submodular.h"
#include "beamsel/error.h"
#include "beamsel/example_report.h"
#include "beamsel/gain_model.h"
#include "beamsel/instance_io.h"
#include "beamsel/montecarlo.h"
#include "beamsel/render.h"
#include "beamsel/selection.h"
#include "beamsel/sweep.h"

namespace beamsel {
namespace {

constexpr int kExitOther = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitParse = 3;
constexpr int kExitSize = 4;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInfeasible:
      return kExitInfeasible;
    case ErrorKind::kParse:
    case ErrorKind::kValidation:
      return kExitParse;
    case ErrorKind::kSize:
      return kExitSize;
    default:
      return kExitOther;
  }
}

// Comma-separated list of numbers, e.g. "0.4,0.6,3,5".
template <typename T>
std::vector<T> ParseList(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    const auto first = token.find_first_not_of(' ');
    const auto last = token.find_last_not_of(' ');
    token = first == std::string::npos
                ? std::string()
                : token.substr(first, last - first + 1);
    T value{};
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() ||
        ptr != token.data() + token.size()) {
      throw Error(ErrorKind::kParse, std::string(flag) + ": bad value '" +
                                         token + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) {
    throw Error(ErrorKind::kParse, std::string(flag) + ": empty list");
  }
  return out;
}

struct InputOptions {
  std::string instance_path;
  std::string scenario_path;
  std::string gammas;
  std::optional<double> threshold;
};

void AddInputOptions(CLI::App* cmd, InputOptions* in, bool allow_gammas) {
  auto* instance =
      cmd->add_option("--instance", in->instance_path, "Instance JSON file");
  auto* scenario =
      cmd->add_option("--scenario", in->scenario_path, "Scenario JSON file");
  instance->excludes(scenario);
  if (allow_gammas) {
    auto* gammas = cmd->add_option("--gammas", in->gammas,
                                   "Effective errors, comma separated");
    gammas->excludes(instance)->excludes(scenario);
  }
  cmd->add_option("--gamma-threshold", in->threshold,
                  "Override the expected-gain threshold");
}

Instance ResolveInstance(const InputOptions& in) {
  Instance instance;
  if (!in.instance_path.empty()) {
    instance = LoadInstance(in.instance_path);
  } else if (!in.scenario_path.empty()) {
    instance = InstanceFromScenario(LoadScenario(in.scenario_path));
  } else if (!in.gammas.empty()) {
    instance.gammas = GammaVector(ParseList<double>(in.gammas, "--gammas"));
  } else {
    throw Error(ErrorKind::kInput,
                "one of --instance or --scenario is required");
  }
  if (in.threshold) instance.threshold = *in.threshold;
  return instance;
}

struct DsFlags {
  double lambda0 = 1.0;
  double alpha = 2.0;
  int max_outer = 64;
  int restarts = 1;
  uint64_t seed = 0;
  bool cold_start = false;
};

void AddDsOptions(CLI::App* cmd, DsFlags* ds) {
  cmd->add_option("--lambda0", ds->lambda0, "Initial multiplier (DS)")
      ->capture_default_str();
  cmd->add_option("--alpha", ds->alpha, "Multiplier growth factor (DS)")
      ->capture_default_str();
  cmd->add_option("--max-outer", ds->max_outer, "Outer iteration cap (DS)")
      ->capture_default_str();
  cmd->add_option("--restarts", ds->restarts,
                  "Random-order restarts per inner call (DS)")
      ->capture_default_str();
  cmd->add_option("--seed", ds->seed, "Seed for restart orders (DS)")
      ->capture_default_str();
  cmd->add_flag("--cold-start", ds->cold_start,
                "Start every inner call from the empty set (DS)");
}

DsConfig ToDsConfig(const DsFlags& ds) {
  DsConfig config;
  config.lambda0 = ds.lambda0;
  config.alpha = ds.alpha;
  config.max_outer = ds.max_outer;
  config.warm_start = !ds.cold_start;
  config.ssp.restarts = ds.restarts;
  config.ssp.permutation_seed = ds.seed;
  ValidateDsConfig(config);
  return config;
}

SelectionResult Solve(const Instance& instance, Algorithm algorithm,
                      const DsConfig& config) {
  switch (algorithm) {
    case Algorithm::kGreedy:
      return Greedy(instance);
    case Algorithm::kDlg:
      return DoubleLoopGreedy(instance);
    case Algorithm::kDs:
      return DifferenceOfSubmodular(instance, config);
    case Algorithm::kOracle:
      return BruteForceOracle(instance);
  }
  throw Error(ErrorKind::kInput, "unknown algorithm");
}

void Emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) WriteFile(out_path, text);
}

struct SweepFlags {
  bool full = false;
  std::string n_values;
  std::string gamma_max_values;
  std::string beta_values;
  std::optional<int> instances;
  uint64_t seed = 1;
  int threads = 1;
  std::string records_path;
  std::string summary_path;
  std::string charts_dir;
};

void AddSweepOptions(CLI::App* cmd, SweepFlags* s, DsFlags* ds) {
  cmd->add_flag("--full", s->full, "Use the 1000-instance, N = 4..10 grid");
  cmd->add_option("--n-values", s->n_values, "Override N values, e.g. 4,5,6");
  cmd->add_option("--gamma-max-values", s->gamma_max_values,
                  "Override gamma_max values");
  cmd->add_option("--beta-values", s->beta_values, "Override beta values");
  cmd->add_option("--instances", s->instances, "Instances per cell");
  cmd->add_option("--seed", s->seed, "Base seed of the instance generator")
      ->capture_default_str();
  cmd->add_option("--threads", s->threads, "Worker threads")
      ->capture_default_str();
  cmd->add_option("--out,--records", s->records_path,
                  "Write per-instance records (.csv or .json)");
  cmd->add_option("--summary", s->summary_path, "Write the summary CSV");
  cmd->add_option("--charts", s->charts_dir, "Write SVG charts into DIR");
  cmd->add_option("--lambda0", ds->lambda0, "Initial multiplier (DS)")
      ->capture_default_str();
  cmd->add_option("--alpha", ds->alpha, "Multiplier growth factor (DS)")
      ->capture_default_str();
  cmd->add_flag("--cold-start", ds->cold_start,
                "Start every inner call from the empty set (DS)");
}

int RunSweepCommand(bool maximum, const SweepFlags& s, const DsFlags& ds) {
  SweepSpec spec = maximum ? DefaultMaximumSweep(s.full)
                           : DefaultAverageSweep(s.full);
  if (!s.n_values.empty()) spec.n_values = ParseList<int>(s.n_values, "--n-values");
  if (!s.gamma_max_values.empty()) {
    spec.gamma_max_values =
        ParseList<double>(s.gamma_max_values, "--gamma-max-values");
  }
  if (!s.beta_values.empty()) {
    spec.beta_values = ParseList<double>(s.beta_values, "--beta-values");
  }
  if (s.instances) spec.instances_per_cell = *s.instances;
  spec.base_seed = s.seed;
  DsFlags with_defaults = ds;
  spec.ds_config = ToDsConfig(with_defaults);
  ValidateSweepSpec(spec);

  const std::vector<SweepRecord> records = RunSweep(spec, s.threads);
  const std::vector<CellSummary> cells = SummarizeCells(records);
  const std::string summary = FormatSummaryCsv(cells);
  std::cout << summary;
  if (!s.summary_path.empty()) WriteFile(s.summary_path, summary);
  if (!s.records_path.empty()) SaveResults(s.records_path, records);
  if (!s.charts_dir.empty()) {
    for (const auto& path : WriteCharts(records, s.charts_dir)) {
      std::cerr << "wrote " << path.string() << "\n";
    }
  }

  // Soft targets: reported, never fatal.
  const std::vector<Algorithm> greedy_family = {Algorithm::kGreedy,
                                                Algorithm::kDlg};
  const std::vector<SoftViolation> violations =
      maximum ? MaxSrViolations(cells, greedy_family, 1.5)
              : MeanSrViolations(cells, greedy_family, 2.0);
  for (const SoftViolation& v : violations) {
    std::cerr << "warning: " << (maximum ? "max" : "mean") << " SR of "
              << AlgorithmName(v.cell.algorithm) << " at n=" << v.cell.n
              << " gamma_max=" << FormatDouble(v.cell.gamma_max)
              << " beta=" << FormatDouble(v.cell.beta) << " is "
              << FormatDouble(v.observed) << " (target < "
              << FormatDouble(v.limit) << "), seed=" << spec.base_seed
              << "\n";
  }
  return 0;
}

struct ValidateFlags {
  std::string subset;
  int64_t samples = 1000000;
  uint64_t seed = 1;
  double z = kDefaultZScore;
  double mean_offset = 0.0;
  double variance_offset = 0.0;
};

int RunValidate(const InputOptions& in, const ValidateFlags& v) {
  const Instance instance = ResolveInstance(in);
  const IndexSet s = v.subset.empty() ? instance.gammas.FullSet()
                                      : IndexSet::ParseOneBased(v.subset);
  const McReport report = SimulateGain(instance.gammas, s, v.samples, v.seed);
  GainStats expected = ComputeGainStats(instance.gammas, s);
  expected.mean += v.mean_offset;
  expected.variance += v.variance_offset;
  const ClosedFormCheck check = CompareToClosedForm(report, expected, v.z);

  nlohmann::json out;
  out["subset"] = s.ToOneBasedString();
  out["samples"] = report.samples;
  out["seed"] = v.seed;
  out["z"] = v.z;
  out["mean"] = {{"closed_form", expected.mean},
                 {"sample", report.sample_mean},
                 {"stderr", report.mean_stderr},
                 {"pass", check.mean_ok}};
  out["variance"] = {{"closed_form", expected.variance},
                     {"sample", report.sample_variance},
                     {"stderr", report.variance_stderr},
                     {"pass", check.variance_ok}};
  out["result"] = check.passed ? "pass" : "fail";
  std::cout << out.dump(2) << "\n";
  return check.passed ? 0 : kExitOther;
}

int Main(int argc, char** argv) {
  CLI::App app{"Low-variance agent selection for distributed beamforming"};
  app.require_subcommand(1);

  InputOptions solve_in;
  std::string algorithm_name = "greedy";
  std::string solve_out;
  DsFlags solve_ds;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  AddInputOptions(solve, &solve_in, false);
  solve->add_option("--algorithm", algorithm_name,
                    "greedy, dlg, ds or oracle")
      ->capture_default_str();
  solve->add_option("--out", solve_out, "Also write the result JSON here");
  AddDsOptions(solve, &solve_ds);

  InputOptions oracle_in;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Exact solution by enumeration");
  AddInputOptions(oracle, &oracle_in, false);
  oracle->add_option("--out", oracle_out, "Also write the result JSON here");

  SweepFlags avg_flags;
  DsFlags avg_ds;
  auto* sweep_avg =
      app.add_subcommand("sweep-avg", "Average SR over (N, gamma_max) cells");
  AddSweepOptions(sweep_avg, &avg_flags, &avg_ds);

  SweepFlags max_flags;
  DsFlags max_ds;
  auto* sweep_max =
      app.add_subcommand("sweep-max", "Maximum SR over (N, beta) cells");
  AddSweepOptions(sweep_max, &max_flags, &max_ds);

  InputOptions validate_in;
  ValidateFlags validate_flags;
  auto* validate = app.add_subcommand(
      "validate", "Check closed-form mean and variance against sampling");
  AddInputOptions(validate, &validate_in, true);
  validate->add_option("--subset", validate_flags.subset,
                       "One-based subset, e.g. 2,3,4 (default: all)");
  validate->add_option("--samples", validate_flags.samples, "Sample count")
      ->capture_default_str();
  validate->add_option("--seed", validate_flags.seed, "Sampling seed")
      ->capture_default_str();
  validate->add_option("--z", validate_flags.z, "Tolerance in standard errors")
      ->capture_default_str();
  validate->add_option("--mean-offset", validate_flags.mean_offset,
                       "Perturb the closed-form mean (negative control)");
  validate->add_option("--variance-offset", validate_flags.variance_offset,
                       "Perturb the closed-form variance (negative control)");

  auto* example =
      app.add_subcommand("example", "Print the worked four- and five-agent examples");

  std::string render_records;
  std::string render_out = ".";
  auto* render = app.add_subcommand("render", "Render SVG charts from records");
  render->add_option("--records,--csv", render_records, "Records CSV")
      ->required();
  render->add_option("--out", render_out, "Output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*solve || *oracle) {
      const bool is_oracle = static_cast<bool>(*oracle);
      const Instance instance = ResolveInstance(is_oracle ? oracle_in : solve_in);
      const Algorithm algorithm =
          is_oracle ? Algorithm::kOracle : ParseAlgorithm(algorithm_name);
      const SelectionResult result =
          Solve(instance, algorithm, ToDsConfig(solve_ds));
      Emit(SelectionResultToJson(instance, result).dump(2) + "\n",
           is_oracle ? oracle_out : solve_out);
      return 0;
    }
    if (*sweep_avg) return RunSweepCommand(false, avg_flags, avg_ds);
    if (*sweep_max) return RunSweepCommand(true, max_flags, max_ds);
    if (*validate) return RunValidate(validate_in, validate_flags);
    if (*example) {
      WriteExampleReport(std::cout);
      return 0;
    }
    if (*render) {
      for (const auto& path :
           WriteCharts(LoadResultsCsv(render_records), render_out)) {
        std::cout << path.string() << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorKindName(e.kind()) << "): " << e.what()
              << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}

}  // namespace
}  // namespace beamsel

int main(int argc, char** argv) { return beamsel::Main(argc, argv); }
