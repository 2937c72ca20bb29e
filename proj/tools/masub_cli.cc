// Copyright 2026 The Authors.
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

// Command-line front end:
//
//   masub run --config exp.ini --out results/ [--seed S] [--replicates R]
//   masub compare --inputs results/a results/b [--out table.csv]
//   masub regret --config small.ini [--grid 250,500,1000,2000] [--out dir]
//   masub validate-theory [--seed S]

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "masub/common.h"
#include "masub/experiment.h"
#include "masub/validation.h"

namespace {

namespace fs = std::filesystem;

int Run(const fs::path& config_path, fs::path out,
        std::optional<std::uint64_t> seed, std::optional<int> replicates) {
  masub::ExperimentConfig config = masub::ParseConfig(config_path);
  if (seed) config.seed = *seed;
  if (replicates) {
    if (*replicates < 1) {
      throw masub::Error(masub::ErrorCode::kConfig,
                         "--replicates: must be >= 1");
    }
    config.replicates = *replicates;
  }
  if (out.empty()) out = config.out_dir;
  if (out.empty()) {
    throw masub::Error(masub::ErrorCode::kConfig,
                       "no output directory: pass --out or set "
                       "[output] directory");
  }
  const masub::SuiteResult result = masub::RunSuite(config, out);
  const auto& avg = result.summary["final_running_avg_utility"];
  std::cout << config.name << ": T=" << config.horizon
            << " replicates=" << config.replicates
            << " final running-average utility = " << avg["mean"].get<double>()
            << " +- " << avg["std"].get<double>() << "\nwrote " << out.string()
            << "\n";
  return 0;
}

int Compare(const std::vector<std::string>& inputs, const fs::path& out) {
  std::vector<masub::CompareEntry> entries;
  for (const std::string& dir : inputs) {
    entries.push_back(masub::LoadCompareEntry(dir));
  }
  const std::vector<masub::CompareEntry> table =
      masub::CompareReport(std::move(entries));
  masub::WriteCompareText(std::cout, table);
  if (!out.empty()) {
    std::ofstream csv(out);
    if (!csv) {
      throw masub::Error(masub::ErrorCode::kInvalidArgument,
                         "cannot write " + out.string());
    }
    masub::WriteCompareCsv(csv, table);
  }
  return 0;
}

int Regret(const fs::path& config_path, const std::vector<int>& grid,
           const fs::path& out) {
  const masub::ExperimentConfig config = masub::ParseConfig(config_path);
  const masub::RegretSuiteResult result = masub::RegretSuite(config, grid);
  std::cout << "alpha = " << result.alpha << ", beta = " << result.beta << "\n";
  std::cout << std::setw(8) << "T" << std::setw(14) << "regret" << std::setw(14)
            << "regret/T" << std::setw(10) << "C_T" << "\n";
  for (const masub::RegretPoint& p : result.points) {
    std::cout << std::setw(8) << p.horizon << std::setw(14) << p.regret.mean
              << std::setw(14) << p.regret_per_round.mean << std::setw(10)
              << p.maximizer_drift.mean << "\n";
  }
  if (!out.empty()) {
    fs::create_directories(out);
    std::ofstream csv(out / "regret.csv");
    masub::WriteRegretCsv(csv, result);
  }
  return 0;
}

int ValidateTheory(std::uint64_t seed) {
  bool all = true;
  for (const masub::PropertyReport& r : masub::RunTheorySuites(seed)) {
    all = all && r.passed();
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.cases
              << " checks, " << r.failures << " failed";
    if (r.failures > 0) std::cout << ", worst miss " << r.max_violation;
    std::cout << ", " << std::fixed << std::setprecision(2) << r.seconds
              << " s)";
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
    if (!r.detail.empty()) std::cout << " [" << r.detail << "]";
    std::cout << "\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent online submodular maximization experiments"};
  app.require_subcommand(1);

  fs::path run_config;
  fs::path run_out;
  std::optional<std::uint64_t> run_seed;
  std::optional<int> run_replicates;
  CLI::App* run = app.add_subcommand("run", "run an experiment suite");
  run->add_option("--config", run_config, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "output directory");
  run->add_option("--seed", run_seed, "override the master seed");
  run->add_option("--replicates", run_replicates, "override replicates");

  std::vector<std::string> compare_inputs;
  fs::path compare_out;
  CLI::App* compare =
      app.add_subcommand("compare", "rank finished runs by utility");
  compare->add_option("--inputs", compare_inputs, "run output directories")
      ->required()
      ->check(CLI::ExistingDirectory);
  compare->add_option("--out", compare_out, "write the table as CSV");

  fs::path regret_config;
  std::vector<int> regret_grid = {250, 500, 1000, 2000};
  fs::path regret_out;
  CLI::App* regret =
      app.add_subcommand("regret", "dynamic regret on a small instance");
  regret->add_option("--config", regret_config, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  regret->add_option("--grid", regret_grid, "horizons")->delimiter(',');
  regret->add_option("--out", regret_out, "directory for regret.csv");

  std::uint64_t validate_seed = 2026;
  CLI::App* validate = app.add_subcommand("validate-theory",
                                          "run the randomized property suites");
  validate->add_option("--seed", validate_seed, "suite seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return Run(run_config, run_out, run_seed, run_replicates);
    if (*compare) return Compare(compare_inputs, compare_out);
    if (*regret) return Regret(regret_config, regret_grid, regret_out);
    if (*validate) return ValidateTheory(validate_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
