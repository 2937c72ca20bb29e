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

// Experiment harness: INI-style configuration, seeded replicate runs,
// persisted metric series, comparison tables and small-instance regret.
//
// Seeds: replicate r uses master seed s + r. The environment, the graph and
// the algorithm each get their own stream derived from it, so two algorithms
// run with the same seed see the same objective stream.

#ifndef MASUB_EXPERIMENT_H_
#define MASUB_EXPERIMENT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "masub/coordinator.h"
#include "masub/mirror.h"
#include "masub/network.h"
#include "masub/regret.h"
#include "masub/tracking.h"

namespace masub {

enum class GraphKind { kComplete, kRandom, kRing, kPath, kEdgeList };
enum class ScenarioKind { kTracking, kSynthetic };
enum class StepKind { kInverseSqrt, kSpectral, kConstant };

struct ExperimentConfig {
  // [experiment]
  std::string name;  // defaults to the algorithm name
  Algorithm algorithm = Algorithm::kMaOsma;
  Geometry geometry = Geometry::kEuclidean;
  int horizon = 500;
  double curvature = 1.0;
  StepKind step = StepKind::kInverseSqrt;
  double eta = 0.0;             // constant schedule only
  double eta0 = 1.0;            // spectral schedule only
  std::optional<double> gamma;  // unset: min(1/2, 1/T^2)
  std::uint64_t seed = 1;
  int replicates = 1;

  // [network]
  GraphKind graph = GraphKind::kComplete;
  double avg_degree = 4.0;
  std::filesystem::path edge_list;

  // [scenario]
  ScenarioKind scenario = ScenarioKind::kTracking;
  int agents = 6;
  int targets = 8;
  std::array<int, 3> mix = {8, 1, 1};  // Random : Adversarial : Polyline
  double radius = 20.0;
  double duration = 50.0;  // seconds covered by the horizon
  double d_floor = 1e-3;
  std::string family = "coverage";  // modular | coverage | facility | mixed
  int actions_per_agent = 3;
  double drift = 0.0;  // per-round probability of a fresh instance

  // [output]
  std::filesystem::path out_dir;
  bool write_trajectory = false;
  bool write_world_trace = false;

  // "section.key" of every field filled from its default.
  std::vector<std::string> defaulted;

  double Gamma() const;
  StepSchedule Schedule(double beta) const;
  TrackingParams Tracking() const;
};

// Reads a key/value document with [section] headers. Relative edge-list
// paths resolve against `base_dir`. Throws kConfig naming the offending
// field and its allowed values.
ExperimentConfig ParseConfigString(std::string_view text,
                                   const std::filesystem::path& base_dir = {});
ExperimentConfig ParseConfig(const std::filesystem::path& path);

std::string_view GraphKindName(GraphKind kind);
std::string_view ScenarioKindName(ScenarioKind kind);
std::string_view StepKindName(StepKind kind);

// Every setting plus the fixed modelling decisions, for metadata.json.
nlohmann::json MetadataJson(const ExperimentConfig& config);

// Stationary or drifting random instances over N agents with m actions each.
class SyntheticEnvironment : public Environment {
 public:
  SyntheticEnvironment(std::string family, int num_agents,
                       int actions_per_agent, double drift, Rng rng);

  const GroundSet& ground() const override { return ground_; }
  std::shared_ptr<const SetFunction> Reveal() override;

 private:
  std::shared_ptr<const SetFunction> Generate();

  std::string family_;
  GroundSet ground_;
  double drift_;
  Rng rng_;
  std::shared_ptr<const SetFunction> current_;
  bool started_ = false;
};

struct MetricRow {
  int t = 0;
  double utility = 0.0;
  double running_avg_utility = 0.0;
  std::optional<double> within_5;       // tracking only
  std::optional<double> top5_distance;  // tracking only
  double consensus_error = 0.0;
  std::optional<double> regret;  // cumulative, when an optimum oracle exists
};

using MetricSeries = std::vector<MetricRow>;

struct ReplicateResult {
  int index = 0;
  std::uint64_t seed = 0;
  double beta = 0.0;
  double step_size = 0.0;
  MetricSeries series;
  TheoryConstants constants;
  std::optional<RegretReport> regret;
  // Per-round per-agent records, kept when trajectories are requested.
  std::vector<RoundOutcome> rounds;
};

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for one replicate
};

Stat Summarize(std::span<const double> values);

// Mean and std per round across replicates.
struct AggregateRow {
  int t = 0;
  Stat utility;
  Stat running_avg_utility;
  std::optional<Stat> within_5;
  std::optional<Stat> top5_distance;
  Stat consensus_error;
  std::optional<Stat> regret;
};

struct SuiteResult {
  ExperimentConfig config;
  std::vector<ReplicateResult> replicates;
  std::vector<AggregateRow> aggregate;
  nlohmann::json summary;
};

// Builds the communication network for replicate seed `seed`.
CommNetwork BuildNetwork(const ExperimentConfig& config, std::uint64_t seed);

ReplicateResult RunReplicate(const ExperimentConfig& config, int replicate,
                             std::ostream* world_trace = nullptr);

// Runs all replicates. When `out_dir` is non-empty writes metrics.csv,
// series_r<r>.csv, summary.json, metadata.json and the optional trajectory
// and world-trace files. Completed replicates are written even if a later
// one fails.
SuiteResult RunSuite(const ExperimentConfig& config,
                     const std::filesystem::path& out_dir = {});

void WriteSeriesCsv(std::ostream& out, const MetricSeries& series);
void WriteAggregateCsv(std::ostream& out, std::span<const AggregateRow> rows);
MetricSeries ReadSeriesCsv(std::istream& in);

struct CompareEntry {
  std::string name;
  int horizon = 0;
  double final_running_avg_utility = 0.0;
  std::optional<double> avg_within_5;
  std::optional<double> avg_top5_distance;
};

CompareEntry CompareEntryFromSummary(const nlohmann::json& summary);
// Reads <dir>/summary.json.
CompareEntry LoadCompareEntry(const std::filesystem::path& dir);

// Sorted by final running-average utility (descending), ties by name.
// Throws kComparison if the horizons differ.
std::vector<CompareEntry> CompareReport(std::vector<CompareEntry> entries);
void WriteCompareCsv(std::ostream& out, std::span<const CompareEntry> rows);
void WriteCompareText(std::ostream& out, std::span<const CompareEntry> rows);

struct RegretPoint {
  int horizon = 0;
  Stat regret;
  Stat regret_per_round;
  Stat maximizer_drift;
  double optimum_avg = 0.0;  // mean per-round OPT
};

struct RegretSuiteResult {
  double alpha = 0.0;
  double beta = 0.0;  // network of the first replicate
  std::vector<RegretPoint> points;
};

// Reruns the configuration at every horizon of `grid`, with the step size
// and mixing defaults recomputed for each horizon. Throws kCapability when
// the scenario is too large for brute force.
RegretSuiteResult RegretSuite(const ExperimentConfig& config,
                              std::span<const int> grid);

void WriteRegretCsv(std::ostream& out, const RegretSuiteResult& result);

}  // namespace masub

#endif  // MASUB_EXPERIMENT_H_
