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

#include "masub/experiment.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace masub {
namespace {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("masub_" + std::string(info->name()) + "_" + tag);
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string ConfigError(const std::string& text) {
  try {
    ParseConfigString(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    return e.what();
  }
  ADD_FAILURE() << "config accepted:\n" << text;
  return "";
}

const char kMinimal[] =
    "[experiment]\nalgorithm = ma-osma\n[scenario]\ntype = tracking\n";

ExperimentConfig SmallTracking(const std::string& algorithm, int horizon) {
  ExperimentConfig c = ParseConfigString(
      "[experiment]\nalgorithm = " + algorithm +
      (algorithm == "ma-osea" ? "\ngeometry = entropic" : "") +
      "\nhorizon = " + std::to_string(horizon) +
      "\nseed = 4\n[scenario]\ntype = tracking\nagents = 3\ntargets = 5\n");
  return c;
}

TEST(ParseConfigTest, MinimalUsesDefaults) {
  const ExperimentConfig c = ParseConfigString(kMinimal);
  EXPECT_EQ(c.algorithm, Algorithm::kMaOsma);
  EXPECT_EQ(c.name, "ma-osma");
  EXPECT_DOUBLE_EQ(c.curvature, 1.0);
  EXPECT_EQ(c.step, StepKind::kInverseSqrt);
  EXPECT_DOUBLE_EQ(c.Schedule(0.0).eta, 1.0 / std::sqrt(500.0));
  EXPECT_EQ(c.graph, GraphKind::kComplete);
  EXPECT_EQ(c.horizon, 500);
  EXPECT_EQ(c.agents, 6);
  EXPECT_EQ(c.targets, 8);
  EXPECT_DOUBLE_EQ(c.Tracking().dt, 0.1);
  EXPECT_DOUBLE_EQ(c.Gamma(), 1.0 / (500.0 * 500.0));
  EXPECT_FALSE(c.defaulted.empty());
}

TEST(ParseConfigTest, CommentsAndWhitespace) {
  const ExperimentConfig c = ParseConfigString(
      "# header\n[experiment]\nalgorithm = osg   ; baseline\n"
      "horizon=20 # short\n[scenario]\ntype = synthetic\n");
  EXPECT_EQ(c.algorithm, Algorithm::kOsg);
  EXPECT_EQ(c.horizon, 20);
  EXPECT_EQ(c.scenario, ScenarioKind::kSynthetic);
}

TEST(ParseConfigTest, GammaAboveHalf) {
  const std::string msg = ConfigError(
      "[experiment]\nalgorithm = ma-osea\ngeometry = entropic\ngamma = 0.9\n"
      "[scenario]\ntype = tracking\n");
  EXPECT_NE(msg.find("experiment.gamma"), std::string::npos) << msg;
}

TEST(ParseConfigTest, UnknownAlgorithmListsChoices) {
  const std::string msg = ConfigError(
      "[experiment]\nalgorithm = sgd\n[scenario]\ntype = tracking\n");
  EXPECT_NE(msg.find("experiment.algorithm"), std::string::npos) << msg;
  for (const char* name : {"ma-osma", "ma-osea", "osg"}) {
    EXPECT_NE(msg.find(name), std::string::npos) << msg;
  }
}

TEST(ParseConfigTest, OtherErrors) {
  ConfigError("[scenario]\ntype = tracking\n");
  ConfigError("[experiment]\nalgorithm = ma-osma\n");
  ConfigError(std::string(kMinimal) + "colour = red\n");
  ConfigError(std::string(kMinimal) + "[experiment]\nhorizon = 0\n");
  ConfigError(std::string(kMinimal) + "[experiment]\ncurvature = 0\n");
  ConfigError(
      "[experiment]\nalgorithm = ma-osea\ngeometry = euclidean\n"
      "[scenario]\ntype = tracking\n");
  ConfigError(std::string(kMinimal) + "[experiment]\neta = 0.1\n");
  ConfigError(std::string(kMinimal) + "[scenario]\nmix = 8:1\n");
  ConfigError(std::string(kMinimal) + "[network]\ntype = star\n");
  EXPECT_ERROR_CODE(ParseConfig("/nonexistent/config.ini"), ErrorCode::kConfig);
}

TEST(ParseConfigTest, EdgeListRelativeToConfig) {
  TempDir dir("edges");
  std::ofstream(dir.path() / "g.txt") << "0 1\n1 2\n";
  std::ofstream(dir.path() / "c.ini")
      << kMinimal << "agents = 3\n[network]\ntype = edge-list\n"
      << "edge_list = g.txt\n";
  const ExperimentConfig c = ParseConfig(dir.path() / "c.ini");
  EXPECT_EQ(c.graph, GraphKind::kEdgeList);
  const CommNetwork net = BuildNetwork(c, 1);
  EXPECT_NEAR(net.beta(), 2.0 / 3.0, 1e-12);
}

TEST(MetadataTest, RecordsDecisions) {
  const nlohmann::json m = MetadataJson(ParseConfigString(kMinimal));
  for (const char* key :
       {"seeds", "round_order", "maximizer_tie_break", "osg_baseline",
        "objective_distance_floor", "metrics"}) {
    EXPECT_TRUE(m["decisions"].contains(key)) << key;
  }
  EXPECT_EQ(m["experiment"]["seed"], 1);
  EXPECT_DOUBLE_EQ(m["scenario"]["dt"].get<double>(), 0.1);
  EXPECT_DOUBLE_EQ(m["decisions"]["objective_distance_floor"].get<double>(),
                   1e-3);
}

TEST(SummarizeTest, SampleStd) {
  const Stat s = Summarize(Vec{1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.std, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_DOUBLE_EQ(Summarize(Vec{7.0}).std, 0.0);
}

TEST(RunSuiteTest, SingleReplicateAggregateEqualsSeries) {
  const SuiteResult r = RunSuite(SmallTracking("ma-osma", 30));
  ASSERT_EQ(r.replicates.size(), 1u);
  const MetricSeries& s = r.replicates[0].series;
  ASSERT_EQ(r.aggregate.size(), 30u);
  for (size_t t = 0; t < s.size(); ++t) {
    EXPECT_EQ(r.aggregate[t].utility.mean, s[t].utility);
    EXPECT_EQ(r.aggregate[t].utility.std, 0.0);
    EXPECT_EQ(r.aggregate[t].within_5->mean, *s[t].within_5);
  }
}

TEST(RunSuiteTest, RunningAverageIsPrefixMean) {
  const SuiteResult r = RunSuite(SmallTracking("ma-osea", 60));
  double total = 0.0;
  for (const MetricRow& row : r.replicates[0].series) {
    total += row.utility;
    EXPECT_NEAR(row.running_avg_utility, total / row.t, 1e-12);
  }
}

TEST(RunSuiteTest, AlgorithmsSeeSameTargets) {
  // All-Random targets do not react to the agents.
  std::vector<std::string> traces;
  for (const char* algorithm : {"ma-osma", "osg"}) {
    ExperimentConfig c = SmallTracking(algorithm, 25);
    c.mix = {1, 0, 0};
    std::ostringstream trace;
    RunReplicate(c, 0, &trace);
    std::istringstream lines(trace.str());
    std::string line;
    std::string targets;
    while (std::getline(lines, line)) {
      if (line.find(",agent,") == std::string::npos) targets += line + "\n";
    }
    traces.push_back(targets);
  }
  EXPECT_FALSE(traces[0].empty());
  EXPECT_EQ(traces[0], traces[1]);
}

TEST(RunSuiteTest, ReplicateFilesAndAggregates) {
  TempDir dir("out");
  ExperimentConfig c = SmallTracking("ma-osma", 20);
  c.replicates = 5;
  c.write_world_trace = true;
  c.write_trajectory = true;
  RunSuite(c, dir.path());
  for (const char* f :
       {"metrics.csv", "summary.json", "metadata.json", "world-trace.csv"}) {
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  }
  std::vector<MetricSeries> series;
  for (int r = 0; r < 5; ++r) {
    const fs::path p = dir.path() / ("series_r" + std::to_string(r) + ".csv");
    ASSERT_TRUE(fs::exists(p));
    const std::string jsonl = "trajectory_r" + std::to_string(r) + ".jsonl";
    EXPECT_TRUE(fs::exists(dir.path() / jsonl));
    std::ifstream in(p);
    series.push_back(ReadSeriesCsv(in));
    ASSERT_EQ(series.back().size(), 20u);
  }
  // Recompute the aggregate of round 7 from the raw files.
  std::ifstream metrics(dir.path() / "metrics.csv");
  std::string header;
  std::getline(metrics, header);
  EXPECT_EQ(header.rfind("t,utility_mean,utility_std,", 0), 0u) << header;
  std::string row;
  for (int t = 1; t <= 7; ++t) std::getline(metrics, row);
  std::vector<double> fields;
  std::stringstream cells(row);
  std::string cell;
  while (std::getline(cells, cell, ',')) {
    fields.push_back(cell.empty() ? NAN : std::stod(cell));
  }
  std::vector<double> utilities;
  for (const MetricSeries& s : series) utilities.push_back(s[6].utility);
  double mean = 0.0;
  for (double u : utilities) mean += u / 5;
  double var = 0.0;
  for (double u : utilities) var += (u - mean) * (u - mean) / 4;
  EXPECT_EQ(fields[0], 7.0);
  EXPECT_NEAR(fields[1], mean, 1e-12 * std::abs(mean));
  EXPECT_NEAR(fields[2], std::sqrt(var), 1e-9);

  const nlohmann::json summary =
      nlohmann::json::parse(ReadFile(dir.path() / "summary.json"));
  EXPECT_EQ(summary["replicates"], 5);
  EXPECT_EQ(summary["per_replicate"].size(), 5u);
}

TEST(RunSuiteTest, SameSeedSameBytes) {
  TempDir a("a");
  TempDir b("b");
  ExperimentConfig c = SmallTracking("ma-osea", 30);
  c.replicates = 2;
  RunSuite(c, a.path());
  RunSuite(c, b.path());
  EXPECT_EQ(ReadFile(a.path() / "metrics.csv"),
            ReadFile(b.path() / "metrics.csv"));
  EXPECT_FALSE(ReadFile(a.path() / "metrics.csv").empty());
}

TEST(RunSuiteTest, SyntheticHasRegret) {
  ExperimentConfig c = ParseConfigString(
      "[experiment]\nalgorithm = ma-osma\nhorizon = 50\n[scenario]\n"
      "type = synthetic\nagents = 2\nactions_per_agent = 3\n");
  const SuiteResult r = RunSuite(c);
  ASSERT_TRUE(r.replicates[0].regret.has_value());
  EXPECT_EQ(r.replicates[0].regret->maximizer_drift, 0);
  EXPECT_TRUE(r.replicates[0].series.back().regret.has_value());
  EXPECT_FALSE(r.replicates[0].series.back().within_5.has_value());
}

TEST(SeriesCsvTest, RoundTripWithMissingValues) {
  MetricSeries s(2);
  s[0] = {1, 0.5, 0.5, std::nullopt, std::nullopt, 0.25, 0.1};
  s[1] = {2, 1.0 / 3, 5.0 / 12, std::nullopt, std::nullopt, 0.0, std::nullopt};
  std::stringstream io;
  WriteSeriesCsv(io, s);
  const MetricSeries back = ReadSeriesCsv(io);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].utility, 1.0 / 3);
  EXPECT_EQ(back[1].running_avg_utility, 5.0 / 12);
  EXPECT_FALSE(back[1].within_5.has_value());
  EXPECT_EQ(back[0].regret, 0.1);
  EXPECT_FALSE(back[1].regret.has_value());
}

CompareEntry Entry(const std::string& name, int horizon, double utility) {
  CompareEntry e;
  e.name = name;
  e.horizon = horizon;
  e.final_running_avg_utility = utility;
  return e;
}

TEST(CompareTest, SortsByUtilityThenName) {
  const std::vector<CompareEntry> rows = CompareReport(
      {Entry("osg", 10, 1.0), Entry("b", 10, 2.0), Entry("a", 10, 2.0)});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].name, "a");
  EXPECT_EQ(rows[1].name, "b");
  EXPECT_EQ(rows[2].name, "osg");
  std::ostringstream csv;
  WriteCompareCsv(csv, rows);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "rank,name,horizon,final_running_avg_utility,avg_within_5,"
            "avg_top5_distance");
}

TEST(CompareTest, SingleEntry) {
  EXPECT_EQ(CompareReport({Entry("x", 5, 1.0)}).size(), 1u);
}

TEST(CompareTest, HorizonMismatch) {
  EXPECT_ERROR_CODE(CompareReport({Entry("a", 10, 1.0), Entry("b", 20, 1.0)}),
                    ErrorCode::kComparison);
}

TEST(CompareTest, ReadsSummaries) {
  TempDir dir("cmp");
  RunSuite(SmallTracking("osg", 15), dir.path());
  const CompareEntry e = LoadCompareEntry(dir.path());
  EXPECT_EQ(e.name, "osg");
  EXPECT_EQ(e.horizon, 15);
  EXPECT_TRUE(e.avg_within_5.has_value());
  EXPECT_ERROR_CODE(LoadCompareEntry(dir.path() / "missing"),
                    ErrorCode::kComparison);
}

TEST(RegretSuiteTest, StationaryDriftAndBeta) {
  ExperimentConfig c = ParseConfigString(
      "[experiment]\nalgorithm = ma-osma\nreplicates = 2\n[scenario]\n"
      "type = synthetic\nagents = 3\nactions_per_agent = 2\n");
  const std::vector<int> grid = {50, 100};
  const RegretSuiteResult complete = RegretSuite(c, grid);
  ASSERT_EQ(complete.points.size(), 2u);
  EXPECT_NEAR(complete.alpha, 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(complete.beta, 0.0, 1e-12);
  for (const RegretPoint& p : complete.points) {
    EXPECT_EQ(p.maximizer_drift.mean, 0.0);
  }
  c.graph = GraphKind::kPath;
  const RegretSuiteResult path = RegretSuite(c, grid);
  EXPECT_NEAR(path.beta, 1.0 / 3 + 2.0 / 3 * std::cos(M_PI / 3), 1e-12);
  std::ostringstream csv;
  WriteRegretCsv(csv, path);
  EXPECT_NE(csv.str().find("horizon"), std::string::npos);
}

TEST(RegretSuiteTest, TrackingIsTooLarge) {
  const std::vector<int> grid = {10};
  EXPECT_ERROR_CODE(RegretSuite(ParseConfigString(kMinimal), grid),
                    ErrorCode::kCapability);
}

}  // namespace
}  // namespace masub
