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

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <exception>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace masub {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Stream ids under each replicate seed.
constexpr std::uint64_t kEnvironmentStream = 101;
constexpr std::uint64_t kGraphStream = 102;
constexpr std::uint64_t kAlgorithmStream = 103;

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string Lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(ch));
  return s;
}

[[noreturn]] void ConfigError(const std::string& field,
                              const std::string& message) {
  throw Error(ErrorCode::kConfig, field + ": " + message);
}

// Key lookup with bookkeeping of what was read and what was defaulted.
class ConfigReader {
 public:
  ConfigReader(const boost::property_tree::ptree& tree,
               std::vector<std::string>& defaulted)
      : tree_(tree), defaulted_(defaulted) {}

  std::optional<std::string> Raw(const std::string& section,
                                 const std::string& key) {
    const std::string field = section + "." + key;
    seen_.insert(field);
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto value = sec->get_optional<std::string>(key);
    if (!value) return std::nullopt;
    return Trim(*value);
  }

  template <typename T>
  T Choice(const std::string& section, const std::string& key,
           const std::vector<std::pair<std::string, T>>& choices,
           std::optional<T> fallback) {
    const std::string field = section + "." + key;
    const auto raw = Raw(section, key);
    if (!raw) {
      if (!fallback) ConfigError(field, "required; one of " + List(choices));
      defaulted_.push_back(field);
      return *fallback;
    }
    const std::string v = Lower(*raw);
    for (const auto& [name, value] : choices) {
      if (v == name) return value;
    }
    ConfigError(
        field, "unknown value '" + *raw + "'; valid choices: " + List(choices));
  }

  double Real(const std::string& section, const std::string& key,
              std::optional<double> fallback, double lo, double hi,
              bool lo_open, bool hi_open) {
    const std::string field = section + "." + key;
    const std::string range = std::string(lo_open ? "(" : "[") +
                              FormatNumber(lo) + ", " + FormatNumber(hi) +
                              (hi_open ? ")" : "]");
    const auto raw = Raw(section, key);
    if (!raw) {
      if (!fallback) ConfigError(field, "required, range " + range);
      defaulted_.push_back(field);
      return *fallback;
    }
    double v = 0.0;
    size_t used = 0;
    try {
      v = std::stod(*raw, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != raw->size() || !std::isfinite(v)) {
      ConfigError(field,
                  "expected a number in " + range + ", got '" + *raw + "'");
    }
    const bool below = lo_open ? v <= lo : v < lo;
    const bool above = hi_open ? v >= hi : v > hi;
    if (below || above) {
      ConfigError(field, "must lie in " + range + ", got " + *raw);
    }
    return v;
  }

  long long Integer(const std::string& section, const std::string& key,
                    std::optional<long long> fallback, long long lo,
                    long long hi) {
    const std::string field = section + "." + key;
    const std::string range =
        "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    const auto raw = Raw(section, key);
    if (!raw) {
      if (!fallback) ConfigError(field, "required, range " + range);
      defaulted_.push_back(field);
      return *fallback;
    }
    long long v = 0;
    size_t used = 0;
    try {
      v = std::stoll(*raw, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != raw->size()) {
      ConfigError(field,
                  "expected an integer in " + range + ", got '" + *raw + "'");
    }
    if (v < lo || v > hi) {
      ConfigError(field, "must lie in " + range + ", got " + *raw);
    }
    return v;
  }

  bool Flag(const std::string& section, const std::string& key, bool fallback) {
    return Choice<bool>(section, key,
                        {{"true", true},
                         {"false", false},
                         {"1", true},
                         {"0", false},
                         {"yes", true},
                         {"no", false}},
                        fallback);
  }

  // Rejects keys and sections nobody asked for.
  void CheckUnused() const {
    for (const auto& [section, child] : tree_) {
      if (child.empty()) {
        ConfigError(section, "keys must live inside a [section]");
      }
      for (const auto& [key, value] : child) {
        (void)value;
        const std::string field = section + "." + key;
        if (!seen_.contains(field)) ConfigError(field, "unknown setting");
      }
    }
  }

 private:
  template <typename T>
  static std::string List(const std::vector<std::pair<std::string, T>>& c) {
    std::string out;
    std::set<std::string> shown;
    for (const auto& [name, value] : c) {
      (void)value;
      if (!shown.insert(name).second) continue;
      if (!out.empty()) out += ", ";
      out += name;
    }
    return out;
  }

  static std::string FormatNumber(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
  }

  const boost::property_tree::ptree& tree_;
  std::vector<std::string>& defaulted_;
  std::set<std::string> seen_;
};

std::string FormatDouble(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string FormatOptional(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

bool RegretAvailable(const ExperimentConfig& config) {
  if (config.scenario != ScenarioKind::kSynthetic) return false;
  long long total = 1;
  for (int i = 0; i < config.agents; ++i) {
    total *= config.actions_per_agent + 1;
    if (total > kDefaultEnumerationCap) return false;
  }
  return true;
}

json StatJson(const Stat& s) { return {{"mean", s.mean}, {"std", s.std}}; }

json ConstantsJson(const TheoryConstants& k) {
  json j = {{"max_singleton", k.max_singleton},
            {"gradient_bound", k.gradient_bound},
            {"smoothness", k.smoothness},
            {"diameter", k.diameter},
            {"beta", k.beta},
            {"norm_equivalence", k.norm_equivalence}};
  j["bregman_diameter"] =
      k.bregman_diameter ? json(*k.bregman_diameter) : json(nullptr);
  j["divergence_lipschitz"] =
      k.divergence_lipschitz ? json(*k.divergence_lipschitz) : json(nullptr);
  j["maximizer_drift"] =
      k.maximizer_drift ? json(*k.maximizer_drift) : json(nullptr);
  return j;
}

std::vector<AggregateRow> Aggregate(std::span<const ReplicateResult> reps) {
  std::vector<AggregateRow> rows;
  if (reps.empty()) return rows;
  const size_t horizon = reps.front().series.size();
  rows.resize(horizon);
  std::vector<double> buf(reps.size());
  auto column = [&](size_t t, auto get) {
    for (size_t r = 0; r < reps.size(); ++r) buf[r] = get(reps[r].series[t]);
    return Summarize(buf);
  };
  for (size_t t = 0; t < horizon; ++t) {
    AggregateRow& row = rows[t];
    const MetricRow& first = reps.front().series[t];
    row.t = first.t;
    row.utility = column(t, [](const MetricRow& m) { return m.utility; });
    row.running_avg_utility =
        column(t, [](const MetricRow& m) { return m.running_avg_utility; });
    row.consensus_error =
        column(t, [](const MetricRow& m) { return m.consensus_error; });
    if (first.within_5) {
      row.within_5 = column(t, [](const MetricRow& m) { return *m.within_5; });
      row.top5_distance =
          column(t, [](const MetricRow& m) { return *m.top5_distance; });
    }
    if (first.regret) {
      row.regret = column(t, [](const MetricRow& m) { return *m.regret; });
    }
  }
  return rows;
}

double TimeAverage(const MetricSeries& series,
                   std::optional<double> MetricRow::* field) {
  double total = 0.0;
  for (const MetricRow& row : series) total += *(row.*field);
  return series.empty() ? 0.0 : total / series.size();
}

json BuildSummary(const ExperimentConfig& config,
                  std::span<const ReplicateResult> reps) {
  json summary;
  summary["name"] = config.name;
  summary["algorithm"] = AlgorithmName(config.algorithm);
  summary["geometry"] = GeometryName(config.geometry);
  summary["scenario"] = ScenarioKindName(config.scenario);
  summary["graph"] = GraphKindName(config.graph);
  summary["horizon"] = config.horizon;
  summary["replicates"] = static_cast<int>(reps.size());

  std::vector<double> final_avg;
  std::vector<double> within;
  std::vector<double> top5;
  std::vector<double> consensus;
  std::vector<double> regret;
  json details = json::array();
  for (const ReplicateResult& rep : reps) {
    json d;
    d["replicate"] = rep.index;
    d["seed"] = rep.seed;
    d["beta"] = rep.beta;
    d["step_size"] = rep.step_size;
    d["constants"] = ConstantsJson(rep.constants);
    if (!rep.series.empty()) {
      const MetricRow& last = rep.series.back();
      final_avg.push_back(last.running_avg_utility);
      consensus.push_back(last.consensus_error);
      d["final_running_avg_utility"] = last.running_avg_utility;
      d["final_consensus_error"] = last.consensus_error;
      if (last.within_5) {
        within.push_back(TimeAverage(rep.series, &MetricRow::within_5));
        top5.push_back(TimeAverage(rep.series, &MetricRow::top5_distance));
        d["avg_within_5"] = within.back();
        d["avg_top5_distance"] = top5.back();
      }
    }
    if (rep.regret) {
      regret.push_back(rep.regret->regret);
      d["regret"] = rep.regret->regret;
      d["maximizer_drift"] = rep.regret->maximizer_drift;
      d["alpha"] = rep.regret->alpha;
    }
    details.push_back(std::move(d));
  }
  summary["final_running_avg_utility"] = StatJson(Summarize(final_avg));
  summary["final_consensus_error"] = StatJson(Summarize(consensus));
  if (!within.empty()) {
    summary["avg_within_5"] = StatJson(Summarize(within));
    summary["avg_top5_distance"] = StatJson(Summarize(top5));
  }
  if (!regret.empty()) {
    summary["regret"] = StatJson(Summarize(regret));
    std::vector<double> per_round(regret);
    for (double& v : per_round) v /= config.horizon;
    summary["regret_per_round"] = StatJson(Summarize(per_round));
  }
  summary["per_replicate"] = std::move(details);
  return summary;
}

void WriteJsonFile(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void WriteTrajectory(const fs::path& path, const ReplicateResult& rep) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  for (const RoundOutcome& round : rep.rounds) {
    for (size_t i = 0; i < round.agents.size(); ++i) {
      const AgentDiagnostics& a = round.agents[i];
      json rec = {{"t", round.t},
                  {"agent", i},
                  {"action", a.action},
                  {"utility", round.utility},
                  {"z", a.z},
                  {"gradient_norm", a.gradient_norm},
                  {"consensus_error", a.consensus_error},
                  {"min_aggregate", a.min_aggregate}};
      out << rec.dump() << '\n';
    }
  }
}

void WriteReplicateFiles(const fs::path& dir, const ExperimentConfig& config,
                         const ReplicateResult& rep) {
  std::ofstream out(dir / ("series_r" + std::to_string(rep.index) + ".csv"));
  WriteSeriesCsv(out, rep.series);
  if (config.write_trajectory) {
    WriteTrajectory(
        dir / ("trajectory_r" + std::to_string(rep.index) + ".jsonl"), rep);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration.

double ExperimentConfig::Gamma() const {
  return gamma ? *gamma : DefaultMixing(horizon);
}

StepSchedule ExperimentConfig::Schedule(double beta) const {
  switch (step) {
    case StepKind::kInverseSqrt:
      return StepSchedule::InverseSqrtHorizon(horizon);
    case StepKind::kSpectral:
      return StepSchedule::SpectralScaled(eta0, beta, horizon);
    case StepKind::kConstant:
      return StepSchedule::Constant(eta);
  }
  return StepSchedule::InverseSqrtHorizon(horizon);
}

TrackingParams ExperimentConfig::Tracking() const {
  TrackingParams p;
  p.dt = duration / horizon;
  p.horizon = horizon;
  p.radius = radius;
  p.d_floor = d_floor;
  return p;
}

std::string_view GraphKindName(GraphKind kind) {
  switch (kind) {
    case GraphKind::kComplete:
      return "complete";
    case GraphKind::kRandom:
      return "random";
    case GraphKind::kRing:
      return "ring";
    case GraphKind::kPath:
      return "path";
    case GraphKind::kEdgeList:
      return "edge-list";
  }
  return "unknown";
}

std::string_view ScenarioKindName(ScenarioKind kind) {
  return kind == ScenarioKind::kTracking ? "tracking" : "synthetic";
}

std::string_view StepKindName(StepKind kind) {
  switch (kind) {
    case StepKind::kInverseSqrt:
      return "inverse-sqrt";
    case StepKind::kSpectral:
      return "spectral";
    case StepKind::kConstant:
      return "constant";
  }
  return "unknown";
}

ExperimentConfig ParseConfigString(std::string_view text,
                                   const fs::path& base_dir) {
  // Inline comments are stripped here; the INI reader only knows whole-line
  // ones.
  std::string cleaned;
  {
    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
      const auto cut = line.find_first_of("#;");
      if (cut != std::string::npos) line.resize(cut);
      cleaned += line;
      cleaned += '\n';
    }
  }
  boost::property_tree::ptree tree;
  try {
    std::istringstream in(cleaned);
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error(ErrorCode::kConfig,
                std::string("malformed config: ") + e.what());
  }

  ExperimentConfig c;
  ConfigReader r(tree, c.defaulted);

  c.algorithm = r.Choice<Algorithm>("experiment", "algorithm",
                                    {{"ma-osma", Algorithm::kMaOsma},
                                     {"ma-osea", Algorithm::kMaOsea},
                                     {"osg", Algorithm::kOsg}},
                                    std::nullopt);
  const auto name = r.Raw("experiment", "name");
  c.name =
      name && !name->empty() ? *name : std::string(AlgorithmName(c.algorithm));
  if (!name) c.defaulted.push_back("experiment.name");
  const Geometry natural = c.algorithm == Algorithm::kMaOsea
                               ? Geometry::kEntropic
                               : Geometry::kEuclidean;
  c.geometry = r.Choice<Geometry>(
      "experiment", "geometry",
      {{"euclidean", Geometry::kEuclidean}, {"entropic", Geometry::kEntropic}},
      natural);
  if (c.algorithm == Algorithm::kMaOsea && c.geometry != Geometry::kEntropic) {
    ConfigError("experiment.geometry", "ma-osea only supports entropic");
  }
  c.horizon =
      static_cast<int>(r.Integer("experiment", "horizon", 500, 1, 10'000'000));
  c.curvature = r.Real("experiment", "curvature", 1.0, 0.0, 1.0, true, false);
  c.step = r.Choice<StepKind>("experiment", "step",
                              {{"inverse-sqrt", StepKind::kInverseSqrt},
                               {"spectral", StepKind::kSpectral},
                               {"constant", StepKind::kConstant}},
                              StepKind::kInverseSqrt);
  const double inf = std::numeric_limits<double>::infinity();
  if (c.step == StepKind::kConstant) {
    c.eta = r.Real("experiment", "eta", std::nullopt, 0.0, inf, true, true);
  } else if (r.Raw("experiment", "eta")) {
    ConfigError("experiment.eta", "only used with step = constant");
  }
  c.eta0 = r.Real("experiment", "eta0", 1.0, 0.0, inf, true, true);
  if (r.Raw("experiment", "gamma")) {
    c.gamma =
        r.Real("experiment", "gamma", std::nullopt, 0.0, 0.5, true, false);
  } else {
    c.defaulted.push_back("experiment.gamma");
  }
  c.seed = static_cast<std::uint64_t>(r.Integer(
      "experiment", "seed", 1, 0, std::numeric_limits<long long>::max()));
  c.replicates =
      static_cast<int>(r.Integer("experiment", "replicates", 1, 1, 10000));

  c.scenario = r.Choice<ScenarioKind>("scenario", "type",
                                      {{"tracking", ScenarioKind::kTracking},
                                       {"synthetic", ScenarioKind::kSynthetic}},
                                      std::nullopt);
  c.agents = static_cast<int>(r.Integer("scenario", "agents", 6, 1, 10000));
  c.targets = static_cast<int>(r.Integer("scenario", "targets", 8, 0, 100000));
  if (const auto mix = r.Raw("scenario", "mix")) {
    std::array<int, 3> parts{};
    char sep1 = 0;
    char sep2 = 0;
    std::istringstream s(*mix);
    std::string rest;
    if (!(s >> parts[0] >> sep1 >> parts[1] >> sep2 >> parts[2]) ||
        sep1 != ':' || sep2 != ':' || (s >> rest) || parts[0] < 0 ||
        parts[1] < 0 || parts[2] < 0 || parts[0] + parts[1] + parts[2] == 0) {
      ConfigError("scenario.mix",
                  "expected R:A:P with non-negative integers, not all zero, "
                  "got '" +
                      *mix + "'");
    }
    c.mix = parts;
  } else {
    c.defaulted.push_back("scenario.mix");
  }
  c.radius = r.Real("scenario", "radius", 20.0, 0.0, inf, true, true);
  c.duration = r.Real("scenario", "duration", 50.0, 0.0, inf, true, true);
  c.d_floor = r.Real("scenario", "d_floor", 1e-3, 0.0, inf, true, true);
  c.family =
      std::string(r.Choice<std::string_view>("scenario", "family",
                                             {{"modular", "modular"},
                                              {"coverage", "coverage"},
                                              {"facility", "facility"},
                                              {"mixed", "mixed"}},
                                             std::string_view("coverage")));
  c.actions_per_agent =
      static_cast<int>(r.Integer("scenario", "actions_per_agent", 3, 1, 1000));
  c.drift = r.Real("scenario", "drift", 0.0, 0.0, 1.0, false, false);

  c.graph = r.Choice<GraphKind>("network", "type",
                                {{"complete", GraphKind::kComplete},
                                 {"random", GraphKind::kRandom},
                                 {"ring", GraphKind::kRing},
                                 {"path", GraphKind::kPath},
                                 {"edge-list", GraphKind::kEdgeList}},
                                GraphKind::kComplete);
  if (c.graph == GraphKind::kRandom) {
    if (c.agents < 2) {
      ConfigError("network.type", "random graphs need at least 2 agents");
    }
    c.avg_degree = r.Real("network", "avg_degree", 4.0, 1.0,
                          static_cast<double>(c.agents), false, true);
  } else {
    r.Raw("network", "avg_degree");
  }
  if (c.graph == GraphKind::kEdgeList) {
    const auto path = r.Raw("network", "edge_list");
    if (!path || path->empty()) {
      ConfigError("network.edge_list", "required when type = edge-list");
    }
    c.edge_list = fs::path(*path);
    if (c.edge_list.is_relative() && !base_dir.empty()) {
      c.edge_list = base_dir / c.edge_list;
    }
  } else {
    r.Raw("network", "edge_list");
  }

  if (const auto dir = r.Raw("output", "directory")) c.out_dir = *dir;
  c.write_trajectory = r.Flag("output", "trajectory", false);
  c.write_world_trace = r.Flag("output", "world_trace", false);

  r.CheckUnused();
  return c;
}

ExperimentConfig ParseConfig(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kConfig, "cannot open config " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig config = ParseConfigString(buffer.str(), path.parent_path());
  if (!config.out_dir.empty() && config.out_dir.is_relative()) {
    config.out_dir = path.parent_path() / config.out_dir;
  }
  return config;
}

json MetadataJson(const ExperimentConfig& c) {
  json m;
  m["experiment"] = {
      {"name", c.name},
      {"algorithm", AlgorithmName(c.algorithm)},
      {"geometry", GeometryName(c.geometry)},
      {"horizon", c.horizon},
      {"curvature", c.curvature},
      {"step", StepKindName(c.step)},
      {"eta", c.step == StepKind::kConstant ? json(c.eta) : json(nullptr)},
      {"eta0", c.eta0},
      {"gamma", c.Gamma()},
      {"seed", c.seed},
      {"replicates", c.replicates}};
  m["network"] = {
      {"type", GraphKindName(c.graph)},
      {"avg_degree",
       c.graph == GraphKind::kRandom ? json(c.avg_degree) : json(nullptr)},
      {"edge_list", c.edge_list.string()},
      {"weights", c.graph == GraphKind::kComplete
                      ? "uniform 1/N"
                      : "metropolis 1/(1+max(d_i,d_j))"}};
  json scenario = {{"type", ScenarioKindName(c.scenario)},
                   {"agents", c.agents}};
  if (c.scenario == ScenarioKind::kTracking) {
    const TrackingParams p = c.Tracking();
    scenario["targets"] = c.targets;
    scenario["mix"] = c.mix;
    scenario["target_kinds"] = json::array();
    for (TargetKind k : TargetMix(c.targets, c.mix[0], c.mix[1], c.mix[2])) {
      scenario["target_kinds"].push_back(TargetKindName(k));
    }
    scenario["radius"] = c.radius;
    scenario["duration_seconds"] = c.duration;
    scenario["dt"] = p.dt;
    scenario["d_floor"] = c.d_floor;
    scenario["escape_rounds"] = p.EscapeRounds();
    scenario["escape_heading_grid"] = p.heading_grid;
  } else {
    scenario["family"] = c.family;
    scenario["actions_per_agent"] = c.actions_per_agent;
    scenario["drift"] = c.drift;
    scenario["regret_oracle"] = RegretAvailable(c);
  }
  m["scenario"] = std::move(scenario);
  m["output"] = {{"trajectory", c.write_trajectory},
                 {"world_trace", c.write_world_trace}};
  m["defaults_applied"] = c.defaulted;
  m["decisions"] = {
      {"seeds",
       "replicate r uses seed + r; environment, graph and algorithm draw from "
       "separate streams derived from it; agent i of the algorithm uses its "
       "own stream"},
      {"round_order",
       "targets move, f_t is revealed, actions are sampled from x_t, agents "
       "move, metrics are measured"},
      {"action_sampling", "a_{t,i} ~ x_{t,i} restricted to V_i, normalized"},
      {"gradient",
       "one-sample surrogate estimate on the agent's own block "
       "at x_{t,i}"},
      {"consensus_error",
       "max_i ||x_{t+1,i} - mean_j x_{t+1,j}||_1 after the round's update"},
      {"maximizer_tie_break",
       "lexicographically smallest per-agent choice tuple, block order, "
       "'none' last"},
      {"maximizer_drift", "sum over t = 1..T-1 of |A*_{t+1} delta A*_t|"},
      {"osg_baseline",
       "greedy on the previous round's objective in fixed agent order; "
       "uniform random first round; ties to the smallest action index"},
      {"objective_distance_floor", c.d_floor},
      {"metrics",
       "within_5 counts targets whose nearest agent is within 5 units; "
       "top5_distance averages the 5 smallest nearest-agent distances (all "
       "targets if fewer than 5); both after the agents move"},
      {"std", "sample standard deviation across replicates, 0 for one"},
      {"csv_columns",
       "series: t,utility,running_avg_utility,within_5,top5_distance,"
       "consensus_error,regret; metrics: t then <column>_mean,<column>_std"},
  };
  return m;
}

// ---------------------------------------------------------------------------
// Synthetic scenario.

SyntheticEnvironment::SyntheticEnvironment(std::string family, int num_agents,
                                           int actions_per_agent, double drift,
                                           Rng rng)
    : family_(std::move(family)),
      ground_(GroundSet::FromBlockSizes(
          std::vector<int>(num_agents, actions_per_agent))),
      drift_(drift),
      rng_(std::move(rng)) {
  if (!(drift >= 0.0 && drift <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "drift must lie in [0, 1]");
  }
  current_ = Generate();
}

std::shared_ptr<const SetFunction> SyntheticEnvironment::Generate() {
  const int n = ground_.size();
  if (family_ == "modular") {
    return std::make_shared<ModularFunction>(RandomModular(n, rng_));
  }
  if (family_ == "coverage") {
    return std::make_shared<WeightedCoverage>(RandomCoverage(n, n, rng_));
  }
  if (family_ == "facility") {
    return std::make_shared<FacilityLocation>(
        RandomFacilityLocation(n, n, rng_));
  }
  if (family_ == "mixed") return RandomMixedFamily(n, rng_);
  throw Error(ErrorCode::kInvalidArgument, "unknown family " + family_);
}

std::shared_ptr<const SetFunction> SyntheticEnvironment::Reveal() {
  // The first round keeps the initial instance.
  if (started_ && drift_ > 0.0 && UniformUnit(rng_) < drift_) {
    current_ = Generate();
  }
  started_ = true;
  return current_;
}

// ---------------------------------------------------------------------------
// Runs.

Stat Summarize(std::span<const double> values) {
  Stat s;
  if (values.empty()) return s;
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / values.size();
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / (values.size() - 1));
  }
  return s;
}

CommNetwork BuildNetwork(const ExperimentConfig& config, std::uint64_t seed) {
  const int n = config.agents;
  switch (config.graph) {
    case GraphKind::kComplete:
      return BuildCompleteWeights(n);
    case GraphKind::kRandom: {
      Rng rng = MakeStream(seed, kGraphStream);
      return BuildMetropolisWeights(
          GenerateRandomGraph(n, config.avg_degree, rng));
    }
    case GraphKind::kRing:
      return BuildMetropolisWeights(RingGraph(n));
    case GraphKind::kPath:
      return BuildMetropolisWeights(PathGraph(n));
    case GraphKind::kEdgeList: {
      std::ifstream in(config.edge_list);
      if (!in) {
        throw Error(ErrorCode::kConfig, "network.edge_list: cannot open " +
                                            config.edge_list.string());
      }
      return BuildMetropolisWeights(ReadEdgeList(in, n));
    }
  }
  return BuildCompleteWeights(n);
}

ReplicateResult RunReplicate(const ExperimentConfig& config, int replicate,
                             std::ostream* world_trace) {
  ReplicateResult rep;
  rep.index = replicate;
  rep.seed = config.seed + static_cast<std::uint64_t>(replicate);
  const CommNetwork network = BuildNetwork(config, rep.seed);
  rep.beta = network.beta();

  std::unique_ptr<Environment> env;
  TrackingEnvironment* tracking = nullptr;
  if (config.scenario == ScenarioKind::kTracking) {
    const std::vector<TargetKind> kinds =
        TargetMix(config.targets, config.mix[0], config.mix[1], config.mix[2]);
    auto t = std::make_unique<TrackingEnvironment>(
        config.agents, kinds, config.Tracking(),
        MakeStream(rep.seed, kEnvironmentStream));
    tracking = t.get();
    if (world_trace != nullptr) {
      WriteWorldTraceHeader(*world_trace);
      WriteWorldTrace(*world_trace, t->world());
      t->set_trace(world_trace);
    }
    env = std::move(t);
  } else {
    env = std::make_unique<SyntheticEnvironment>(
        config.family, config.agents, config.actions_per_agent, config.drift,
        MakeStream(rep.seed, kEnvironmentStream));
  }

  RunOptions options;
  options.algorithm = config.algorithm;
  options.coordinator.geometry = config.geometry;
  options.coordinator.curvature = config.curvature;
  options.coordinator.step = config.Schedule(rep.beta);
  options.coordinator.gamma = config.Gamma();
  options.horizon = config.horizon;
  options.seed = MakeStream(rep.seed, kAlgorithmStream)();
  const bool with_regret = RegretAvailable(config);
  options.keep_functions = with_regret;
  rep.step_size = options.coordinator.step.eta;

  double total = 0.0;
  rep.series.reserve(config.horizon);
  auto observer = [&](const RoundOutcome& outcome) {
    MetricRow row;
    row.t = outcome.t;
    row.utility = outcome.utility;
    total += outcome.utility;
    row.running_avg_utility = total / outcome.t;
    row.consensus_error = outcome.max_consensus_error;
    if (tracking != nullptr) {
      row.within_5 = tracking->metrics().within_5;
      row.top5_distance = tracking->metrics().top5_distance;
    }
    rep.series.push_back(row);
  };
  Trajectory traj = RunExperiment(*env, network, options, observer);
  rep.constants = traj.constants;
  if (with_regret) {
    std::vector<double> utilities;
    utilities.reserve(traj.rounds.size());
    for (const RoundOutcome& o : traj.rounds) utilities.push_back(o.utility);
    RegretReport report =
        ComputeDynamicRegret(traj.functions, utilities, env->ground(),
                             ApproximationFactor(config.curvature));
    for (size_t t = 0; t < rep.series.size(); ++t) {
      rep.series[t].regret = report.cumulative_regret[t];
    }
    rep.constants.maximizer_drift = report.maximizer_drift;
    report.optima.clear();  // large and not needed downstream
    rep.regret = std::move(report);
  }
  if (config.write_trajectory) rep.rounds = std::move(traj.rounds);
  return rep;
}

SuiteResult RunSuite(const ExperimentConfig& config, const fs::path& out_dir) {
  SuiteResult result;
  result.config = config;
  const bool write = !out_dir.empty();
  if (write) {
    fs::create_directories(out_dir);
    WriteJsonFile(out_dir / "metadata.json", MetadataJson(config));
  }
  std::ofstream trace;
  if (write && config.write_world_trace &&
      config.scenario == ScenarioKind::kTracking) {
    trace.open(out_dir / "world-trace.csv");
  }

  // Replicates are independent; run them in batches of hardware threads and
  // collect in replicate order.
  const int workers =
      std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  std::exception_ptr failure;
  for (int start = 0; start < config.replicates && !failure; start += workers) {
    const int stop = std::min(config.replicates, start + workers);
    std::vector<std::future<ReplicateResult>> batch;
    for (int r = start; r < stop; ++r) {
      std::ostream* t = (r == 0 && trace.is_open()) ? &trace : nullptr;
      batch.push_back(
          std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                     [&config, r, t] { return RunReplicate(config, r, t); }));
    }
    for (auto& f : batch) {
      try {
        ReplicateResult rep = f.get();
        if (write) WriteReplicateFiles(out_dir, config, rep);
        result.replicates.push_back(std::move(rep));
      } catch (...) {
        if (!failure) failure = std::current_exception();
      }
    }
  }
  result.aggregate = Aggregate(result.replicates);
  result.summary = BuildSummary(config, result.replicates);
  if (write) {
    std::ofstream metrics(out_dir / "metrics.csv");
    WriteAggregateCsv(metrics, result.aggregate);
    WriteJsonFile(out_dir / "summary.json", result.summary);
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

void WriteSeriesCsv(std::ostream& out, const MetricSeries& series) {
  out << "t,utility,running_avg_utility,within_5,top5_distance,"
         "consensus_error,regret\n";
  for (const MetricRow& row : series) {
    out << row.t << ',' << FormatDouble(row.utility) << ','
        << FormatDouble(row.running_avg_utility) << ','
        << FormatOptional(row.within_5) << ','
        << FormatOptional(row.top5_distance) << ','
        << FormatDouble(row.consensus_error) << ','
        << FormatOptional(row.regret) << '\n';
  }
}

void WriteAggregateCsv(std::ostream& out, std::span<const AggregateRow> rows) {
  out << "t,utility_mean,utility_std,running_avg_utility_mean,"
         "running_avg_utility_std,within_5_mean,within_5_std,"
         "top5_distance_mean,top5_distance_std,consensus_error_mean,"
         "consensus_error_std,regret_mean,regret_std\n";
  auto stat = [&out](const Stat& s) {
    out << ',' << FormatDouble(s.mean) << ',' << FormatDouble(s.std);
  };
  auto maybe = [&](const std::optional<Stat>& s) {
    if (s) {
      stat(*s);
    } else {
      out << ",,";
    }
  };
  for (const AggregateRow& row : rows) {
    out << row.t;
    stat(row.utility);
    stat(row.running_avg_utility);
    maybe(row.within_5);
    maybe(row.top5_distance);
    stat(row.consensus_error);
    maybe(row.regret);
    out << '\n';
  }
}

MetricSeries ReadSeriesCsv(std::istream& in) {
  MetricSeries series;
  std::string line;
  if (!std::getline(in, line)) return series;  // header
  auto parse = [](const std::string& field) -> std::optional<double> {
    if (field.empty()) return std::nullopt;
    return std::stod(field);
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream s(line);
    while (std::getline(s, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != 7) {
      throw Error(ErrorCode::kInvalidArgument, "malformed series row: " + line);
    }
    MetricRow row;
    row.t = std::stoi(fields[0]);
    row.utility = std::stod(fields[1]);
    row.running_avg_utility = std::stod(fields[2]);
    row.within_5 = parse(fields[3]);
    row.top5_distance = parse(fields[4]);
    row.consensus_error = std::stod(fields[5]);
    row.regret = parse(fields[6]);
    series.push_back(row);
  }
  return series;
}

// ---------------------------------------------------------------------------
// Comparison.

CompareEntry CompareEntryFromSummary(const json& summary) {
  CompareEntry e;
  try {
    e.name = summary.at("name").get<std::string>();
    e.horizon = summary.at("horizon").get<int>();
    e.final_running_avg_utility =
        summary.at("final_running_avg_utility").at("mean").get<double>();
    if (summary.contains("avg_within_5")) {
      e.avg_within_5 = summary["avg_within_5"].at("mean").get<double>();
      e.avg_top5_distance =
          summary.at("avg_top5_distance").at("mean").get<double>();
    }
  } catch (const json::exception& err) {
    throw Error(ErrorCode::kComparison,
                std::string("malformed summary: ") + err.what());
  }
  return e;
}

CompareEntry LoadCompareEntry(const fs::path& dir) {
  const fs::path path = dir / "summary.json";
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kComparison, "cannot read " + path.string());
  json summary;
  try {
    in >> summary;
  } catch (const json::exception& err) {
    throw Error(ErrorCode::kComparison,
                path.string() + ": " + std::string(err.what()));
  }
  return CompareEntryFromSummary(summary);
}

std::vector<CompareEntry> CompareReport(std::vector<CompareEntry> entries) {
  for (const CompareEntry& e : entries) {
    if (e.horizon != entries.front().horizon) {
      throw Error(ErrorCode::kComparison,
                  "series have different horizons (" +
                      std::to_string(entries.front().horizon) + " vs " +
                      std::to_string(e.horizon) + ")");
    }
  }
  std::stable_sort(
      entries.begin(), entries.end(),
      [](const CompareEntry& a, const CompareEntry& b) {
        if (a.final_running_avg_utility != b.final_running_avg_utility) {
          return a.final_running_avg_utility > b.final_running_avg_utility;
        }
        return a.name < b.name;
      });
  return entries;
}

void WriteCompareCsv(std::ostream& out, std::span<const CompareEntry> rows) {
  out << "rank,name,horizon,final_running_avg_utility,avg_within_5,"
         "avg_top5_distance\n";
  int rank = 1;
  for (const CompareEntry& e : rows) {
    out << rank++ << ',' << e.name << ',' << e.horizon << ','
        << FormatDouble(e.final_running_avg_utility) << ','
        << FormatOptional(e.avg_within_5) << ','
        << FormatOptional(e.avg_top5_distance) << '\n';
  }
}

void WriteCompareText(std::ostream& out, std::span<const CompareEntry> rows) {
  size_t width = 4;
  for (const CompareEntry& e : rows) width = std::max(width, e.name.size());
  out << std::left << std::setw(6) << "rank" << std::setw(width + 2) << "name"
      << std::right << std::setw(14) << "running_avg" << std::setw(12)
      << "within_5" << std::setw(12) << "top5_dist" << '\n';
  int rank = 1;
  for (const CompareEntry& e : rows) {
    out << std::left << std::setw(6) << rank++ << std::setw(width + 2) << e.name
        << std::right << std::fixed << std::setprecision(4) << std::setw(14)
        << e.final_running_avg_utility;
    if (e.avg_within_5) {
      out << std::setw(12) << *e.avg_within_5 << std::setw(12)
          << *e.avg_top5_distance;
    } else {
      out << std::setw(12) << "-" << std::setw(12) << "-";
    }
    out << '\n';
  }
  out.unsetf(std::ios::fixed);
}

// ---------------------------------------------------------------------------
// Regret.

RegretSuiteResult RegretSuite(const ExperimentConfig& config,
                              std::span<const int> grid) {
  if (!RegretAvailable(config)) {
    throw Error(ErrorCode::kCapability,
                "regret needs a synthetic scenario with prod (|V_i| + 1) <= " +
                    std::to_string(kDefaultEnumerationCap));
  }
  RegretSuiteResult result;
  result.alpha = ApproximationFactor(config.curvature);
  result.beta = BuildNetwork(config, config.seed).beta();
  for (int horizon : grid) {
    if (horizon < 1) {
      throw Error(ErrorCode::kInvalidArgument, "regret grid needs T >= 1");
    }
    ExperimentConfig c = config;
    c.horizon = horizon;
    c.write_trajectory = false;
    std::vector<double> regret;
    std::vector<double> per_round;
    std::vector<double> drift;
    double opt = 0.0;
    for (int r = 0; r < c.replicates; ++r) {
      const ReplicateResult rep = RunReplicate(c, r);
      regret.push_back(rep.regret->regret);
      per_round.push_back(rep.regret->regret / horizon);
      drift.push_back(rep.regret->maximizer_drift);
      opt += rep.regret->optimum_sum / horizon / c.replicates;
    }
    result.points.push_back({horizon, Summarize(regret), Summarize(per_round),
                             Summarize(drift), opt});
  }
  return result;
}

void WriteRegretCsv(std::ostream& out, const RegretSuiteResult& result) {
  out << "horizon,regret_mean,regret_std,regret_per_round_mean,"
         "regret_per_round_std,maximizer_drift_mean,optimum_avg,alpha,beta\n";
  for (const RegretPoint& p : result.points) {
    out << p.horizon << ',' << FormatDouble(p.regret.mean) << ','
        << FormatDouble(p.regret.std) << ','
        << FormatDouble(p.regret_per_round.mean) << ','
        << FormatDouble(p.regret_per_round.std) << ','
        << FormatDouble(p.maximizer_drift.mean) << ','
        << FormatDouble(p.optimum_avg) << ',' << FormatDouble(result.alpha)
        << ',' << FormatDouble(result.beta) << '\n';
  }
}

}  // namespace masub
