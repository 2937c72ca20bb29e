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

#include "masub/coordinator.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "masub/surrogate.h"

namespace masub {
namespace {

constexpr double kFeasibilityTol = 1e-9;

void CheckCompatible(const GroundSet& ground, const SetFunction& f) {
  if (f.ground_size() != ground.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "objective has " + std::to_string(f.ground_size()) +
                    " actions but the ground set has " +
                    std::to_string(ground.size()));
  }
}

void CheckCompatible(const GroundSet& ground, const CommNetwork& network) {
  if (network.size() != ground.num_agents()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "network has " + std::to_string(network.size()) +
                    " nodes but there are " +
                    std::to_string(ground.num_agents()) + " agents");
  }
}

// Fills consensus errors and checks that every belief stays in the
// relaxation.
void FinishRound(CoordinatorState& state, RoundOutcome& outcome) {
  const int num_agents = state.ground.num_agents();
  const int n = state.ground.size();
  std::vector<double> mean(n, 0.0);
  for (const auto& x : state.beliefs) {
    for (int a = 0; a < n; ++a) mean[a] += x[a] / num_agents;
  }
  outcome.max_consensus_error = 0.0;
  for (int i = 0; i < num_agents; ++i) {
    const auto& x = state.beliefs[i];
    if (!IsFeasibleBelief(x, state.ground, kFeasibilityTol)) {
      throw Error(ErrorCode::kValidation,
                  "belief of agent " + std::to_string(i) +
                      " left the feasible region in round " +
                      std::to_string(state.round));
    }
    double err = 0.0;
    for (int a = 0; a < n; ++a) err += std::abs(x[a] - mean[a]);
    outcome.agents[i].consensus_error = err;
    outcome.max_consensus_error = std::max(outcome.max_consensus_error, err);
  }
  ++state.round;
}

// Shared body of both consensus coordinators. `published` are the phase-1
// vectors neighbors aggregate.
RoundOutcome ConsensusRound(CoordinatorState& state, const SetFunction& f,
                            const CommNetwork& network,
                            const std::vector<BeliefVector>& published,
                            Geometry geometry, std::vector<int> actions) {
  const GroundSet& ground = state.ground;
  const int num_agents = ground.num_agents();
  const double eta = state.options.step.at(state.round);
  const double c = state.options.curvature;

  RoundOutcome outcome;
  outcome.t = state.round;
  outcome.utility = f.Value(actions);
  outcome.agents.resize(num_agents);

  std::vector<BeliefVector> next(num_agents);
  for (int i = 0; i < num_agents; ++i) {
    AgentDiagnostics& diag = outcome.agents[i];
    diag.action = actions[i];
    BeliefVector y = AggregateBeliefs(network, published, i);
    diag.min_aggregate = *std::min_element(y.begin(), y.end());

    const std::span<const int> block = ground.block(i);
    GradientEstimate est =
        state.options.full_gradient
            ? EstimateSurrogateGradient(f, state.beliefs[i], c,
                                        state.streams[i])
            : EstimateSurrogateGradientForAgent(f, state.beliefs[i], c, ground,
                                                i, state.streams[i]);
    std::vector<double> g(block.size());
    std::vector<double> y_block(block.size());
    for (size_t k = 0; k < block.size(); ++k) {
      // Block estimates are laid out in block order; full ones by index.
      g[k] = state.options.full_gradient ? est.values[block[k]] : est.values[k];
      y_block[k] = y[block[k]];
      diag.gradient_norm = std::max(diag.gradient_norm, std::abs(g[k]));
    }
    diag.z = est.z;
    const std::vector<double> updated = MirrorUpdate(geometry, y_block, g, eta);
    for (size_t k = 0; k < block.size(); ++k) y[block[k]] = updated[k];
    next[i] = std::move(y);
  }
  outcome.actions = std::move(actions);
  state.beliefs = std::move(next);
  FinishRound(state, outcome);
  return outcome;
}

std::vector<int> SampleAllActions(CoordinatorState& state) {
  std::vector<int> actions(state.ground.num_agents());
  for (int i = 0; i < state.ground.num_agents(); ++i) {
    actions[i] = SampleBlockAction(state.beliefs[i], state.ground.block(i),
                                   state.streams[i]);
  }
  return actions;
}

int GreedyPick(const SetFunction& f, std::span<const int> block,
               const std::vector<int>& chosen) {
  int best = block.front();
  double best_gain = -INFINITY;
  const double base = f.Value(chosen);
  std::vector<int> trial = chosen;
  trial.push_back(-1);
  for (int a : block) {
    trial.back() = a;
    const double gain = f.Value(trial) - base;
    if (gain > best_gain) {
      best_gain = gain;
      best = a;
    }
  }
  return best;
}

std::vector<int> IdentityOrder(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

void CheckOrder(std::span<const int> order, int num_agents) {
  std::vector<int> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != IdentityOrder(num_agents)) {
    throw Error(ErrorCode::kInvalidArgument,
                "agent order must be a permutation of all agents");
  }
}

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kMaOsma:
      return "ma-osma";
    case Algorithm::kMaOsea:
      return "ma-osea";
    case Algorithm::kOsg:
      return "osg";
  }
  return "unknown";
}

std::optional<Algorithm> ParseAlgorithm(std::string_view name) {
  for (Algorithm a :
       {Algorithm::kMaOsma, Algorithm::kMaOsea, Algorithm::kOsg}) {
    if (name == AlgorithmName(a)) return a;
  }
  return std::nullopt;
}

StepSchedule StepSchedule::Constant(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidArgument, "step size must be positive");
  }
  return StepSchedule{eta};
}

StepSchedule StepSchedule::InverseSqrtHorizon(int horizon) {
  if (horizon < 1) throw Error(ErrorCode::kInvalidArgument, "horizon < 1");
  return Constant(1.0 / std::sqrt(static_cast<double>(horizon)));
}

StepSchedule StepSchedule::SpectralScaled(double eta0, double beta,
                                          int horizon) {
  if (horizon < 1) throw Error(ErrorCode::kInvalidArgument, "horizon < 1");
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must lie in [0, 1)");
  }
  return Constant(eta0 * std::sqrt((1.0 - beta) / horizon));
}

double DefaultMixing(int horizon) {
  if (horizon < 1) throw Error(ErrorCode::kInvalidArgument, "horizon < 1");
  const double t = horizon;
  return std::min(0.5, 1.0 / (t * t));
}

CoordinatorState InitCoordinatorState(const GroundSet& ground,
                                      const CoordinatorOptions& options,
                                      std::uint64_t seed) {
  SurrogateSampler check(options.curvature);  // validates c
  (void)check;
  CoordinatorState state{ground, {}, 1, options, {}};
  const int num_agents = ground.num_agents();
  state.beliefs.assign(num_agents, BeliefVector(ground.size(), 0.0));
  for (int i = 0; i < num_agents; ++i) {
    const auto block = ground.block(i);
    for (int a : block) state.beliefs[i][a] = 1.0 / block.size();
    state.streams.push_back(
        MakeStream(seed, static_cast<std::uint64_t>(i) + 1));
  }
  return state;
}

int SampleBlockAction(std::span<const double> x, std::span<const int> block,
                      Rng& rng) {
  double sum = 0.0;
  for (int a : block) sum += x[a];
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::kDegenerate, "action block carries no mass");
  }
  const double target = UniformUnit(rng) * sum;
  double acc = 0.0;
  for (int a : block) {
    acc += x[a];
    if (target < acc) return a;
  }
  // Rounding left target at the very top; take the last action with mass.
  for (auto it = block.rbegin(); it != block.rend(); ++it) {
    if (x[*it] > 0.0) return *it;
  }
  return block.back();
}

RoundOutcome MaOsmaRound(CoordinatorState& state, const SetFunction& f,
                         const CommNetwork& network) {
  CheckCompatible(state.ground, f);
  CheckCompatible(state.ground, network);
  std::vector<int> actions = SampleAllActions(state);
  const std::vector<BeliefVector> published = state.beliefs;
  return ConsensusRound(state, f, network, published, state.options.geometry,
                        std::move(actions));
}

RoundOutcome MaOseaRound(CoordinatorState& state, const SetFunction& f,
                         const CommNetwork& network) {
  CheckCompatible(state.ground, f);
  CheckCompatible(state.ground, network);
  const double gamma = state.options.gamma;
  if (!(gamma > 0.0 && gamma <= 0.5)) {
    throw Error(
        ErrorCode::kInvalidArgument,
        "mixing weight must lie in (0, 1/2], got " + std::to_string(gamma));
  }
  std::vector<int> actions = SampleAllActions(state);
  const int n = state.ground.size();
  std::vector<BeliefVector> published = state.beliefs;
  for (auto& x : published) {
    for (double& v : x) v = (1.0 - gamma) * v + gamma / n;
  }
  return ConsensusRound(state, f, network, published, Geometry::kEntropic,
                        std::move(actions));
}

OsgState InitOsgState(const GroundSet& ground, std::vector<int> order,
                      std::uint64_t seed) {
  if (order.empty()) order = IdentityOrder(ground.num_agents());
  CheckOrder(order, ground.num_agents());
  return OsgState{ground, std::move(order), MakeStream(seed, 0), nullptr, 1};
}

RoundOutcome OsgRound(OsgState& state, std::shared_ptr<const SetFunction> f) {
  CheckCompatible(state.ground, *f);
  const int num_agents = state.ground.num_agents();
  RoundOutcome outcome;
  outcome.t = state.round;
  outcome.actions.assign(num_agents, -1);
  outcome.agents.resize(num_agents);
  if (state.previous == nullptr) {
    for (int i : state.order) {
      const auto block = state.ground.block(i);
      outcome.actions[i] =
          block[UniformIndex(state.rng, static_cast<int>(block.size()))];
    }
  } else {
    std::vector<int> chosen;
    for (int i : state.order) {
      const int a = GreedyPick(*state.previous, state.ground.block(i), chosen);
      outcome.actions[i] = a;
      chosen.push_back(a);
    }
  }
  for (int i = 0; i < num_agents; ++i)
    outcome.agents[i].action = outcome.actions[i];
  outcome.utility = f->Value(outcome.actions);
  state.previous = std::move(f);
  ++state.round;
  return outcome;
}

std::vector<int> SequentialGreedy(const SetFunction& f, const GroundSet& ground,
                                  std::span<const int> order) {
  CheckCompatible(ground, f);
  CheckOrder(order, ground.num_agents());
  std::vector<int> actions(ground.num_agents(), -1);
  std::vector<int> chosen;
  for (int i : order) {
    const int a = GreedyPick(f, ground.block(i), chosen);
    actions[i] = a;
    chosen.push_back(a);
  }
  return actions;
}

TheoryConstants ComputeTheoryConstants(double max_singleton, double curvature,
                                       Geometry geometry,
                                       const GroundSet& ground, double beta) {
  const double c = curvature;
  const double scale = c == 0.0 ? 1.0 : -std::expm1(-c) / c;
  // (e^{-c} + c - 1) / c^2, with its series near 0 where the numerator
  // cancels.
  const double smooth =
      c < 1e-4 ? 0.5 - c / 6.0 + c * c / 24.0 : (std::expm1(-c) + c) / (c * c);
  TheoryConstants k;
  k.max_singleton = max_singleton;
  k.gradient_bound = scale * max_singleton;
  k.smoothness = smooth * max_singleton;
  // Two distinct vertices of each block's capped simplex are 2 apart in l1
  // and sqrt(2) apart in l2.
  k.diameter = 2.0 * ground.num_agents();
  if (geometry == Geometry::kEuclidean) {
    k.bregman_diameter = static_cast<double>(ground.num_agents());
    k.divergence_lipschitz = k.diameter;
  }
  k.beta = beta;
  return k;
}

GeneratorEnvironment::GeneratorEnvironment(GroundSet ground,
                                           Generator generator)
    : ground_(std::move(ground)), generator_(std::move(generator)) {}

std::shared_ptr<const SetFunction> GeneratorEnvironment::Reveal() {
  return generator_(++t_);
}

Trajectory RunExperiment(Environment& env, const CommNetwork& network,
                         const RunOptions& options,
                         const RoundObserver& observer) {
  const GroundSet& ground = env.ground();
  CheckCompatible(ground, network);
  if (options.horizon < 0) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be >= 0");
  }
  Trajectory traj;
  traj.rounds.reserve(options.horizon);

  std::optional<CoordinatorState> consensus;
  std::optional<OsgState> osg;
  if (options.algorithm == Algorithm::kOsg) {
    osg = InitOsgState(ground, options.osg_order, options.seed);
  } else {
    consensus = InitCoordinatorState(ground, options.coordinator, options.seed);
  }

  double max_singleton = 0.0;
  for (int t = 1; t <= options.horizon; ++t) {
    std::shared_ptr<const SetFunction> f = env.Reveal();
    CheckCompatible(ground, *f);
    max_singleton = std::max(max_singleton, MaxSingletonValue(*f));
    if (options.keep_functions) traj.functions.push_back(f);
    RoundOutcome outcome;
    switch (options.algorithm) {
      case Algorithm::kMaOsma:
        outcome = MaOsmaRound(*consensus, *f, network);
        break;
      case Algorithm::kMaOsea:
        outcome = MaOseaRound(*consensus, *f, network);
        break;
      case Algorithm::kOsg:
        outcome = OsgRound(*osg, f);
        break;
    }
    outcome.t = t;
    env.Commit(outcome.actions);
    if (observer) observer(outcome);
    traj.rounds.push_back(std::move(outcome));
  }
  const Geometry geometry = options.algorithm == Algorithm::kMaOsea
                                ? Geometry::kEntropic
                                : options.coordinator.geometry;
  traj.constants =
      ComputeTheoryConstants(max_singleton, options.coordinator.curvature,
                             geometry, ground, network.beta());
  return traj;
}

}  // namespace masub
