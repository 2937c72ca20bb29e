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

//
// Multi-agent online coordinators
//
// Each round has two phases separated by a barrier:
//   1. every agent samples its action from its own block of x_{t,i} and
//      publishes its belief (MA-OSEA publishes the mixed belief);
//   2. every agent aggregates its neighbors' published beliefs into y_{t,i},
//      estimates the surrogate gradient of f_t on its own block at x_{t,i},
//      copies y_{t,i} off-block and takes a mirror step on its block.
// Phase 2 reads only the phase-1 snapshot, so agents are independent there.
// Each agent draws from its own stream, which keeps runs reproducible.

#ifndef MASUB_COORDINATOR_H_
#define MASUB_COORDINATOR_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "masub/common.h"
#include "masub/ground_set.h"
#include "masub/mirror.h"
#include "masub/multilinear.h"
#include "masub/network.h"
#include "masub/set_function.h"

namespace masub {

enum class Algorithm { kMaOsma, kMaOsea, kOsg };

std::string_view AlgorithmName(Algorithm algorithm);
std::optional<Algorithm> ParseAlgorithm(std::string_view name);

// Constant step sizes; the named constructors cover the supported defaults.
struct StepSchedule {
  double eta = 0.1;

  static StepSchedule Constant(double eta);
  // 1 / sqrt(T).
  static StepSchedule InverseSqrtHorizon(int horizon);
  // eta0 * sqrt((1 - beta) / T).
  static StepSchedule SpectralScaled(double eta0, double beta, int horizon);

  double at(int /*t*/) const { return eta; }
};

// min(1/2, 1 / T^2).
double DefaultMixing(int horizon);

struct CoordinatorOptions {
  Geometry geometry = Geometry::kEuclidean;  // ignored by MA-OSEA
  double curvature = 1.0;
  StepSchedule step;
  double gamma = 0.0;  // MA-OSEA mixing weight, in (0, 1/2]
  // Test hook: estimate every coordinate of the gradient, not just the
  // agent's block. Only the block is used for the update either way.
  bool full_gradient = false;
};

struct AgentDiagnostics {
  int action = -1;
  double z = 0.0;
  double gradient_norm = 0.0;  // max-norm of the block estimate
  // ||x_{t+1,i} - mean_j x_{t+1,j}||_1 after the update.
  double consensus_error = 0.0;
  // Smallest coordinate of y_{t,i}.
  double min_aggregate = 0.0;
};

struct RoundOutcome {
  int t = 0;
  std::vector<int> actions;  // one per agent, actions[i] in block i
  double utility = 0.0;      // f_t of the union of the actions
  std::vector<AgentDiagnostics> agents;
  double max_consensus_error = 0.0;
};

struct CoordinatorState {
  GroundSet ground;
  std::vector<BeliefVector> beliefs;  // x_{t,i}
  int round = 1;
  CoordinatorOptions options;
  std::vector<Rng> streams;  // one per agent
};

// x_{1,i} is uniform 1/|V_i| on block i and 0 elsewhere.
CoordinatorState InitCoordinatorState(const GroundSet& ground,
                                      const CoordinatorOptions& options,
                                      std::uint64_t seed);

// Categorical draw over `block` with probabilities x[a] / sum_{block} x.
// Throws kDegenerate when the block has no mass.
int SampleBlockAction(std::span<const double> x, std::span<const int> block,
                      Rng& rng);

RoundOutcome MaOsmaRound(CoordinatorState& state, const SetFunction& f,
                         const CommNetwork& network);

RoundOutcome MaOseaRound(CoordinatorState& state, const SetFunction& f,
                         const CommNetwork& network);

// Greedy-on-yesterday baseline: agents in a fixed order pick the action with
// the largest marginal gain under the previous round's objective, given their
// predecessors' picks. Round 1 picks uniformly at random.
struct OsgState {
  GroundSet ground;
  std::vector<int> order;
  Rng rng;
  std::shared_ptr<const SetFunction> previous;
  int round = 1;
};

OsgState InitOsgState(const GroundSet& ground, std::vector<int> order,
                      std::uint64_t seed);

// Decides from state.previous, scores the decision with `f`, then remembers
// `f` for the next round.
RoundOutcome OsgRound(OsgState& state, std::shared_ptr<const SetFunction> f);

// Offline sequential greedy over one action per agent. Ties go to the
// smallest action index.
std::vector<int> SequentialGreedy(const SetFunction& f, const GroundSet& ground,
                                  std::span<const int> order);

// Bounds used by the regret analysis, evaluated for a concrete run.
struct TheoryConstants {
  double max_singleton = 0.0;   // max_{a,t} f_t({a})
  double gradient_bound = 0.0;  // G under the l1 geometry
  double smoothness = 0.0;      // L under the l1 geometry
  double diameter = 0.0;        // D = sup ||x - y||_1 over the relaxation
  std::optional<double> bregman_diameter;      // Euclidean only
  std::optional<double> divergence_lipschitz;  // recorded as D, Euclidean only
  double beta = 0.0;
  std::optional<double> maximizer_drift;  // C_T when the optimum is known
  double norm_equivalence = 1.0;          // l1 geometry
};

TheoryConstants ComputeTheoryConstants(double max_singleton, double curvature,
                                       Geometry geometry,
                                       const GroundSet& ground, double beta);

// Source of per-round objectives. Reveal() advances to the next round and
// returns f_t; Commit() reports the actions taken in that round.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual const GroundSet& ground() const = 0;
  virtual std::shared_ptr<const SetFunction> Reveal() = 0;
  virtual void Commit(std::span<const int> actions) { (void)actions; }
};

// Objectives produced by a callback of the round index (1-based).
class GeneratorEnvironment : public Environment {
 public:
  using Generator = std::function<std::shared_ptr<const SetFunction>(int t)>;

  GeneratorEnvironment(GroundSet ground, Generator generator);

  const GroundSet& ground() const override { return ground_; }
  std::shared_ptr<const SetFunction> Reveal() override;

 private:
  GroundSet ground_;
  Generator generator_;
  int t_ = 0;
};

struct RunOptions {
  Algorithm algorithm = Algorithm::kMaOsma;
  CoordinatorOptions coordinator;
  int horizon = 0;
  std::uint64_t seed = 0;
  std::vector<int> osg_order;  // empty means 0, 1, ..., N-1
  bool keep_functions = false;
};

struct Trajectory {
  std::vector<RoundOutcome> rounds;
  std::vector<std::shared_ptr<const SetFunction>> functions;  // if kept
  TheoryConstants constants;
};

using RoundObserver = std::function<void(const RoundOutcome&)>;

// Runs `horizon` rounds. Deterministic given the environment and seed.
Trajectory RunExperiment(Environment& env, const CommNetwork& network,
                         const RunOptions& options,
                         const RoundObserver& observer = {});

}  // namespace masub

#endif  // MASUB_COORDINATOR_H_
