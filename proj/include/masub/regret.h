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

// Brute-force oracles for small instances: per-round maximizers, dynamic
// alpha-regret and the expected value of independent per-agent rounding.

#ifndef MASUB_REGRET_H_
#define MASUB_REGRET_H_

#include <memory>
#include <span>
#include <vector>

#include "masub/common.h"
#include "masub/ground_set.h"
#include "masub/multilinear.h"
#include "masub/set_function.h"

namespace masub {

// Largest number of joint choices a brute-force oracle will enumerate.
inline constexpr long long kDefaultEnumerationCap = 100000;

// (1 - e^{-c}) / c, with the limit 1 at c = 0.
double ApproximationFactor(double curvature);

struct Maximizer {
  // Per agent: the chosen action, or -1 for no action.
  std::vector<int> choice;
  std::vector<int> set;  // chosen actions in agent order
  double value = 0.0;
};

// Exhaustive search over one-or-no action per agent. Each agent's options
// are its block in order followed by "none"; the first tuple in
// lexicographic order with the largest value wins. Throws kCapability when
// prod (|V_i| + 1) exceeds `cap`.
Maximizer BruteForceMaximizer(const SetFunction& f, const GroundSet& ground,
                              long long cap = kDefaultEnumerationCap);

// |A delta B| for two action sets.
int SymmetricDifferenceSize(std::span<const int> a, std::span<const int> b);

struct RegretReport {
  double alpha = 0.0;
  double regret = 0.0;  // alpha * sum OPT_t - sum utility_t
  double optimum_sum = 0.0;
  double utility_sum = 0.0;
  // sum_{t=1}^{T-1} |A*_{t+1} delta A*_t|.
  int maximizer_drift = 0;
  std::vector<Maximizer> optima;
  std::vector<double> cumulative_regret;  // after each round
};

// `utilities[t]` is the realized utility of round t+1 under functions[t].
RegretReport ComputeDynamicRegret(
    std::span<const std::shared_ptr<const SetFunction>> functions,
    std::span<const double> utilities, const GroundSet& ground, double alpha,
    long long cap = kDefaultEnumerationCap);

struct RoundingCheck {
  double lhs = 0.0;  // E f(union of per-agent draws)
  double rhs = 0.0;  // F(sum_i x_i restricted to V_i)
  bool holds = false;
};

// Agent i draws a from V_i with probability x_i[a] / sum_{V_i} x_i, as in the
// coordinators. lhs enumerates all prod |V_i| joint draws; rhs uses the
// exact multilinear extension. holds = lhs >= rhs - 1e-9.
RoundingCheck VerifyRoundingInequality(const SetFunction& f,
                                       const GroundSet& ground,
                                       std::span<const BeliefVector> beliefs,
                                       int threshold = kDefaultExactThreshold,
                                       long long cap = kDefaultEnumerationCap);

}  // namespace masub

#endif  // MASUB_REGRET_H_
