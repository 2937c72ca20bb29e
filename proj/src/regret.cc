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

#include "masub/regret.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace masub {
namespace {

// Product of `sizes`, or cap + 1 once it passes the cap.
long long BoundedProduct(const std::vector<int>& sizes, long long cap) {
  long long total = 1;
  for (int s : sizes) {
    total *= s;
    if (total > cap) return cap + 1;
  }
  return total;
}

// Advances a mixed-radix counter, last digit fastest. False on wrap-around.
bool NextTuple(std::vector<int>& digits, const std::vector<int>& radix) {
  for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
    if (++digits[k] < radix[k]) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace

double ApproximationFactor(double curvature) {
  if (!(curvature >= 0.0 && curvature <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "curvature must lie in [0, 1]");
  }
  return curvature == 0.0 ? 1.0 : -std::expm1(-curvature) / curvature;
}

Maximizer BruteForceMaximizer(const SetFunction& f, const GroundSet& ground,
                              long long cap) {
  if (f.ground_size() != ground.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "objective and ground set sizes differ");
  }
  const int num_agents = ground.num_agents();
  std::vector<int> radix(num_agents);
  for (int i = 0; i < num_agents; ++i) {
    radix[i] = static_cast<int>(ground.block(i).size()) + 1;
  }
  if (BoundedProduct(radix, cap) > cap) {
    throw Error(ErrorCode::kCapability,
                "brute-force maximizer exceeds the enumeration cap of " +
                    std::to_string(cap));
  }
  Maximizer best;
  best.value = -INFINITY;
  std::vector<int> digits(num_agents, 0);
  std::vector<int> set;
  do {
    set.clear();
    for (int i = 0; i < num_agents; ++i) {
      const auto block = ground.block(i);
      if (digits[i] < static_cast<int>(block.size())) {
        set.push_back(block[digits[i]]);
      }
    }
    const double value = f.Value(set);
    if (value > best.value) {
      best.value = value;
      best.set = set;
      best.choice.assign(num_agents, -1);
      for (int i = 0; i < num_agents; ++i) {
        const auto block = ground.block(i);
        if (digits[i] < static_cast<int>(block.size())) {
          best.choice[i] = block[digits[i]];
        }
      }
    }
  } while (NextTuple(digits, radix));
  return best;
}

int SymmetricDifferenceSize(std::span<const int> a, std::span<const int> b) {
  std::vector<int> sa(a.begin(), a.end());
  std::vector<int> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<int> diff;
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                std::back_inserter(diff));
  return static_cast<int>(diff.size());
}

RegretReport ComputeDynamicRegret(
    std::span<const std::shared_ptr<const SetFunction>> functions,
    std::span<const double> utilities, const GroundSet& ground, double alpha,
    long long cap) {
  if (functions.size() != utilities.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "one utility per objective is required");
  }
  RegretReport report;
  report.alpha = alpha;
  report.optima.reserve(functions.size());
  report.cumulative_regret.reserve(functions.size());
  double running = 0.0;
  for (size_t t = 0; t < functions.size(); ++t) {
    // Stationary streams repeat the same object; reuse its optimum.
    if (t > 0 && functions[t] == functions[t - 1]) {
      report.optima.push_back(report.optima.back());
    } else {
      report.optima.push_back(BruteForceMaximizer(*functions[t], ground, cap));
    }
    const double opt = report.optima.back().value;
    report.optimum_sum += opt;
    report.utility_sum += utilities[t];
    running += alpha * opt - utilities[t];
    report.cumulative_regret.push_back(running);
    if (t > 0) {
      report.maximizer_drift += SymmetricDifferenceSize(
          report.optima[t].set, report.optima[t - 1].set);
    }
  }
  report.regret = alpha * report.optimum_sum - report.utility_sum;
  return report;
}

RoundingCheck VerifyRoundingInequality(const SetFunction& f,
                                       const GroundSet& ground,
                                       std::span<const BeliefVector> beliefs,
                                       int threshold, long long cap) {
  const int num_agents = ground.num_agents();
  if (static_cast<int>(beliefs.size()) != num_agents) {
    throw Error(ErrorCode::kDimensionMismatch, "one belief per agent required");
  }
  if (f.ground_size() != ground.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "objective and ground set sizes differ");
  }
  if (!f.ExactEnumerable(threshold)) {
    throw Error(ErrorCode::kCapability,
                "rounding check needs n <= " + std::to_string(threshold));
  }
  std::vector<int> radix(num_agents);
  std::vector<double> block_sum(num_agents, 0.0);
  BeliefVector combined(ground.size(), 0.0);
  for (int i = 0; i < num_agents; ++i) {
    const auto block = ground.block(i);
    radix[i] = static_cast<int>(block.size());
    ValidateProbabilities(beliefs[i], ground.size());
    for (int a : block) {
      block_sum[i] += beliefs[i][a];
      combined[a] = beliefs[i][a];
    }
    if (!(block_sum[i] > 0.0)) {
      throw Error(ErrorCode::kDegenerate,
                  "agent " + std::to_string(i) + " has an all-zero block");
    }
  }
  if (BoundedProduct(radix, cap) > cap) {
    throw Error(
        ErrorCode::kCapability,
        "rounding enumeration exceeds the cap of " + std::to_string(cap));
  }
  RoundingCheck check;
  std::vector<int> digits(num_agents, 0);
  std::vector<int> set(num_agents);
  do {
    double p = 1.0;
    for (int i = 0; i < num_agents; ++i) {
      const int a = ground.block(i)[digits[i]];
      set[i] = a;
      p *= beliefs[i][a] / block_sum[i];
    }
    if (p > 0.0) check.lhs += p * f.Value(set);
  } while (NextTuple(digits, radix));
  check.rhs = MultilinearExact(f, combined, threshold);
  check.holds = check.lhs >= check.rhs - 1e-9;
  return check;
}

}  // namespace masub
