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

#include "masub/set_function.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace masub {
namespace {

void CheckIndex(const SetFunction& f, int a) {
  if (a < 0 || a >= f.ground_size()) {
    throw Error(ErrorCode::kInvalidAction, "action " + std::to_string(a) +
                                               " outside ground set of size " +
                                               std::to_string(f.ground_size()));
  }
}

void CheckNonNegative(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(what) + " must be finite and non-negative");
    }
  }
}

}  // namespace

double MarginalGain(const SetFunction& f, int action,
                    std::span<const int> set) {
  CheckIndex(f, action);
  for (int a : set) CheckIndex(f, a);
  if (std::find(set.begin(), set.end(), action) != set.end()) return 0.0;
  std::vector<int> with(set.begin(), set.end());
  with.push_back(action);
  return f.Value(with) - f.Value(set);
}

ModularFunction::ModularFunction(std::vector<double> weights)
    : weights_(std::move(weights)) {
  CheckNonNegative(weights_, "modular weights");
}

double ModularFunction::Value(std::span<const int> set) const {
  double total = 0.0;
  for (int a : set) total += weights_[a];
  return total;
}

WeightedCoverage::WeightedCoverage(std::vector<double> item_weights,
                                   std::vector<std::vector<int>> covers)
    : item_weights_(std::move(item_weights)), covers_(std::move(covers)) {
  CheckNonNegative(item_weights_, "item weights");
  const int num_items = static_cast<int>(item_weights_.size());
  for (const auto& items : covers_) {
    for (int u : items) {
      if (u < 0 || u >= num_items) {
        throw Error(ErrorCode::kInvalidArgument, "covered item out of range");
      }
    }
  }
}

double WeightedCoverage::Value(std::span<const int> set) const {
  // Small universes; a flag vector is cheaper than a hash set here.
  std::vector<char> covered(item_weights_.size(), 0);
  double total = 0.0;
  for (int e : set) {
    for (int u : covers_[e]) {
      if (!covered[u]) {
        covered[u] = 1;
        total += item_weights_[u];
      }
    }
  }
  return total;
}

FacilityLocation::FacilityLocation(int num_customers, int num_elements,
                                   std::vector<double> benefits)
    : num_customers_(num_customers),
      num_elements_(num_elements),
      benefits_(std::move(benefits)) {
  if (num_customers < 0 || num_elements < 0 ||
      benefits_.size() != static_cast<size_t>(num_customers) *
                              static_cast<size_t>(num_elements)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "benefit matrix does not match customers x elements");
  }
  CheckNonNegative(benefits_, "benefits");
}

double FacilityLocation::Value(std::span<const int> set) const {
  if (set.empty()) return 0.0;
  double total = 0.0;
  for (int j = 0; j < num_customers_; ++j) {
    const double* row =
        benefits_.data() + static_cast<size_t>(j) * num_elements_;
    double best = 0.0;
    for (int e : set) best = std::max(best, row[e]);
    total += best;
  }
  return total;
}

ModularFunction RandomModular(int n, Rng& rng) {
  std::vector<double> w(n);
  for (double& v : w) v = 0.05 + UniformUnit(rng);
  return ModularFunction(std::move(w));
}

WeightedCoverage RandomCoverage(int n, int num_items, Rng& rng) {
  std::vector<double> weights(num_items);
  for (double& v : weights) v = 0.1 + UniformUnit(rng);
  std::vector<std::vector<int>> covers(n);
  for (auto& items : covers) {
    for (int u = 0; u < num_items; ++u) {
      if (UniformUnit(rng) < 0.35) items.push_back(u);
    }
    if (items.empty()) items.push_back(UniformIndex(rng, num_items));
  }
  return WeightedCoverage(std::move(weights), std::move(covers));
}

FacilityLocation RandomFacilityLocation(int n, int num_customers, Rng& rng) {
  std::vector<double> b(static_cast<size_t>(n) * num_customers);
  for (double& v : b) {
    double u = UniformUnit(rng);
    v = u * u;  // skewed so a few elements dominate each customer
  }
  return FacilityLocation(num_customers, n, std::move(b));
}

std::unique_ptr<SetFunction> RandomMixedFamily(int n, Rng& rng) {
  switch (UniformIndex(rng, 3)) {
    case 0:
      return std::make_unique<ModularFunction>(RandomModular(n, rng));
    case 1:
      return std::make_unique<WeightedCoverage>(
          RandomCoverage(n, 2 + UniformIndex(rng, 2 * n), rng));
    default:
      return std::make_unique<FacilityLocation>(
          RandomFacilityLocation(n, 1 + UniformIndex(rng, 6), rng));
  }
}

double MaxSingletonValue(const SetFunction& f) {
  double best = 0.0;
  for (int a = 0; a < f.ground_size(); ++a) {
    const int single[] = {a};
    best = std::max(best, f.Value(single));
  }
  return best;
}

SpotCheckReport SpotCheckSetFunction(const SetFunction& f, int samples,
                                     Rng& rng, double tol) {
  SpotCheckReport report;
  const int n = f.ground_size();
  const double empty = f.Value({});
  if (std::abs(empty) > tol) {
    ++report.normalization_violations;
    report.worst_violation = std::abs(empty);
  }
  if (n == 0) return report;
  for (int s = 0; s < samples; ++s) {
    ++report.samples;
    // Random chain A subset B; e drawn from the complement of B when possible.
    const double pb = UniformUnit(rng);
    const double pa = UniformUnit(rng);
    std::vector<int> a_set;
    std::vector<int> b_set;
    std::vector<int> outside;
    for (int e = 0; e < n; ++e) {
      if (UniformUnit(rng) < pb) {
        b_set.push_back(e);
        if (UniformUnit(rng) < pa) a_set.push_back(e);
      } else {
        outside.push_back(e);
      }
    }
    const double fa = f.Value(a_set);
    const double fb = f.Value(b_set);
    if (fa > fb + tol) {
      ++report.monotonicity_violations;
      report.worst_violation = std::max(report.worst_violation, fa - fb);
    }
    if (outside.empty()) continue;
    const int e = outside[UniformIndex(rng, static_cast<int>(outside.size()))];
    a_set.push_back(e);
    b_set.push_back(e);
    const double gain_a = f.Value(a_set) - fa;
    const double gain_b = f.Value(b_set) - fb;
    if (gain_b > gain_a + tol) {
      ++report.submodularity_violations;
      report.worst_violation =
          std::max(report.worst_violation, gain_b - gain_a);
    }
  }
  return report;
}

}  // namespace masub
