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

#include "masub/multilinear.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace masub {
namespace {

void CheckThreshold(int n, int threshold) {
  if (threshold < 0 || threshold > kMaxExactThreshold) {
    throw Error(ErrorCode::kInvalidArgument,
                "enumeration threshold must lie in [0, " +
                    std::to_string(kMaxExactThreshold) + "]");
  }
  if (n > threshold) {
    throw Error(ErrorCode::kCapability,
                "exact enumeration over 2^" + std::to_string(n) +
                    " subsets exceeds threshold " + std::to_string(threshold) +
                    "; use the sampled variant");
  }
}

std::vector<int> MaskToSet(std::uint32_t mask) {
  std::vector<int> set;
  for (int a = 0; mask != 0; ++a, mask >>= 1) {
    if (mask & 1u) set.push_back(a);
  }
  return set;
}

}  // namespace

void ValidateProbabilities(std::span<const double> x, int n) {
  if (static_cast<int>(x.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "belief has " + std::to_string(x.size()) +
                    " entries, expected " + std::to_string(n));
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "probability outside [0, 1]: " + std::to_string(v));
    }
  }
}

bool IsFeasibleBelief(std::span<const double> x, const GroundSet& ground,
                      double tol) {
  if (static_cast<int>(x.size()) != ground.size()) return false;
  for (double v : x) {
    if (!(v >= -tol && v <= 1.0 + tol)) return false;
  }
  for (int i = 0; i < ground.num_agents(); ++i) {
    double sum = 0.0;
    for (int a : ground.block(i)) sum += x[a];
    if (sum > 1.0 + tol) return false;
  }
  return true;
}

std::vector<int> SampleRandomSet(std::span<const double> x, Rng& rng) {
  std::vector<int> set;
  for (int a = 0; a < static_cast<int>(x.size()); ++a) {
    if (UniformUnit(rng) < x[a]) set.push_back(a);
  }
  return set;
}

ExactExtension::ExactExtension(const SetFunction& f, int threshold)
    : n_(f.ground_size()) {
  CheckThreshold(n_, threshold);
  const std::uint32_t count = 1u << n_;
  table_.resize(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    table_[mask] = f.Value(MaskToSet(mask));
  }
}

std::vector<double> ExactExtension::SubsetProbabilities(
    std::span<const double> x) const {
  ValidateProbabilities(x, n_);
  std::vector<double> p(table_.size(), 0.0);
  p[0] = 1.0;
  for (int k = 0; k < n_; ++k) {
    const std::uint32_t half = 1u << k;
    for (std::uint32_t mask = 0; mask < half; ++mask) {
      p[mask | half] = p[mask] * x[k];
      p[mask] *= 1.0 - x[k];
    }
  }
  return p;
}

double ExactExtension::Value(std::span<const double> x) const {
  const std::vector<double> p = SubsetProbabilities(x);
  double total = 0.0;
  for (size_t mask = 0; mask < p.size(); ++mask)
    total += p[mask] * table_[mask];
  return total;
}

double ExactExtension::Partial(std::span<const double> x, int i) const {
  if (i < 0 || i >= n_) {
    throw Error(ErrorCode::kInvalidAction,
                "coordinate " + std::to_string(i) + " out of range");
  }
  std::vector<double> hi(x.begin(), x.end());
  std::vector<double> lo(x.begin(), x.end());
  hi[i] = 1.0;
  lo[i] = 0.0;
  return Value(hi) - Value(lo);
}

std::vector<double> ExactExtension::Gradient(std::span<const double> x) const {
  ValidateProbabilities(x, n_);
  std::vector<double> grad(n_, 0.0);
  for (int i = 0; i < n_; ++i) grad[i] = Partial(x, i);
  return grad;
}

double MultilinearExact(const SetFunction& f, std::span<const double> x,
                        int threshold) {
  return ExactExtension(f, threshold).Value(x);
}

double PartialDerivativeExact(const SetFunction& f, std::span<const double> x,
                              int i, int threshold) {
  return ExactExtension(f, threshold).Partial(x, i);
}

MonteCarloEstimate MultilinearMc(const SetFunction& f,
                                 std::span<const double> x, int samples,
                                 Rng& rng) {
  if (samples < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  }
  ValidateProbabilities(x, f.ground_size());
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (int s = 1; s <= samples; ++s) {
    const double v = f.Value(SampleRandomSet(x, rng));
    const double delta = v - mean;
    mean += delta / s;
    m2 += delta * (v - mean);
  }
  MonteCarloEstimate est;
  est.mean = mean;
  est.samples = samples;
  est.sample_std = samples > 1 ? std::sqrt(m2 / (samples - 1)) : 0.0;
  return est;
}

CurvatureResult Curvature(const SetFunction& f, const CurvatureOptions& options,
                          Rng* rng) {
  const int n = f.ground_size();
  CurvatureResult result;
  std::vector<double> singleton(n);
  for (int e = 0; e < n; ++e) {
    const int s[] = {e};
    singleton[e] = f.Value(s);
    if (singleton[e] <= 0.0) ++result.skipped_zero_singletons;
  }
  double min_ratio = std::numeric_limits<double>::infinity();

  if (n <= options.threshold) {
    const ExactExtension table(f, options.threshold);
    const std::uint32_t count = 1u << n;
    for (int e = 0; e < n; ++e) {
      if (singleton[e] <= 0.0) continue;
      const std::uint32_t bit = 1u << e;
      for (std::uint32_t mask = 0; mask < count; ++mask) {
        if (mask & bit) continue;
        const double gain = table.SetValue(mask | bit) - table.SetValue(mask);
        min_ratio = std::min(min_ratio, gain / singleton[e]);
        ++result.pairs_evaluated;
      }
    }
  } else {
    if (!options.sample_budget.has_value()) {
      throw Error(ErrorCode::kCapability,
                  "curvature of n=" + std::to_string(n) +
                      " exceeds the exact threshold and no sampling budget "
                      "was given");
    }
    if (rng == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sampled curvature needs a random stream");
    }
    result.exact = false;
    result.lower_bound = true;
    std::vector<int> eligible;
    for (int e = 0; e < n; ++e) {
      if (singleton[e] > 0.0) eligible.push_back(e);
    }
    const int budget = *options.sample_budget;
    for (int s = 0; s < budget && !eligible.empty(); ++s) {
      const int e =
          eligible[UniformIndex(*rng, static_cast<int>(eligible.size()))];
      const double density = UniformUnit(*rng);
      std::vector<int> set;
      for (int a = 0; a < n; ++a) {
        if (a != e && UniformUnit(*rng) < density) set.push_back(a);
      }
      const double base = f.Value(set);
      set.push_back(e);
      min_ratio = std::min(min_ratio, (f.Value(set) - base) / singleton[e]);
      ++result.pairs_evaluated;
    }
  }
  if (std::isfinite(min_ratio)) {
    result.value = std::clamp(1.0 - min_ratio, 0.0, 1.0);
  }
  return result;
}

}  // namespace masub
