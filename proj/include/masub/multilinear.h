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

// Multilinear extension F(x) = E_{R~x} f(R), its gradient, and curvature.
//
// The *Exact routines enumerate all 2^n subsets and refuse (kCapability) when
// n exceeds the enumeration threshold; the sampled routines work at any n.

#ifndef MASUB_MULTILINEAR_H_
#define MASUB_MULTILINEAR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "masub/common.h"
#include "masub/ground_set.h"
#include "masub/set_function.h"

namespace masub {

// Per-action inclusion probabilities, one entry per ground-set element.
using BeliefVector = std::vector<double>;

// Throws kDimensionMismatch / kInvalidArgument unless x has n entries in
// [0, 1].
void ValidateProbabilities(std::span<const double> x, int n);

// True when 0 <= x <= 1 and every agent block sums to at most 1 (+ tol).
bool IsFeasibleBelief(std::span<const double> x, const GroundSet& ground,
                      double tol = 1e-12);

// R ~ x: each element included independently with probability x[a]. Draws
// exactly one uniform per element, in index order.
std::vector<int> SampleRandomSet(std::span<const double> x, Rng& rng);

// Dense table of f over all 2^n subsets; bit a of the mask is element a.
class ExactExtension {
 public:
  explicit ExactExtension(const SetFunction& f,
                          int threshold = kDefaultExactThreshold);

  int size() const { return n_; }
  double SetValue(std::uint32_t mask) const { return table_[mask]; }

  double Value(std::span<const double> x) const;
  // F(x; x_i = 1) - F(x; x_i = 0).
  double Partial(std::span<const double> x, int i) const;
  std::vector<double> Gradient(std::span<const double> x) const;

 private:
  // P(R = mask) under independent inclusion.
  std::vector<double> SubsetProbabilities(std::span<const double> x) const;

  int n_;
  std::vector<double> table_;
};

double MultilinearExact(const SetFunction& f, std::span<const double> x,
                        int threshold = kDefaultExactThreshold);

double PartialDerivativeExact(const SetFunction& f, std::span<const double> x,
                              int i, int threshold = kDefaultExactThreshold);

struct MonteCarloEstimate {
  double mean = 0.0;
  double sample_std = 0.0;  // unbiased sample standard deviation of f(R)
  int samples = 0;
};

MonteCarloEstimate MultilinearMc(const SetFunction& f,
                                 std::span<const double> x, int samples,
                                 Rng& rng);

struct CurvatureOptions {
  int threshold = kDefaultExactThreshold;
  // Used only when n exceeds `threshold`; without it large instances fail
  // with kCapability.
  std::optional<int> sample_budget;
};

struct CurvatureResult {
  double value = 0.0;
  bool exact = true;
  // Sampled minima overestimate the minimal marginal ratio, so sampled
  // curvature can only be too small.
  bool lower_bound = false;
  std::int64_t pairs_evaluated = 0;
  int skipped_zero_singletons = 0;
};

// c = 1 - min_{S, e not in S} (f(S + e) - f(S)) / f({e}) over elements with
// f({e}) > 0. Returns 0 when every singleton is zero.
CurvatureResult Curvature(const SetFunction& f, const CurvatureOptions& options,
                          Rng* rng = nullptr);

}  // namespace masub

#endif  // MASUB_MULTILINEAR_H_
