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

// Randomized property suites with reference oracles that do not share code
// with the routines they check (Gauss-Legendre quadrature, naive subset
// sums, bisection-based constrained minimizers, KKT residuals).

#ifndef MASUB_VALIDATION_H_
#define MASUB_VALIDATION_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "masub/network.h"
#include "masub/set_function.h"

namespace masub {

struct PropertyReport {
  std::string name;
  int cases = 0;
  int failures = 0;
  double max_violation = 0.0;  // worst amount by which a check was missed
  double seconds = 0.0;
  std::string detail;

  bool passed() const { return cases > 0 && failures == 0; }
};

// --- Reference oracles -----------------------------------------------------

// sum_A f(A) prod x prod (1 - x), summed term by term.
double NaiveMultilinear(const SetFunction& f, std::span<const double> x);

// Nodes and weights of the k-point Gauss-Legendre rule on [-1, 1].
void GaussLegendre(int k, std::vector<double>& nodes,
                   std::vector<double>& weights);

// <d, grad F^s(x)> by composite Gauss-Legendre over z, with partials
// F(x; x_i = 1) - F(x; x_i = 0) from NaiveMultilinear.
double SurrogateDirectional(const SetFunction& f, std::span<const double> x,
                            std::span<const double> d, double c);

// argmin <z, b> + KL(b, y) over {b >= 0, sum b <= 1} by bisection on the
// multiplier of the sum constraint and, per coordinate, on log b.
std::vector<double> NumericEntropicMinimizer(std::span<const double> y,
                                             std::span<const double> z);

// Smallest violation of the KKT system of Euclidean projection onto the
// capped simplex by candidate b for input v, minimized over the multiplier.
double ProjectionKktResidual(std::span<const double> v,
                             std::span<const double> b);

// --- Property suites -------------------------------------------------------

PropertyReport CheckSetFunctionFamilies(int instances, std::uint64_t seed);
PropertyReport CheckMultilinearProperties(int instances, std::uint64_t seed);
PropertyReport CheckCurvatureRange(int instances, std::uint64_t seed);
PropertyReport CheckSurrogateInequalityProperty(int instances,
                                                std::uint64_t seed);
PropertyReport CheckEstimatorUnbiasedness(int instances, int draws,
                                          std::uint64_t seed);
PropertyReport CheckEntropicClosedForm(int instances, std::uint64_t seed);
PropertyReport CheckEuclideanProjection(int instances, std::uint64_t seed);
PropertyReport CheckRoundingProperty(int instances, std::uint64_t seed);
PropertyReport CheckWeightMatrices(int instances, std::uint64_t seed);

// Runs MA-OSMA and MA-OSEA with constant `eta` on a stationary instance over
// `network` and compares the post-update consensus error with
// 3 sqrt(N) G eta / (1 - beta) in every round. Also checks feasibility and,
// for MA-OSEA, the mixing floor of the aggregates.
PropertyReport CheckConsensusBound(const CommNetwork& network,
                                   const std::string& label, int horizon,
                                   double eta, std::uint64_t seed);

// All suites at the sizes used by the command-line validator.
std::vector<PropertyReport> RunTheorySuites(std::uint64_t seed);

}  // namespace masub

#endif  // MASUB_VALIDATION_H_
