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

// Curvature-weighted surrogate gradient of the multilinear extension:
//
//   grad F^s(x) = int_0^1 exp(c (z - 1)) grad F(z x) dz.
//
// A one-sample estimator draws z with density proportional to exp(c (z - 1))
// on [0, 1], then R ~ z x, and returns
//
//   ((1 - e^{-c}) / c) * (f(R + a) - f(R - a))   for each requested a.
//
// At c = 0 the weight is 1, z is uniform and the scale is 1 (the c -> 0
// limits), so modular objectives are handled continuously.

#ifndef MASUB_SURROGATE_H_
#define MASUB_SURROGATE_H_

#include <optional>
#include <span>
#include <vector>

#include "masub/common.h"
#include "masub/ground_set.h"
#include "masub/set_function.h"

namespace masub {

class SurrogateSampler {
 public:
  // Throws kInvalidArgument unless 0 <= c <= 1.
  explicit SurrogateSampler(double c);

  double curvature() const { return c_; }
  // (1 - e^{-c}) / c, or 1 at c = 0.
  double scale() const { return scale_; }
  // exp(c (z - 1)).
  double Weight(double z) const;
  // P(Z <= b) = (e^{c(b-1)} - e^{-c}) / (1 - e^{-c}); b clamped to [0, 1].
  double Cdf(double b) const;
  // Inverse CDF; u must lie in [0, 1].
  double Quantile(double u) const;
  double Sample(Rng& rng) const { return Quantile(UniformUnit(rng)); }

 private:
  double c_;
  double scale_;
};

struct GradientEstimate {
  // Coordinates actually estimated; entries elsewhere are absent.
  std::vector<int> coords;
  std::vector<double> values;
  // Set when the estimate is restricted to one agent's block.
  std::optional<int> agent;
  double z = 0.0;
  std::vector<int> random_set;
};

// Estimates the requested coordinates of grad F^s(x). Consumes one uniform
// for z, then one per ground-set element for R.
GradientEstimate EstimateSurrogateGradient(const SetFunction& f,
                                           std::span<const double> x, double c,
                                           std::span<const int> coords,
                                           Rng& rng);

// All coordinates.
GradientEstimate EstimateSurrogateGradient(const SetFunction& f,
                                           std::span<const double> x, double c,
                                           Rng& rng);

// Coordinates of agent `agent`'s block; the estimate carries the agent index.
GradientEstimate EstimateSurrogateGradientForAgent(const SetFunction& f,
                                                   std::span<const double> x,
                                                   double c,
                                                   const GroundSet& ground,
                                                   int agent, Rng& rng);

// Adaptive Simpson quadrature of the weighted gradient integral over exact
// partial derivatives; each coordinate is accurate to `quad_tol`.
std::vector<double> SurrogateGradientExact(
    const SetFunction& f, std::span<const double> x, double c,
    double quad_tol = 1e-8, int threshold = kDefaultExactThreshold);

struct SurrogateInequality {
  double lhs = 0.0;  // <y - x, grad F^s(x)>
  double rhs = 0.0;  // ((1 - e^{-c}) / c) F(y) - F(x)
  bool holds = false;
};

// Evaluates both sides with exact oracles; holds = lhs >= rhs - 1e-9.
SurrogateInequality CheckSurrogateInequality(
    const SetFunction& f, std::span<const double> x, std::span<const double> y,
    double c, int threshold = kDefaultExactThreshold);

}  // namespace masub

#endif  // MASUB_SURROGATE_H_
