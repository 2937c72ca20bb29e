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

#include "masub/surrogate.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "masub/ground_set.h"
#include "masub/multilinear.h"
#include "masub/set_function.h"
#include "masub/validation.h"
#include "test_util.h"

namespace masub {
namespace {

// Inverts the CDF (e^{c(b-1)} - e^{-c}) / (1 - e^{-c}) by bisection.
double BisectQuantile(double c, double u) {
  auto cdf = [c](double b) {
    return (std::exp(c * (b - 1.0)) - std::exp(-c)) / (1.0 - std::exp(-c));
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(SurrogateSamplerTest, MedianAtFullCurvature) {
  const SurrogateSampler s(1.0);
  EXPECT_NEAR(s.Quantile(0.5), BisectQuantile(1.0, 0.5), 1e-12);
  EXPECT_NEAR(s.Quantile(0.5), 0.6201, 5e-5);
}

TEST(SurrogateSamplerTest, QuantileInvertsCdf) {
  for (double c : {0.05, 0.3, 0.7, 1.0}) {
    const SurrogateSampler s(c);
    for (double u : {0.0, 0.01, 0.25, 0.5, 0.9, 1.0}) {
      EXPECT_NEAR(s.Quantile(u), BisectQuantile(c, u), 1e-12);
      EXPECT_NEAR(s.Cdf(s.Quantile(u)), u, 1e-12);
    }
  }
}

TEST(SurrogateSamplerTest, ZeroCurvatureIsUniform) {
  const SurrogateSampler s(0.0);
  EXPECT_DOUBLE_EQ(s.scale(), 1.0);
  EXPECT_DOUBLE_EQ(s.Quantile(0.3), 0.3);
  EXPECT_DOUBLE_EQ(s.Weight(0.2), 1.0);
}

TEST(SurrogateSamplerTest, ScaleAndRange) {
  EXPECT_NEAR(SurrogateSampler(1.0).scale(), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_ERROR_CODE(SurrogateSampler(1.5), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(SurrogateSampler(-0.1), ErrorCode::kInvalidArgument);
}

TEST(SurrogateSamplerTest, EmpiricalMean) {
  // E[Z] = (1 - (1 - e^{-c}) / c) / (1 - e^{-c}) ... compare with quadrature.
  const double c = 1.0;
  const SurrogateSampler s(c);
  double num = 0.0;
  double den = 0.0;
  const int k = 100000;
  for (int i = 0; i < k; ++i) {
    const double z = (i + 0.5) / k;
    num += z * std::exp(c * (z - 1.0));
    den += std::exp(c * (z - 1.0));
  }
  Rng rng = MakeStream(7, 1);
  double total = 0.0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) total += s.Sample(rng);
  EXPECT_NEAR(total / draws, num / den, 0.003);
}

TEST(SurrogateGradientTest, ModularAtZeroCurvatureIsWeights) {
  const ModularFunction f({1.0, 2.0, 3.0});
  const std::vector<double> g =
      SurrogateGradientExact(f, Vec{0.3, 0.6, 0.9}, 0.0);
  EXPECT_NEAR(g[0], 1.0, 1e-10);
  EXPECT_NEAR(g[1], 2.0, 1e-10);
  EXPECT_NEAR(g[2], 3.0, 1e-10);
}

TEST(SurrogateGradientTest, ExactMatchesGaussLegendre) {
  Rng rng = MakeStream(8, 1);
  for (int k = 0; k < 20; ++k) {
    const auto f = RandomMixedFamily(5, rng);
    std::vector<double> x(5);
    for (double& v : x) v = UniformUnit(rng);
    const double c = UniformUnit(rng);
    const std::vector<double> g = SurrogateGradientExact(*f, x, c, 1e-11);
    for (int a = 0; a < 5; ++a) {
      std::vector<double> e(5, 0.0);
      e[a] = 1.0;
      EXPECT_NEAR(g[a], SurrogateDirectional(*f, x, e, c), 1e-9);
    }
  }
}

TEST(SurrogateGradientTest, EstimatorOnOwnBlockOnly) {
  const int sizes[] = {2, 3};
  const GroundSet ground = GroundSet::FromBlockSizes(sizes);
  Rng rng = MakeStream(9, 1);
  const WeightedCoverage f = RandomCoverage(5, 6, rng);
  const std::vector<double> x = {0.2, 0.3, 0.1, 0.4, 0.2};
  const GradientEstimate est =
      EstimateSurrogateGradientForAgent(f, x, 1.0, ground, 1, rng);
  EXPECT_EQ(est.coords, (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(est.values.size(), 3u);
  ASSERT_TRUE(est.agent.has_value());
  EXPECT_EQ(*est.agent, 1);
  EXPECT_GE(est.z, 0.0);
  EXPECT_LE(est.z, 1.0);
}

TEST(SurrogateGradientTest, EstimateIsScaledMarginal) {
  // With x = 0 the random set is empty, so each entry is scale * f({a}).
  const ModularFunction f({1.0, 2.0});
  Rng rng = MakeStream(10, 1);
  const GradientEstimate est =
      EstimateSurrogateGradient(f, Vec{0.0, 0.0}, 1.0, rng);
  const double scale = 1.0 - std::exp(-1.0);
  EXPECT_NEAR(est.values[0], scale * 1.0, 1e-15);
  EXPECT_NEAR(est.values[1], scale * 2.0, 1e-15);
  EXPECT_TRUE(est.random_set.empty());
}

TEST(SurrogateGradientTest, EstimatorIsUnbiased) {
  const PropertyReport r = CheckEstimatorUnbiasedness(4, 40000, 21);
  EXPECT_TRUE(r.passed()) << r.detail;
}

TEST(SurrogateInequalityTest, HoldsOnRandomInstances) {
  const PropertyReport r = CheckSurrogateInequalityProperty(40, 22);
  EXPECT_TRUE(r.passed()) << r.detail;
}

TEST(SurrogateInequalityTest, ModularZeroCurvatureIsTight) {
  const ModularFunction f({1.0, 2.0});
  const SurrogateInequality s =
      CheckSurrogateInequality(f, Vec{0.2, 0.4}, Vec{0.9, 0.1}, 0.0);
  EXPECT_NEAR(s.lhs, s.rhs, 1e-9);
  EXPECT_TRUE(s.holds);
}

}  // namespace
}  // namespace masub
