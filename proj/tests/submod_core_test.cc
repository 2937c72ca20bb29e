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

// Items u = 0, v = 1 with weight 1 each; element 0 covers {u}, element 1
// covers {v}, element 2 covers {u, v}.
WeightedCoverage SmallCoverage() {
  return WeightedCoverage({1.0, 1.0}, {{0}, {1}, {0, 1}});
}

// min(|A|, 1).
WeightedCoverage UnitCap(int n) {
  return WeightedCoverage({1.0}, std::vector<std::vector<int>>(n, {0}));
}

TEST(GroundSetTest, BlocksPartitionTheActions) {
  const int sizes[] = {2, 1, 3};
  const GroundSet g = GroundSet::FromBlockSizes(sizes);
  EXPECT_EQ(g.size(), 6);
  EXPECT_EQ(g.num_agents(), 3);
  EXPECT_EQ(std::vector<int>(g.block(2).begin(), g.block(2).end()),
            (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(g.owner(2), 1);
  EXPECT_ERROR_CODE(g.owner(6), ErrorCode::kInvalidAction);
}

TEST(GroundSetTest, FromOwnersRejectsEmptyBlocks) {
  const int owners[] = {0, 0, 2};
  EXPECT_ERROR_CODE(GroundSet::FromOwners(owners, 3),
                    ErrorCode::kInvalidArgument);
  const int zero[] = {2, 0};
  EXPECT_ERROR_CODE(GroundSet::FromBlockSizes(zero),
                    ErrorCode::kInvalidArgument);
}

TEST(GroundSetTest, ValidateSetCatchesDuplicatesAndRange) {
  const int sizes[] = {2, 2};
  const GroundSet g = GroundSet::FromBlockSizes(sizes);
  const int dup[] = {1, 1};
  const int out[] = {4};
  EXPECT_ERROR_CODE(g.ValidateSet(dup), ErrorCode::kInvalidAction);
  EXPECT_ERROR_CODE(g.ValidateSet(out), ErrorCode::kInvalidAction);
}

TEST(MarginalGainTest, ModularIsAdditive) {
  const ModularFunction f({1.0, 2.0, 3.0});
  const int a[] = {0};
  EXPECT_DOUBLE_EQ(MarginalGain(f, 2, a), 3.0);
}

TEST(MarginalGainTest, MemberHasZeroGain) {
  const ModularFunction f({1.0, 2.0, 3.0});
  const int a[] = {0, 2};
  EXPECT_DOUBLE_EQ(MarginalGain(f, 2, a), 0.0);
}

TEST(MarginalGainTest, CoveredElementHasZeroGain) {
  const WeightedCoverage f = SmallCoverage();
  const int a[] = {0, 1};
  EXPECT_DOUBLE_EQ(MarginalGain(f, 2, a), 0.0);
}

TEST(MarginalGainTest, OutOfRangeActionThrows) {
  const ModularFunction f({1.0, 2.0});
  EXPECT_ERROR_CODE(MarginalGain(f, 5, {}), ErrorCode::kInvalidAction);
}

TEST(CurvatureTest, ModularIsZero) {
  const ModularFunction f({1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(Curvature(f, {}).value, 0.0);
}

TEST(CurvatureTest, UnitCapIsOne) {
  EXPECT_DOUBLE_EQ(Curvature(UnitCap(2), {}).value, 1.0);
}

TEST(CurvatureTest, CoverageIsOne) {
  const CurvatureResult r = Curvature(SmallCoverage(), {});
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_TRUE(r.exact);
  EXPECT_FALSE(r.lower_bound);
}

TEST(CurvatureTest, ZeroSingletonsAreSkipped) {
  const ModularFunction f({0.0, 2.0});
  const CurvatureResult r = Curvature(f, {});
  EXPECT_DOUBLE_EQ(r.value, 0.0);
  EXPECT_EQ(r.skipped_zero_singletons, 1);
}

TEST(CurvatureTest, LargeInstanceNeedsBudget) {
  Rng rng = MakeStream(1, 1);
  const WeightedCoverage f = RandomCoverage(14, 10, rng);
  EXPECT_ERROR_CODE(Curvature(f, {}), ErrorCode::kCapability);
  CurvatureOptions options;
  options.sample_budget = 500;
  const CurvatureResult r = Curvature(f, options, &rng);
  EXPECT_FALSE(r.exact);
  EXPECT_TRUE(r.lower_bound);
  EXPECT_GE(r.value, 0.0);
  EXPECT_LE(r.value, 1.0);
}

TEST(MultilinearTest, ZeroVectorGivesZero) {
  const WeightedCoverage f = SmallCoverage();
  EXPECT_DOUBLE_EQ(MultilinearExact(f, std::vector<double>(3, 0.0)), 0.0);
}

TEST(MultilinearTest, IndicatorGivesSetValue) {
  const WeightedCoverage f = SmallCoverage();
  const std::vector<double> x = {1.0, 0.0, 1.0};
  const int set[] = {0, 2};
  EXPECT_DOUBLE_EQ(MultilinearExact(f, x), f.Value(set));
}

TEST(MultilinearTest, CoverageAtOneHalf) {
  const WeightedCoverage f = SmallCoverage();
  const std::vector<double> x(3, 0.5);
  // P(u covered) + P(v covered) = 0.75 + 0.75.
  EXPECT_NEAR(MultilinearExact(f, x), 1.5, 1e-15);
  EXPECT_NEAR(NaiveMultilinear(f, x), 1.5, 1e-15);
}

TEST(MultilinearTest, TooLargeForExact) {
  const ModularFunction f(std::vector<double>(13, 1.0));
  EXPECT_ERROR_CODE(MultilinearExact(f, std::vector<double>(13, 0.5)),
                    ErrorCode::kCapability);
}

TEST(MultilinearTest, MonteCarloIndicatorIsExact) {
  const WeightedCoverage f = SmallCoverage();
  Rng rng = MakeStream(2, 1);
  const std::vector<double> x = {0.0, 1.0, 1.0};
  const MonteCarloEstimate mc = MultilinearMc(f, x, 17, rng);
  EXPECT_DOUBLE_EQ(mc.mean, 2.0);
  EXPECT_DOUBLE_EQ(mc.sample_std, 0.0);
  EXPECT_DOUBLE_EQ(MultilinearMc(f, std::vector<double>(3, 0.0), 5, rng).mean,
                   0.0);
}

TEST(MultilinearTest, MonteCarloConcentrates) {
  const WeightedCoverage f = SmallCoverage();
  Rng rng = MakeStream(3, 1);
  const int m = 200000;
  const MonteCarloEstimate mc =
      MultilinearMc(f, std::vector<double>(3, 0.5), m, rng);
  EXPECT_NEAR(mc.mean, 1.5, 3.0 * mc.sample_std / std::sqrt(m));
}

TEST(MultilinearTest, MonteCarloNeedsSamples) {
  const WeightedCoverage f = SmallCoverage();
  Rng rng = MakeStream(3, 1);
  EXPECT_ERROR_CODE(MultilinearMc(f, std::vector<double>(3, 0.5), 0, rng),
                    ErrorCode::kInvalidArgument);
}

TEST(SampleRandomSetTest, Extremes) {
  Rng rng = MakeStream(4, 1);
  EXPECT_EQ(SampleRandomSet(std::vector<double>(4, 1.0), rng),
            (std::vector<int>{0, 1, 2, 3}));
  EXPECT_TRUE(SampleRandomSet(std::vector<double>(4, 0.0), rng).empty());
}

TEST(SampleRandomSetTest, InclusionFrequency) {
  Rng rng = MakeStream(5, 1);
  const std::vector<double> x = {0.3};
  int hits = 0;
  for (int k = 0; k < 100000; ++k) hits += !SampleRandomSet(x, rng).empty();
  EXPECT_NEAR(hits / 100000.0, 0.3, 0.01);
}

TEST(PartialDerivativeTest, ModularIsWeight) {
  const ModularFunction f({1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(PartialDerivativeExact(f, Vec{0.2, 0.9, 0.4}, 1), 2.0);
}

TEST(PartialDerivativeTest, AtZeroIsSingleton) {
  const WeightedCoverage f = SmallCoverage();
  const std::vector<double> zero(3, 0.0);
  for (int i = 0; i < 3; ++i) {
    const int s[] = {i};
    EXPECT_DOUBLE_EQ(PartialDerivativeExact(f, zero, i), f.Value(s));
  }
}

TEST(PartialDerivativeTest, CoverageAtOneHalf) {
  const WeightedCoverage f = SmallCoverage();
  // Element 2 adds u when 0 is absent and v when 1 is absent:
  // P(0 absent) + P(1 absent).
  const std::vector<double> x(3, 0.5);
  double brute = 0.0;
  for (int mask = 0; mask < 4; ++mask) {
    std::vector<int> r;
    if (mask & 1) r.push_back(0);
    if (mask & 2) r.push_back(1);
    std::vector<int> with = r;
    with.push_back(2);
    brute += 0.25 * (f.Value(with) - f.Value(r));
  }
  EXPECT_NEAR(brute, 1.0, 1e-15);
  EXPECT_NEAR(PartialDerivativeExact(f, x, 2), brute, 1e-15);
}

TEST(SetFunctionTest, FamiliesPassSpotChecks) {
  const PropertyReport r = CheckSetFunctionFamilies(60, 11);
  EXPECT_TRUE(r.passed()) << r.failures;
}

TEST(SetFunctionTest, ExtensionProperties) {
  const PropertyReport r = CheckMultilinearProperties(60, 12);
  EXPECT_TRUE(r.passed()) << r.failures << " worst " << r.max_violation;
}

TEST(SetFunctionTest, CurvatureProperties) {
  const PropertyReport r = CheckCurvatureRange(60, 13);
  EXPECT_TRUE(r.passed()) << r.failures;
}

TEST(SetFunctionTest, FacilityLocationTakesBestElementPerCustomer) {
  // Two customers, three elements.
  const FacilityLocation f(2, 3, {1.0, 0.5, 0.0, 0.0, 0.25, 2.0});
  const int a[] = {0, 1};
  EXPECT_DOUBLE_EQ(f.Value(a), 1.0 + 0.25);
  EXPECT_DOUBLE_EQ(f.Value({}), 0.0);
  EXPECT_DOUBLE_EQ(MaxSingletonValue(f), 2.0);
}

}  // namespace
}  // namespace masub
