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
// Set-function oracles
//
// A SetFunction maps a subset of {0, ..., n-1} to a non-negative value. The
// algorithms assume normalized, monotone, submodular oracles; the built-in
// families below satisfy this by construction and SpotCheckSetFunction
// samples the properties for arbitrary oracles.

#ifndef MASUB_SET_FUNCTION_H_
#define MASUB_SET_FUNCTION_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "masub/common.h"

namespace masub {

class SetFunction {
 public:
  virtual ~SetFunction() = default;

  virtual int ground_size() const = 0;

  // `set` holds distinct indices in [0, ground_size()), in any order.
  virtual double Value(std::span<const int> set) const = 0;

  // Short family label used in metadata.
  virtual std::string name() const = 0;

  // True when 2^n enumeration fits under `threshold`.
  bool ExactEnumerable(int threshold = kDefaultExactThreshold) const {
    return ground_size() <= threshold;
  }
};

// f(A + a) - f(A). Throws kInvalidAction on out-of-range indices.
double MarginalGain(const SetFunction& f, int action, std::span<const int> set);

// f(A) = sum of weights of A.
class ModularFunction final : public SetFunction {
 public:
  explicit ModularFunction(std::vector<double> weights);

  int ground_size() const override { return static_cast<int>(weights_.size()); }
  double Value(std::span<const int> set) const override;
  std::string name() const override { return "modular"; }

  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// f(A) = total weight of the items covered by at least one element of A.
class WeightedCoverage final : public SetFunction {
 public:
  // covers[e] lists the item indices covered by element e.
  WeightedCoverage(std::vector<double> item_weights,
                   std::vector<std::vector<int>> covers);

  int ground_size() const override { return static_cast<int>(covers_.size()); }
  double Value(std::span<const int> set) const override;
  std::string name() const override { return "coverage"; }

 private:
  std::vector<double> item_weights_;
  std::vector<std::vector<int>> covers_;
};

// f(A) = sum over customers j of max_{e in A} benefit(j, e); empty max is 0.
// The tracking objective has this shape with benefit = inverse distance.
class FacilityLocation final : public SetFunction {
 public:
  // Row-major benefits: benefits[j * num_elements + e] >= 0.
  FacilityLocation(int num_customers, int num_elements,
                   std::vector<double> benefits);

  int ground_size() const override { return num_elements_; }
  double Value(std::span<const int> set) const override;
  std::string name() const override { return "facility-location"; }

  int num_customers() const { return num_customers_; }
  double benefit(int customer, int element) const {
    return benefits_[static_cast<size_t>(customer) * num_elements_ + element];
  }

 private:
  int num_customers_;
  int num_elements_;
  std::vector<double> benefits_;
};

// Random instances of the three families. Values are scaled so the largest
// singleton is O(1).
ModularFunction RandomModular(int n, Rng& rng);
WeightedCoverage RandomCoverage(int n, int num_items, Rng& rng);
FacilityLocation RandomFacilityLocation(int n, int num_customers, Rng& rng);

// Picks one of the three families uniformly.
std::unique_ptr<SetFunction> RandomMixedFamily(int n, Rng& rng);

// max_a f({a}).
double MaxSingletonValue(const SetFunction& f);

struct SpotCheckReport {
  int samples = 0;
  int normalization_violations = 0;
  int monotonicity_violations = 0;
  int submodularity_violations = 0;
  double worst_violation = 0.0;

  bool ok() const {
    return normalization_violations + monotonicity_violations +
               submodularity_violations ==
           0;
  }
};

// Samples random chains A subset B and elements e not in B and checks
// f(empty) = 0, f(A) <= f(B), and diminishing returns, all up to `tol`.
SpotCheckReport SpotCheckSetFunction(const SetFunction& f, int samples,
                                     Rng& rng, double tol = 1e-12);

}  // namespace masub

#endif  // MASUB_SET_FUNCTION_H_
