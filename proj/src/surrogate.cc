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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "masub/multilinear.h"

namespace masub {
namespace {

using Vec = std::vector<double>;

Vec Combine(const Vec& a, double wa, const Vec& b, double wb) {
  Vec out(a.size());
  for (size_t k = 0; k < a.size(); ++k) out[k] = wa * a[k] + wb * b[k];
  return out;
}

double MaxAbsDiff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

// Vector-valued adaptive Simpson; the error test uses the max norm so every
// component meets `tol`.
template <typename F>
Vec SimpsonStep(const F& g, double a, double b, const Vec& fa, const Vec& fm,
                const Vec& fb, const Vec& whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Vec flm = g(lm);
  const Vec frm = g(rm);
  const double h = (b - a) / 12.0;
  Vec left(fa.size());
  Vec right(fa.size());
  for (size_t k = 0; k < fa.size(); ++k) {
    left[k] = h * (fa[k] + 4.0 * flm[k] + fm[k]);
    right[k] = h * (fm[k] + 4.0 * frm[k] + fb[k]);
  }
  Vec both = Combine(left, 1.0, right, 1.0);
  const double err = MaxAbsDiff(both, whole);
  if (depth <= 0 || err <= 15.0 * tol) {
    // Richardson correction.
    for (size_t k = 0; k < both.size(); ++k) {
      both[k] += (both[k] - whole[k]) / 15.0;
    }
    return both;
  }
  const Vec l = SimpsonStep(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
  const Vec r = SimpsonStep(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  return Combine(l, 1.0, r, 1.0);
}

template <typename F>
Vec AdaptiveSimpson(const F& g, double a, double b, double tol) {
  const Vec fa = g(a);
  const Vec fb = g(b);
  const Vec fm = g(0.5 * (a + b));
  Vec whole(fa.size());
  for (size_t k = 0; k < fa.size(); ++k) {
    whole[k] = (b - a) / 6.0 * (fa[k] + 4.0 * fm[k] + fb[k]);
  }
  return SimpsonStep(g, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

SurrogateSampler::SurrogateSampler(double c) : c_(c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "curvature must lie in [0, 1], got " + std::to_string(c));
  }
  scale_ = c == 0.0 ? 1.0 : -std::expm1(-c) / c;
}

double SurrogateSampler::Weight(double z) const {
  return std::exp(c_ * (z - 1.0));
}

double SurrogateSampler::Cdf(double b) const {
  b = std::clamp(b, 0.0, 1.0);
  if (c_ == 0.0) return b;
  return (std::expm1(c_ * (b - 1.0)) - std::expm1(-c_)) / -std::expm1(-c_);
}

double SurrogateSampler::Quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "quantile level outside [0, 1]");
  }
  if (c_ == 0.0) return u;
  // b = 1 + ln(e^{-c} + u (1 - e^{-c})) / c, written to keep precision at
  // small c.
  const double b = 1.0 + std::log1p(std::expm1(-c_) * (1.0 - u)) / c_;
  return std::clamp(b, 0.0, 1.0);
}

GradientEstimate EstimateSurrogateGradient(const SetFunction& f,
                                           std::span<const double> x, double c,
                                           std::span<const int> coords,
                                           Rng& rng) {
  const int n = f.ground_size();
  ValidateProbabilities(x, n);
  for (int a : coords) {
    if (a < 0 || a >= n) {
      throw Error(ErrorCode::kInvalidAction,
                  "coordinate " + std::to_string(a) + " out of range");
    }
  }
  const SurrogateSampler sampler(c);
  GradientEstimate est;
  est.z = sampler.Sample(rng);
  std::vector<double> scaled(x.begin(), x.end());
  for (double& v : scaled) v *= est.z;
  est.random_set = SampleRandomSet(scaled, rng);

  std::vector<char> in_set(n, 0);
  for (int a : est.random_set) in_set[a] = 1;
  // R without a given element, and R with it appended at the end.
  std::vector<int> scratch;
  scratch.reserve(est.random_set.size() + 1);
  est.coords.assign(coords.begin(), coords.end());
  est.values.reserve(coords.size());
  for (int a : coords) {
    scratch.clear();
    for (int r : est.random_set) {
      if (r != a) scratch.push_back(r);
    }
    const double without = f.Value(scratch);
    scratch.push_back(a);
    const double with = f.Value(scratch);
    est.values.push_back(sampler.scale() * (with - without));
  }
  return est;
}

GradientEstimate EstimateSurrogateGradient(const SetFunction& f,
                                           std::span<const double> x, double c,
                                           Rng& rng) {
  std::vector<int> all(f.ground_size());
  std::iota(all.begin(), all.end(), 0);
  return EstimateSurrogateGradient(f, x, c, all, rng);
}

GradientEstimate EstimateSurrogateGradientForAgent(const SetFunction& f,
                                                   std::span<const double> x,
                                                   double c,
                                                   const GroundSet& ground,
                                                   int agent, Rng& rng) {
  if (ground.size() != f.ground_size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "objective and ground set disagree on n");
  }
  GradientEstimate est =
      EstimateSurrogateGradient(f, x, c, ground.block(agent), rng);
  est.agent = agent;
  return est;
}

std::vector<double> SurrogateGradientExact(const SetFunction& f,
                                           std::span<const double> x, double c,
                                           double quad_tol, int threshold) {
  const ExactExtension ext(f, threshold);
  ValidateProbabilities(x, ext.size());
  if (!(quad_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadrature tolerance must be > 0");
  }
  const SurrogateSampler sampler(c);
  const std::vector<double> base(x.begin(), x.end());
  auto integrand = [&](double z) {
    std::vector<double> zx = base;
    for (double& v : zx) v *= z;
    std::vector<double> g = ext.Gradient(zx);
    const double w = sampler.Weight(z);
    for (double& v : g) v *= w;
    return g;
  };
  return AdaptiveSimpson(integrand, 0.0, 1.0, quad_tol);
}

SurrogateInequality CheckSurrogateInequality(const SetFunction& f,
                                             std::span<const double> x,
                                             std::span<const double> y,
                                             double c, int threshold) {
  const ExactExtension ext(f, threshold);
  ValidateProbabilities(y, ext.size());
  const std::vector<double> grad =
      SurrogateGradientExact(f, x, c, 1e-11, threshold);
  SurrogateInequality out;
  for (size_t a = 0; a < grad.size(); ++a) out.lhs += (y[a] - x[a]) * grad[a];
  out.rhs = SurrogateSampler(c).scale() * ext.Value(y) - ext.Value(x);
  out.holds = out.lhs >= out.rhs - 1e-9;
  return out;
}

}  // namespace masub
