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

#include "masub/mirror.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <vector>

#include "masub/common.h"

namespace masub {
namespace {

void CheckSameLength(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vectors of length " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
}

void CheckStep(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidArgument, "step size must be positive");
  }
}

}  // namespace

std::string_view GeometryName(Geometry geometry) {
  return geometry == Geometry::kEuclidean ? "euclidean" : "entropic";
}

double BregmanDivergence(Geometry geometry, std::span<const double> x,
                         std::span<const double> y) {
  CheckSameLength(x, y);
  double total = 0.0;
  if (geometry == Geometry::kEuclidean) {
    for (size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - y[i];
      total += 0.5 * d * d;
    }
    return total;
  }
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0 || y[i] < 0.0) {
      throw Error(ErrorCode::kDomain, "entropic divergence needs x, y >= 0");
    }
    if (x[i] > 0.0) {
      if (y[i] == 0.0) {
        throw Error(ErrorCode::kDomain,
                    "entropic divergence undefined for y_i = 0 < x_i");
      }
      total += x[i] * std::log(x[i] / y[i]);
    }
    total += y[i] - x[i];
  }
  return total;
}

std::vector<double> ProjectCappedSimplex(std::span<const double> v) {
  const size_t m = v.size();
  std::vector<double> b(m);
  double clipped_sum = 0.0;
  for (size_t i = 0; i < m; ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite projection input");
    }
    b[i] = std::clamp(v[i], 0.0, 1.0);
    clipped_sum += b[i];
  }
  if (clipped_sum <= 1.0) return b;

  // h(lambda) = sum clamp(v - lambda, 0, 1) is continuous, piecewise linear
  // and non-increasing, with kinks at v_i (enter) and v_i - 1 (saturate).
  // Sweep the kinks downward from h = 0 until h crosses 1.
  struct Kink {
    double at;
    int slope_change;  // +1 entering the free range, -1 saturating at 1
  };
  std::vector<Kink> kinks;
  kinks.reserve(2 * m);
  for (double x : v) {
    kinks.push_back({x, +1});
    kinks.push_back({x - 1.0, -1});
  }
  std::sort(kinks.begin(), kinks.end(),
            [](const Kink& a, const Kink& b) { return a.at > b.at; });
  double lambda = kinks.front().at;
  double h = 0.0;
  int slope = 0;  // number of free coordinates on the current segment
  for (const Kink& k : kinks) {
    const double next_h = h + slope * (lambda - k.at);
    if (next_h >= 1.0 && slope > 0) {
      lambda -= (1.0 - h) / slope;
      break;
    }
    h = next_h;
    lambda = k.at;
    slope += k.slope_change;
  }
  double sum = 0.0;
  for (size_t i = 0; i < m; ++i) {
    b[i] = std::clamp(v[i] - lambda, 0.0, 1.0);
    sum += b[i];
  }
  // Floating error can leave the sum a few ulps above 1.
  if (sum > 1.0) {
    for (double& x : b) x /= sum;
  }
  return b;
}

std::vector<double> EntropicUpdate(std::span<const double> y,
                                   std::span<const double> g, double eta) {
  CheckSameLength(y, g);
  CheckStep(eta);
  const size_t m = y.size();
  std::vector<double> log_u(m);
  double shift = -INFINITY;
  for (size_t i = 0; i < m; ++i) {
    if (!(y[i] > 0.0)) {
      throw Error(ErrorCode::kDomain, "entropic update needs y > 0");
    }
    log_u[i] = std::log(y[i]) + eta * g[i];
    shift = std::max(shift, log_u[i]);
  }
  std::vector<double> u(m);
  double shifted_sum = 0.0;
  for (size_t i = 0; i < m; ++i) {
    u[i] = std::exp(log_u[i] - shift);
    shifted_sum += u[i];
  }
  assert(shifted_sum > 0.0);
  const double log_total = shift + std::log(shifted_sum);
  if (log_total <= 0.0) {
    // sum u <= 1: return u itself.
    const double s = std::exp(shift);
    for (double& x : u) x *= s;
    // Guard the sum against rounding just above 1.
    double total = 0.0;
    for (double x : u) total += x;
    if (total > 1.0) {
      for (double& x : u) x /= total;
    }
    return u;
  }
  for (double& x : u) x /= shifted_sum;
  return u;
}

std::vector<double> MirrorUpdate(Geometry geometry, std::span<const double> y,
                                 std::span<const double> g, double eta) {
  CheckSameLength(y, g);
  CheckStep(eta);
  if (geometry == Geometry::kEntropic) return EntropicUpdate(y, g, eta);
  std::vector<double> v(y.size());
  for (size_t i = 0; i < y.size(); ++i) v[i] = y[i] + eta * g[i];
  return ProjectCappedSimplex(v);
}

}  // namespace masub
