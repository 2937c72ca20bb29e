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

// Per-block mirror ascent steps over the capped simplex
// {b in [0,1]^m : sum b <= 1}.

#ifndef MASUB_MIRROR_H_
#define MASUB_MIRROR_H_

#include <span>
#include <string_view>
#include <vector>

namespace masub {

// Separable Bregman geometries: generator x^2 / 2 or x ln x per coordinate.
enum class Geometry { kEuclidean, kEntropic };

std::string_view GeometryName(Geometry geometry);

// Euclidean: 0.5 * ||x - y||^2.
// Entropic: sum x ln(x / y) - sum x + sum y with 0 ln 0 = 0; throws kDomain
// when some y_i = 0 < x_i.
double BregmanDivergence(Geometry geometry, std::span<const double> x,
                         std::span<const double> y);

// argmin_b 0.5 ||b - v||^2 over the capped simplex. Clips to [0, 1]; if the
// clipped sum exceeds 1, solves sum clamp(v - lambda, 0, 1) = 1 for lambda by
// a sweep over the sorted breakpoints.
std::vector<double> ProjectCappedSimplex(std::span<const double> v);

// Closed-form KL step: u = y exp(eta g); returns u if sum u <= 1, else
// u / sum u. y must be strictly positive.
std::vector<double> EntropicUpdate(std::span<const double> y,
                                   std::span<const double> g, double eta);

// argmin_b -<g, b> + D(b, y) / eta over the capped simplex.
std::vector<double> MirrorUpdate(Geometry geometry, std::span<const double> y,
                                 std::span<const double> g, double eta);

}  // namespace masub

#endif  // MASUB_MIRROR_H_
