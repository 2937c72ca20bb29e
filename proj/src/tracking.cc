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

#include "masub/tracking.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace masub {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 Move(Vec2 p, double heading, double length) {
  return {p.x + length * std::cos(heading), p.y + length * std::sin(heading)};
}

Vec2 UniformInDisk(double radius, Rng& rng) {
  const double r = radius * std::sqrt(UniformUnit(rng));
  const double phi = kTwoPi * UniformUnit(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

void RandomRedirect(Target& target, const TrackingParams& params, Rng& rng) {
  target.heading = kTwoPi * UniformUnit(rng);
  target.speed = params.min_speed +
                 (params.max_speed - params.min_speed) * UniformUnit(rng);
}

bool PolylineRedirects(int step, int k, int horizon) {
  for (int j = 0; j < k; ++j) {
    if (step == static_cast<int>(static_cast<long long>(j) * horizon / k)) {
      return true;
    }
  }
  return false;
}

bool AnyAgentWithin(const TrackingWorld& world, Vec2 p, double range) {
  for (const Vec2& a : world.agents) {
    if (Distance(a, p) <= range) return true;
  }
  return false;
}

}  // namespace

std::string_view TargetKindName(TargetKind kind) {
  switch (kind) {
    case TargetKind::kRandom:
      return "random";
    case TargetKind::kAdversarial:
      return "adversarial";
    case TargetKind::kPolyline:
      return "polyline";
  }
  return "unknown";
}

double Distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

int TrackingParams::EscapeRounds() const {
  // The small offset keeps e.g. 1 / 0.1 = 10.000000000000002 at 10.
  return static_cast<int>(std::ceil(escape_seconds / dt - 1e-9));
}

double ActionGrid::Angle(int angle_index) {
  return (angle_index + 1) * std::numbers::pi / 4.0;
}

double ActionGrid::Speed(int speed_index) { return 5.0 * (speed_index + 1); }

int ActionGrid::Encode(int agent, int angle_index, int speed_index) {
  if (angle_index < 0 || angle_index >= kAngles || speed_index < 0 ||
      speed_index >= kSpeeds || agent < 0) {
    throw Error(ErrorCode::kInvalidAction, "action grid index out of range");
  }
  return agent * kPerAgent + angle_index * kSpeeds + speed_index;
}

ActionGrid::Action ActionGrid::Decode(int index) {
  if (index < 0) throw Error(ErrorCode::kInvalidAction, "negative action");
  const int local = index % kPerAgent;
  return {index / kPerAgent, local / kSpeeds, local % kSpeeds};
}

GroundSet ActionGrid::Ground(int num_agents) {
  std::vector<int> sizes(num_agents, kPerAgent);
  return GroundSet::FromBlockSizes(sizes);
}

TrackingWorld InitWorld(int num_agents, std::span<const TargetKind> kinds,
                        const TrackingParams& params, Rng& rng) {
  if (num_agents < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one agent");
  }
  if (!(params.radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  }
  if (!(params.dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
  TrackingWorld world;
  world.params = params;
  for (int i = 0; i < num_agents; ++i) {
    world.agents.push_back(UniformInDisk(params.radius, rng));
  }
  for (TargetKind kind : kinds) {
    Target target;
    target.kind = kind;
    target.pos = UniformInDisk(params.radius, rng);
    RandomRedirect(target, params, rng);
    if (kind == TargetKind::kPolyline) {
      static constexpr int kChoices[] = {1, 2, 4};
      target.polyline_k = kChoices[UniformIndex(rng, 3)];
    }
    world.targets.push_back(target);
  }
  return world;
}

double EscapeHeading(const TrackingWorld& world, Vec2 from) {
  const TrackingParams& p = world.params;
  const double step = p.escape_speed * p.dt;
  double best_heading = 0.0;
  double best_mean = -INFINITY;
  for (int k = 0; k < p.heading_grid; ++k) {
    const double heading = kTwoPi * k / p.heading_grid;
    const Vec2 next = Move(from, heading, step);
    double total = 0.0;
    for (const Vec2& a : world.agents) total += Distance(a, next);
    const double mean = total / world.agents.size();
    if (mean > best_mean) {
      best_mean = mean;
      best_heading = heading;
    }
  }
  return best_heading;
}

void StepTargets(TrackingWorld& world, Rng& rng) {
  const TrackingParams& params = world.params;
  for (Target& target : world.targets) {
    switch (target.kind) {
      case TargetKind::kRandom:
        RandomRedirect(target, params, rng);
        break;
      case TargetKind::kPolyline:
        if (PolylineRedirects(world.t, target.polyline_k, params.horizon)) {
          RandomRedirect(target, params, rng);
        }
        break;
      case TargetKind::kAdversarial:
        if (target.escape_left == 0) {
          if (AnyAgentWithin(world, target.pos, params.escape_range)) {
            target.heading = EscapeHeading(world, target.pos);
            target.speed = params.escape_speed;
            target.escape_left = params.EscapeRounds();
          } else {
            RandomRedirect(target, params, rng);
          }
        }
        if (target.escape_left > 0) --target.escape_left;
        break;
    }
    target.pos = Move(target.pos, target.heading, target.speed * params.dt);
  }
  ++world.t;
}

Vec2 CandidatePosition(const TrackingWorld& world, double angle, double speed,
                       int agent) {
  if (agent < 0 || agent >= static_cast<int>(world.agents.size())) {
    throw Error(ErrorCode::kInvalidAction, "agent out of range");
  }
  return Move(world.agents[agent], angle, speed * world.params.dt);
}

std::shared_ptr<FacilityLocation> TrackingObjective(
    const TrackingWorld& world) {
  const int num_agents = static_cast<int>(world.agents.size());
  const int n = num_agents * ActionGrid::kPerAgent;
  const int m = static_cast<int>(world.targets.size());
  std::vector<Vec2> candidates(n);
  for (int a = 0; a < n; ++a) {
    const ActionGrid::Action act = ActionGrid::Decode(a);
    candidates[a] =
        CandidatePosition(world, ActionGrid::Angle(act.angle_index),
                          ActionGrid::Speed(act.speed_index), act.agent);
  }
  std::vector<double> benefits(static_cast<size_t>(m) * n);
  for (int j = 0; j < m; ++j) {
    for (int a = 0; a < n; ++a) {
      const double d = Distance(candidates[a], world.targets[j].pos);
      benefits[static_cast<size_t>(j) * n + a] =
          1.0 / std::max(d, world.params.d_floor);
    }
  }
  return std::make_shared<FacilityLocation>(m, n, std::move(benefits));
}

void ApplyActions(TrackingWorld& world, std::span<const int> actions) {
  const int num_agents = static_cast<int>(world.agents.size());
  if (static_cast<int>(actions.size()) != num_agents) {
    throw Error(ErrorCode::kDimensionMismatch, "one action per agent required");
  }
  std::vector<Vec2> next(num_agents);
  for (int i = 0; i < num_agents; ++i) {
    const ActionGrid::Action act = ActionGrid::Decode(actions[i]);
    if (act.agent != i) {
      throw Error(ErrorCode::kInvalidAction,
                  "action " + std::to_string(actions[i]) + " is not in agent " +
                      std::to_string(i) + "'s block");
    }
    next[i] = CandidatePosition(world, ActionGrid::Angle(act.angle_index),
                                ActionGrid::Speed(act.speed_index), i);
  }
  world.agents = std::move(next);
}

TrackingMetrics ComputeTrackingMetrics(const TrackingWorld& world) {
  TrackingMetrics metrics;
  std::vector<double> nearest;
  nearest.reserve(world.targets.size());
  for (const Target& target : world.targets) {
    double d = INFINITY;
    for (const Vec2& a : world.agents) d = std::min(d, Distance(a, target.pos));
    nearest.push_back(d);
    if (d <= 5.0) ++metrics.within_5;
  }
  if (nearest.empty()) return metrics;
  const size_t k = std::min<size_t>(5, nearest.size());
  std::partial_sort(nearest.begin(), nearest.begin() + k, nearest.end());
  double total = 0.0;
  for (size_t i = 0; i < k; ++i) total += nearest[i];
  metrics.top5_distance = total / k;
  return metrics;
}

std::vector<TargetKind> TargetMix(int count, int r, int a, int p) {
  if (count < 0 || r < 0 || a < 0 || p < 0 || r + a + p == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "target mix needs a non-negative count and a positive ratio");
  }
  const int total = r + a + p;
  const int num_adv =
      static_cast<int>(static_cast<long long>(count) * a / total);
  const int num_poly =
      static_cast<int>(static_cast<long long>(count) * p / total);
  std::vector<TargetKind> kinds(count - num_adv - num_poly,
                                TargetKind::kRandom);
  kinds.insert(kinds.end(), num_adv, TargetKind::kAdversarial);
  kinds.insert(kinds.end(), num_poly, TargetKind::kPolyline);
  return kinds;
}

void WriteWorldTraceHeader(std::ostream& out) {
  out << "t,entity_kind,id,x,y\n";
}

void WriteWorldTrace(std::ostream& out, const TrackingWorld& world) {
  const auto old_precision = out.precision(17);
  for (size_t i = 0; i < world.agents.size(); ++i) {
    out << world.t << ",agent," << i << ',' << world.agents[i].x << ','
        << world.agents[i].y << '\n';
  }
  for (size_t j = 0; j < world.targets.size(); ++j) {
    const Target& target = world.targets[j];
    out << world.t << ',' << TargetKindName(target.kind) << ',' << j << ','
        << target.pos.x << ',' << target.pos.y << '\n';
  }
  out.precision(old_precision);
}

TrackingEnvironment::TrackingEnvironment(int num_agents,
                                         std::span<const TargetKind> kinds,
                                         const TrackingParams& params, Rng rng)
    : ground_(ActionGrid::Ground(num_agents)), rng_(std::move(rng)) {
  world_ = InitWorld(num_agents, kinds, params, rng_);
  metrics_ = ComputeTrackingMetrics(world_);
}

std::shared_ptr<const SetFunction> TrackingEnvironment::Reveal() {
  StepTargets(world_, rng_);
  return TrackingObjective(world_);
}

void TrackingEnvironment::Commit(std::span<const int> actions) {
  ApplyActions(world_, actions);
  metrics_ = ComputeTrackingMetrics(world_);
  if (trace_ != nullptr) WriteWorldTrace(*trace_, world_);
}

}  // namespace masub
