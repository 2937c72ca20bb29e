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

// Multi-target tracking world.
//
// Agents move on an (angle, speed) grid; targets wander (Random), follow
// piecewise straight lines (Polyline) or run from nearby agents
// (Adversarial). Each round the targets move first, then the objective
//
//   f_t(A) = sum_j max_{a in A} 1 / max(d(p_a, o_j), d_floor)
//
// is revealed, where p_a is the position agent(a) would reach with action a.
// The agents then commit to their actions and move.

#ifndef MASUB_TRACKING_H_
#define MASUB_TRACKING_H_

#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "masub/common.h"
#include "masub/coordinator.h"
#include "masub/ground_set.h"
#include "masub/set_function.h"

namespace masub {

enum class TargetKind { kRandom, kAdversarial, kPolyline };

std::string_view TargetKindName(TargetKind kind);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double Distance(Vec2 a, Vec2 b);

struct TrackingParams {
  double dt = 0.1;         // seconds per round
  int horizon = 500;       // rounds; sets the Polyline schedule
  double radius = 20.0;    // initial placement disk
  double d_floor = 1e-3;   // distance floor inside 1 / d
  double min_speed = 5.0;  // Random motion speed range
  double max_speed = 10.0;
  double escape_speed = 15.0;
  double escape_range = 20.0;
  double escape_seconds = 1.0;
  int heading_grid = 360;  // candidate escape headings

  // Rounds an escape lasts: ceil(escape_seconds / dt).
  int EscapeRounds() const;
};

struct Target {
  TargetKind kind = TargetKind::kRandom;
  Vec2 pos;
  double heading = 0.0;  // current heading, radians
  double speed = 0.0;
  int polyline_k = 1;   // Polyline: redirections per horizon
  int escape_left = 0;  // Adversarial: rounds of escape remaining
};

// Eight headings k * pi / 4 (k = 1..8) times three speeds {5, 10, 15}.
// Agent i owns indices [24 i, 24 i + 24); within a block the index is
// angle_index * 3 + speed_index.
struct ActionGrid {
  static constexpr int kAngles = 8;
  static constexpr int kSpeeds = 3;
  static constexpr int kPerAgent = kAngles * kSpeeds;

  struct Action {
    int agent = 0;
    int angle_index = 0;
    int speed_index = 0;
  };

  static double Angle(int angle_index);
  static double Speed(int speed_index);
  static int Encode(int agent, int angle_index, int speed_index);
  static Action Decode(int index);
  static GroundSet Ground(int num_agents);
};

struct TrackingWorld {
  std::vector<Vec2> agents;
  std::vector<Target> targets;
  TrackingParams params;
  int t = 0;  // number of target steps taken
};

// Positions are uniform in the disk of params.radius around the origin.
TrackingWorld InitWorld(int num_agents, std::span<const TargetKind> kinds,
                        const TrackingParams& params, Rng& rng);

// Moves every target one round.
void StepTargets(TrackingWorld& world, Rng& rng);

// Where `agent` ends up after moving at `speed` along `angle` for dt.
Vec2 CandidatePosition(const TrackingWorld& world, double angle, double speed,
                       int agent);

// Heading in {2 pi k / grid} that maximizes the mean agent distance after a
// one-round escape move; ties go to the smallest k.
double EscapeHeading(const TrackingWorld& world, Vec2 from);

std::shared_ptr<FacilityLocation> TrackingObjective(const TrackingWorld& world);

// One ground-set index per agent, each in the agent's own block.
void ApplyActions(TrackingWorld& world, std::span<const int> actions);

struct TrackingMetrics {
  int within_5 = 0;            // targets with nearest agent within 5 units
  double top5_distance = 0.0;  // mean of the 5 smallest nearest-agent
                               // distances (all targets if fewer than 5)
};

TrackingMetrics ComputeTrackingMetrics(const TrackingWorld& world);

// Splits `count` targets by the ratio r:a:p. Adversarial and Polyline get
// floor(count * share); the remainder goes to Random. Order: Random,
// Adversarial, Polyline.
std::vector<TargetKind> TargetMix(int count, int r, int a, int p);

// Header and rows (t, entity_kind, id, x, y) of the world-trace CSV.
void WriteWorldTraceHeader(std::ostream& out);
void WriteWorldTrace(std::ostream& out, const TrackingWorld& world);

class TrackingEnvironment : public Environment {
 public:
  // Draws the initial layout from `rng`, which then drives target motion.
  TrackingEnvironment(int num_agents, std::span<const TargetKind> kinds,
                      const TrackingParams& params, Rng rng);

  const GroundSet& ground() const override { return ground_; }
  std::shared_ptr<const SetFunction> Reveal() override;
  void Commit(std::span<const int> actions) override;

  const TrackingWorld& world() const { return world_; }
  // Metrics after the last committed round.
  const TrackingMetrics& metrics() const { return metrics_; }
  // Snapshot rows are appended to `out` after every commit.
  void set_trace(std::ostream* out) { trace_ = out; }

 private:
  GroundSet ground_;
  TrackingWorld world_;
  Rng rng_;
  TrackingMetrics metrics_;
  std::ostream* trace_ = nullptr;
};

}  // namespace masub

#endif  // MASUB_TRACKING_H_
