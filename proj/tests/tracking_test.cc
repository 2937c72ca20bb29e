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
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace masub {
namespace {

constexpr double kPi = std::numbers::pi;

TrackingWorld EmptyWorld(int num_agents, double dt = 0.1) {
  TrackingWorld world;
  world.params.dt = dt;
  world.agents.assign(num_agents, Vec2{});
  return world;
}

Target MakeTarget(TargetKind kind, Vec2 pos) {
  Target t;
  t.kind = kind;
  t.pos = pos;
  return t;
}

TEST(InitWorldTest, InsideRadius) {
  Rng rng = MakeStream(1, 1);
  const std::vector<TargetKind> kinds = TargetMix(30, 8, 1, 1);
  const TrackingWorld w = InitWorld(20, kinds, TrackingParams{}, rng);
  ASSERT_EQ(w.agents.size(), 20u);
  ASSERT_EQ(w.targets.size(), 30u);
  for (const Vec2& a : w.agents) EXPECT_LE(std::hypot(a.x, a.y), 20.0);
  for (const Target& t : w.targets) {
    EXPECT_LE(std::hypot(t.pos.x, t.pos.y), 20.0);
    if (t.kind == TargetKind::kPolyline) {
      EXPECT_TRUE(t.polyline_k == 1 || t.polyline_k == 2 || t.polyline_k == 4);
    }
  }
}

TEST(InitWorldTest, ZeroTargets) {
  Rng rng = MakeStream(1, 2);
  const TrackingWorld w = InitWorld(3, {}, TrackingParams{}, rng);
  EXPECT_TRUE(w.targets.empty());
  const auto f = TrackingObjective(w);
  EXPECT_EQ(f->Value(std::vector{0, 30, 60}), 0.0);
}

TEST(InitWorldTest, SeededLayout) {
  const std::vector<TargetKind> kinds = TargetMix(10, 8, 1, 1);
  Rng a = MakeStream(7, 1);
  Rng b = MakeStream(7, 1);
  const TrackingWorld w1 = InitWorld(4, kinds, TrackingParams{}, a);
  const TrackingWorld w2 = InitWorld(4, kinds, TrackingParams{}, b);
  for (size_t j = 0; j < w1.targets.size(); ++j) {
    EXPECT_EQ(w1.targets[j].pos.x, w2.targets[j].pos.x);
    EXPECT_EQ(w1.targets[j].pos.y, w2.targets[j].pos.y);
  }
}

TEST(InitWorldTest, RejectsBadRadius) {
  Rng rng = MakeStream(1, 3);
  TrackingParams p;
  p.radius = 0.0;
  EXPECT_ERROR_CODE(InitWorld(1, {}, p, rng), ErrorCode::kInvalidArgument);
}

TEST(StepTargetsTest, RandomDisplacementRange) {
  TrackingWorld w = EmptyWorld(1);
  w.targets.assign(50, MakeTarget(TargetKind::kRandom, {3.0, 4.0}));
  Rng rng = MakeStream(2, 1);
  for (int step = 0; step < 20; ++step) {
    const TrackingWorld before = w;
    StepTargets(w, rng);
    for (size_t j = 0; j < w.targets.size(); ++j) {
      const double d = Distance(before.targets[j].pos, w.targets[j].pos);
      EXPECT_GE(d, 5.0 * 0.1 - 1e-12);
      EXPECT_LE(d, 10.0 * 0.1 + 1e-12);
    }
  }
  EXPECT_EQ(w.t, 20);
}

TEST(StepTargetsTest, FarAdversaryActsRandom) {
  TrackingWorld w = EmptyWorld(2);
  w.agents = {{100.0, 0.0}, {-100.0, 0.0}};
  w.targets.assign(10, MakeTarget(TargetKind::kAdversarial, {0.0, 0.0}));
  Rng rng = MakeStream(2, 2);
  StepTargets(w, rng);
  for (const Target& t : w.targets) {
    EXPECT_EQ(t.escape_left, 0);
    EXPECT_GE(t.speed, 5.0);
    EXPECT_LE(t.speed, 10.0);
  }
}

TEST(StepTargetsTest, NearAdversaryEscapes) {
  TrackingWorld w = EmptyWorld(2);
  w.agents = {{10.0, 0.0}, {30.0, 5.0}};
  w.targets = {MakeTarget(TargetKind::kAdversarial, {0.0, 0.0})};
  // Oracle: scan the 360 headings for the largest mean post-move distance.
  const double step = 15.0 * 0.1;
  double best_heading = 0.0;
  double best = -1.0;
  for (int k = 0; k < 360; ++k) {
    const double h = 2.0 * kPi * k / 360;
    const Vec2 p{step * std::cos(h), step * std::sin(h)};
    const double mean =
        0.5 * (Distance(p, w.agents[0]) + Distance(p, w.agents[1]));
    if (mean > best) {
      best = mean;
      best_heading = h;
    }
  }
  EXPECT_DOUBLE_EQ(EscapeHeading(w, {0.0, 0.0}), best_heading);

  Rng rng = MakeStream(2, 3);
  StepTargets(w, rng);
  const Target& t = w.targets[0];
  EXPECT_DOUBLE_EQ(t.heading, best_heading);
  EXPECT_DOUBLE_EQ(t.speed, 15.0);
  EXPECT_NEAR(std::hypot(t.pos.x, t.pos.y), step, 1e-12);
  EXPECT_EQ(w.params.EscapeRounds(), 10);
  EXPECT_EQ(t.escape_left, 9);
}

TEST(StepTargetsTest, EscapeLastsCeilOneOverDtRounds) {
  for (double dt : {0.1, 0.02, 0.3}) {
    TrackingWorld w = EmptyWorld(1, dt);
    w.agents = {{5.0, 0.0}};
    w.targets = {MakeTarget(TargetKind::kAdversarial, {0.0, 0.0})};
    Rng rng = MakeStream(2, 4);
    StepTargets(w, rng);
    const double heading = w.targets[0].heading;
    int escape_steps = 1;
    // Push the agent far away; the target keeps escaping until the timer
    // runs out and only then turns Random.
    w.agents = {{1000.0, 0.0}};
    while (true) {
      StepTargets(w, rng);
      if (w.targets[0].heading != heading || w.targets[0].speed != 15.0) break;
      ++escape_steps;
      ASSERT_LT(escape_steps, 1000);
    }
    EXPECT_EQ(escape_steps, static_cast<int>(std::ceil(1.0 / dt - 1e-9)))
        << "dt=" << dt;
  }
}

TEST(StepTargetsTest, PolylineRedirectSchedule) {
  TrackingWorld w = EmptyWorld(1);
  w.params.horizon = 12;
  for (int k : {1, 2, 4}) {
    Target t = MakeTarget(TargetKind::kPolyline, {0.0, 0.0});
    t.polyline_k = k;
    t.heading = 0.5;
    t.speed = 7.0;
    w.targets.push_back(t);
  }
  Rng rng = MakeStream(2, 5);
  std::vector<std::vector<int>> changes(3);
  for (int step = 0; step < 12; ++step) {
    std::vector<double> before;
    for (const Target& t : w.targets) before.push_back(t.heading);
    StepTargets(w, rng);
    for (int j = 0; j < 3; ++j) {
      if (w.targets[j].heading != before[j]) changes[j].push_back(step);
    }
  }
  EXPECT_EQ(changes[0], (std::vector<int>{0}));
  EXPECT_EQ(changes[1], (std::vector<int>{0, 6}));
  EXPECT_EQ(changes[2], (std::vector<int>{0, 3, 6, 9}));
}

TEST(CandidatePositionTest, Examples) {
  TrackingWorld w = EmptyWorld(1, 0.02);
  const Vec2 up = CandidatePosition(w, kPi / 2, 5.0, 0);
  EXPECT_NEAR(up.x, 0.0, 1e-15);
  EXPECT_NEAR(up.y, 0.1, 1e-15);
  const Vec2 full = CandidatePosition(w, 2 * kPi, 5.0, 0);
  EXPECT_NEAR(full.x, 0.1, 1e-15);
  EXPECT_NEAR(full.y, 0.0, 1e-15);
  const Vec2 fast = CandidatePosition(w, kPi / 4, 15.0, 0);
  EXPECT_NEAR(std::hypot(fast.x, fast.y), 0.3, 1e-15);
  EXPECT_ERROR_CODE(CandidatePosition(w, 0.0, 5.0, 1),
                    ErrorCode::kInvalidAction);
}

TEST(ActionGridTest, EncodeDecode) {
  EXPECT_EQ(ActionGrid::Encode(2, 7, 1), 2 * 24 + 7 * 3 + 1);
  const ActionGrid::Action a = ActionGrid::Decode(70);
  EXPECT_EQ(a.agent, 2);
  EXPECT_EQ(a.angle_index, 7);
  EXPECT_EQ(a.speed_index, 1);
  EXPECT_DOUBLE_EQ(ActionGrid::Angle(0), kPi / 4);
  EXPECT_DOUBLE_EQ(ActionGrid::Angle(7), 2 * kPi);
  EXPECT_DOUBLE_EQ(ActionGrid::Speed(2), 15.0);
  EXPECT_EQ(ActionGrid::Ground(3).size(), 72);
  EXPECT_ERROR_CODE(ActionGrid::Encode(0, 8, 0), ErrorCode::kInvalidAction);
}

TEST(TrackingObjectiveTest, SingleTargetDistances) {
  TrackingWorld w = EmptyWorld(2, 0.1);
  // Speed 5 along angle index 7 (heading 0) moves an agent by 0.5.
  w.agents = {{-2.5, 0.0}, {-4.5, 0.0}};
  w.targets = {MakeTarget(TargetKind::kRandom, {0.0, 0.0})};
  const auto f = TrackingObjective(w);
  const int a0 = ActionGrid::Encode(0, 7, 0);
  const int a1 = ActionGrid::Encode(1, 7, 0);
  EXPECT_NEAR(f->Value(std::vector{a0}), 0.5, 1e-15);
  EXPECT_NEAR(f->Value(std::vector{a1}), 0.25, 1e-15);
  EXPECT_NEAR(f->Value(std::vector{a0, a1}), 0.5, 1e-15);
  EXPECT_EQ(f->Value(std::vector<int>{}), 0.0);
}

TEST(TrackingObjectiveTest, DistanceFloor) {
  TrackingWorld w = EmptyWorld(1, 0.1);
  w.agents = {{-0.5, 0.0}};
  w.targets = {MakeTarget(TargetKind::kRandom, {0.0, 0.0})};
  const auto f = TrackingObjective(w);
  EXPECT_NEAR(f->Value(std::vector{ActionGrid::Encode(0, 7, 0)}), 1e3, 1e-6);
}

TEST(TrackingObjectiveTest, SubmodularOnRandomWorlds) {
  Rng rng = MakeStream(3, 1);
  const std::vector<TargetKind> kinds = TargetMix(8, 8, 1, 1);
  for (int k = 0; k < 5; ++k) {
    const TrackingWorld w = InitWorld(3, kinds, TrackingParams{}, rng);
    const auto f = TrackingObjective(w);
    const SpotCheckReport r = SpotCheckSetFunction(*f, 200, rng);
    EXPECT_TRUE(r.ok());
  }
}

TEST(ApplyActionsTest, UniformShiftAndRoundTrip) {
  Rng rng = MakeStream(4, 1);
  TrackingWorld w = InitWorld(3, {}, TrackingParams{}, rng);
  const TrackingWorld start = w;
  // Angle index 1 is pi / 2; index 5 is 3 pi / 2.
  ApplyActions(
      w, std::vector{ActionGrid::Encode(0, 1, 0), ActionGrid::Encode(1, 1, 0),
                     ActionGrid::Encode(2, 1, 0)});
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(w.agents[i].x, start.agents[i].x, 1e-12);
    EXPECT_NEAR(w.agents[i].y, start.agents[i].y + 0.5, 1e-12);
  }
  ApplyActions(
      w, std::vector{ActionGrid::Encode(0, 5, 0), ActionGrid::Encode(1, 5, 0),
                     ActionGrid::Encode(2, 5, 0)});
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(w.agents[i].x, start.agents[i].x, 1e-12);
    EXPECT_NEAR(w.agents[i].y, start.agents[i].y, 1e-12);
  }
}

TEST(ApplyActionsTest, RejectsForeignAction) {
  TrackingWorld w = EmptyWorld(2);
  EXPECT_ERROR_CODE(ApplyActions(w, std::vector{0, 1}),
                    ErrorCode::kInvalidAction);
  EXPECT_ERROR_CODE(ApplyActions(w, std::vector{0}),
                    ErrorCode::kDimensionMismatch);
}

TEST(MetricsTest, Examples) {
  TrackingWorld w = EmptyWorld(1);
  for (int d = 1; d <= 6; ++d) {
    w.targets.push_back(MakeTarget(TargetKind::kRandom, {double(d), 0.0}));
  }
  TrackingMetrics m = ComputeTrackingMetrics(w);
  EXPECT_EQ(m.within_5, 5);
  EXPECT_DOUBLE_EQ(m.top5_distance, 3.0);

  w.targets = {MakeTarget(TargetKind::kRandom, {7.0, 0.0})};
  m = ComputeTrackingMetrics(w);
  EXPECT_EQ(m.within_5, 0);
  EXPECT_DOUBLE_EQ(m.top5_distance, 7.0);

  w.targets = {MakeTarget(TargetKind::kRandom, {0.0, 0.0}),
               MakeTarget(TargetKind::kRandom, {0.0, 0.0})};
  m = ComputeTrackingMetrics(w);
  EXPECT_EQ(m.within_5, 2);
  EXPECT_DOUBLE_EQ(m.top5_distance, 0.0);
}

TEST(TargetMixTest, FloorsTowardRandom) {
  const std::vector<TargetKind> kinds = TargetMix(8, 8, 1, 1);
  EXPECT_EQ(std::count(kinds.begin(), kinds.end(), TargetKind::kRandom), 8);
  const std::vector<TargetKind> big = TargetMix(30, 8, 1, 1);
  EXPECT_EQ(std::count(big.begin(), big.end(), TargetKind::kAdversarial), 3);
  EXPECT_EQ(std::count(big.begin(), big.end(), TargetKind::kPolyline), 3);
  EXPECT_EQ(big.front(), TargetKind::kRandom);
  EXPECT_ERROR_CODE(TargetMix(3, 0, 0, 0), ErrorCode::kInvalidArgument);
}

TEST(TrackingEnvironmentTest, TraceAndMetrics) {
  const std::vector<TargetKind> kinds = TargetMix(5, 1, 1, 1);
  TrackingEnvironment env(2, kinds, TrackingParams{}, MakeStream(5, 1));
  std::ostringstream trace;
  WriteWorldTraceHeader(trace);
  env.set_trace(&trace);
  const auto f = env.Reveal();
  EXPECT_EQ(f->ground_size(), 48);
  EXPECT_EQ(env.world().t, 1);
  env.Commit(std::vector{0, 24});
  std::istringstream lines(trace.str());
  std::string line;
  int count = 0;
  std::getline(lines, line);
  EXPECT_EQ(line, "t,entity_kind,id,x,y");
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.substr(0, 2), "1,");
    ++count;
  }
  EXPECT_EQ(count, 7);
  EXPECT_EQ(env.metrics().within_5,
            ComputeTrackingMetrics(env.world()).within_5);
}

}  // namespace
}  // namespace masub
