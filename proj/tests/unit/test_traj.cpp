// Copyright 2026 The Safe Bicopter Authors
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
#include <set>
#include <utility>

#include <gtest/gtest.h>

#include "bicopter/errors.hpp"
#include "bicopter/traj.hpp"

namespace bicopter {
namespace {

TEST(PlanOctagon, DefaultVertices) {
  const WaypointPlan p = plan_octagon(SafeSet{});
  ASSERT_EQ(p.waypoints.size(), 10u);
  EXPECT_EQ(p.waypoints.front(), Vec2::Zero());
  EXPECT_EQ(p.waypoints.back(), Vec2::Zero());
  const Vec2 expect[] = {{6.3, -2.25},  {6.3, 2.25},  {3.15, 4.5},   {-3.15, 4.5},
                         {-6.3, 2.25},  {-6.3, -2.25}, {-3.15, -4.5}, {3.15, -4.5}};
  for (int i = 0; i < 8; ++i) {
    EXPECT_LT((p.waypoints[i + 1] - expect[i]).cwiseAbs().maxCoeff(), 1e-12) << i;
  }
  EXPECT_EQ(p.v_max, 1.0);
  EXPECT_EQ(p.a_max, 1.0);
}

TEST(PlanOctagon, NearlySquareChamferStillValid) {
  SafeSet s;
  s.xbar1 = Vec2(5.0, 5.0);
  const WaypointPlan p = plan_octagon(s, 0.9, 0.99);
  EXPECT_NO_THROW(p.validate(s));
  std::set<std::pair<double, double>> distinct;
  for (std::size_t i = 1; i + 1 < p.waypoints.size(); ++i) {
    distinct.insert({p.waypoints[i][0], p.waypoints[i][1]});
  }
  EXPECT_EQ(distinct.size(), 8u);
}

TEST(PlanOctagon, RejectsDegenerateParameters) {
  SafeSet s;
  EXPECT_THROW(plan_octagon(s, 0.9, 1.0), PlanError);
  EXPECT_THROW(plan_octagon(s, 0.9, 0.0), PlanError);
  EXPECT_THROW(plan_octagon(s, 1.0, 0.5), PlanError);
  EXPECT_THROW(plan_octagon(s, 0.9, 0.5, 0.0, 1.0), PlanError);
}

TEST(WaypointPlan, Validation) {
  SafeSet s;
  WaypointPlan p;
  EXPECT_THROW(p.validate(s), PlanError);
  p.waypoints = {Vec2(0, 0), Vec2(6.5, 0)};
  EXPECT_NO_THROW(p.validate(s));
  EXPECT_THROW(p.validate(s, 0.6), PlanError);
  p.waypoints = {Vec2(0, 0), Vec2(7.0, 0)};
  EXPECT_THROW(p.validate(s), PlanError);
  p.waypoints = {Vec2(1, 1), Vec2(1, 1)};
  EXPECT_THROW(p.validate(s), PlanError);
}

TEST(SegmentProfile, Trapezoid) {
  const SegmentProfile sp = segment_profile(Vec2::Zero(), Vec2(4.0, 0.0), 1.0, 1.0);
  EXPECT_DOUBLE_EQ(sp.duration, 5.0);
  EXPECT_DOUBLE_EQ(sp.t_accel, 1.0);
  EXPECT_DOUBLE_EQ(sp.t_cruise, 3.0);
  EXPECT_DOUBLE_EQ(sp.peak_speed, 1.0);
  EXPECT_DOUBLE_EQ(sp.distance_at(2.5), 2.0);
  EXPECT_EQ(sp.position_at(2.5), Vec2(2.0, 0.0));
  EXPECT_EQ(sp.distance_at(-1.0), 0.0);
  EXPECT_EQ(sp.distance_at(9.0), 4.0);
}

TEST(SegmentProfile, Triangle) {
  const SegmentProfile sp = segment_profile(Vec2::Zero(), Vec2(0.0, 0.5), 1.0, 1.0);
  EXPECT_NEAR(sp.peak_speed, 0.7071067811865476, 1e-15);
  EXPECT_NEAR(sp.duration, 1.414213562373095, 1e-15);
  EXPECT_EQ(sp.t_cruise, 0.0);
  EXPECT_NEAR(sp.distance_at(sp.duration / 2), 0.25, 1e-15);
}

TEST(SegmentProfile, Rejects) {
  EXPECT_THROW(segment_profile(Vec2(1, 1), Vec2(1, 1), 1.0, 1.0), PlanError);
  EXPECT_THROW(segment_profile(Vec2(0, 0), Vec2(1, 1), -1.0, 1.0), PlanError);
}

TEST(ReferenceTrajectory, EndpointsAndHold) {
  const WaypointPlan p = plan_octagon(SafeSet{});
  const ReferenceTrajectory traj(p);
  EXPECT_EQ(traj.segments().size(), 9u);
  EXPECT_EQ(traj.sample(0.0).x_d1, Vec2::Zero());
  const double T = traj.total_duration();
  EXPECT_LT(traj.sample(T).x_d1.norm(), 1e-12);
  EXPECT_LT(traj.sample(T + 100.0).x_d1.norm(), 1e-12);
  EXPECT_EQ(traj.sample(-1.0).x_d1, Vec2::Zero());
  EXPECT_EQ(sample_reference(p, 3.0).x_d1, traj.sample(3.0).x_d1);
}

TEST(ReferenceTrajectory, SingleWaypointHolds) {
  WaypointPlan p;
  p.waypoints = {Vec2(3.0, 2.0)};
  const ReferenceTrajectory traj(p);
  EXPECT_EQ(traj.total_duration(), 0.0);
  EXPECT_EQ(traj.sample(0.0).x_d1, Vec2(3.0, 2.0));
  EXPECT_EQ(traj.sample(42.0).x_d1, Vec2(3.0, 2.0));
}

TEST(ReferenceTrajectory, MidpointOfSegment) {
  WaypointPlan p;
  p.waypoints = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 4)};
  const ReferenceTrajectory traj(p);
  const double t0 = traj.segments()[0].duration;
  EXPECT_NEAR((traj.sample(t0 + 2.5).x_d1 - Vec2(1.0, 2.0)).norm(), 0.0, 1e-12);
}

TEST(ReferenceTrajectory, SpeedContinuityInteriority) {
  SafeSet s;
  const WaypointPlan p = plan_octagon(s);
  const ReferenceTrajectory traj(p);
  const double h = 1e-3;
  double max_speed = 0.0;
  for (double t = 0.0; t <= traj.total_duration() + 1.0; t += h) {
    const Vec2 a = traj.sample(t).x_d1;
    const Vec2 b = traj.sample(t + h).x_d1;
    ASSERT_TRUE(s.contains_position(a)) << t;
    const double step = (b - a).norm();
    max_speed = std::max(max_speed, step / h);
    EXPECT_LE(step, (p.v_max + p.a_max * h) * h + 1e-12) << t;
  }
  EXPECT_LE(max_speed, p.v_max + 1e-9);
  EXPECT_GT(max_speed, 0.99 * p.v_max);
}

}  // namespace
}  // namespace bicopter
