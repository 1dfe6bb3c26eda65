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

// Waypoint plans and a straight-line trapezoidal-speed reference sampler.

#ifndef BICOPTER_TRAJ_HPP_
#define BICOPTER_TRAJ_HPP_

#include <vector>

#include "bicopter/types.hpp"
#include "bicopter/xform.hpp"

namespace bicopter {

struct WaypointPlan {
  std::vector<Vec2> waypoints;
  double v_max = 1.0;  // m/s
  double a_max = 1.0;  // m/s^2

  // Throws PlanError if the plan is empty, a waypoint is not inside the
  // position bounds shrunk by `margin`, or two consecutive waypoints
  // coincide.
  void validate(const SafeSet& safe, double margin = 0.0) const;
};

struct ReferenceSample {
  double t = 0.0;
  Vec2 x_d1 = Vec2::Zero();
};

// One straight segment traversed with a trapezoidal (or triangular) speed
// profile that starts and ends at rest.
struct SegmentProfile {
  Vec2 from = Vec2::Zero();
  Vec2 to = Vec2::Zero();
  double length = 0.0;
  double peak_speed = 0.0;
  double accel = 0.0;
  double t_accel = 0.0;   // duration of each ramp
  double t_cruise = 0.0;
  double duration = 0.0;

  // Arc length travelled at local time t, clamped to [0, duration].
  double distance_at(double t) const;
  Vec2 position_at(double t) const;
};

// Octagon inscribed in the position box: an axis-aligned rectangle with
// half-extents margin_fraction * xbar1, each corner cut by chamfer_fraction of
// the half-extent along both axes. Vertices run counter-clockwise starting at
// the lower vertex on the right edge, bracketed by the origin for approach and
// return (10 waypoints).
WaypointPlan plan_octagon(const SafeSet& safe, double margin_fraction = 0.9,
                          double chamfer_fraction = 0.5, double v_max = 1.0,
                          double a_max = 1.0);

// Throws PlanError if from == to or the limits are not positive.
SegmentProfile segment_profile(const Vec2& from, const Vec2& to, double v_max,
                               double a_max);

// Precomputed concatenation of segment profiles. Immutable after
// construction.
class ReferenceTrajectory {
 public:
  explicit ReferenceTrajectory(const WaypointPlan& plan);

  ReferenceSample sample(double t) const;
  double total_duration() const { return total_duration_; }
  const std::vector<SegmentProfile>& segments() const { return segments_; }

 private:
  Vec2 start_;
  std::vector<SegmentProfile> segments_;
  std::vector<double> start_times_;
  double total_duration_ = 0.0;
};

// Convenience wrapper; builds the trajectory on every call.
ReferenceSample sample_reference(const WaypointPlan& plan, double t);

}  // namespace bicopter

#endif  // BICOPTER_TRAJ_HPP_
