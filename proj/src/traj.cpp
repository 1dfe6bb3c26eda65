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

#include "bicopter/traj.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bicopter/errors.hpp"

namespace bicopter {

void WaypointPlan::validate(const SafeSet& safe, double margin) const {
  if (waypoints.empty()) throw PlanError("plan has no waypoints");
  if (!(v_max > 0.0) || !std::isfinite(v_max)) throw PlanError("v_max must be > 0");
  if (!(a_max > 0.0) || !std::isfinite(a_max)) throw PlanError("a_max must be > 0");
  if (!(margin >= 0.0)) throw PlanError("margin must be >= 0");
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    const Vec2& p = waypoints[i];
    if (!p.allFinite() ||
        !((p.array().abs() < safe.xbar1.array() - margin).all())) {
      throw PlanError("waypoint " + std::to_string(i) + " (" + std::to_string(p[0]) + ", " +
                      std::to_string(p[1]) + ") is not inside the position bounds");
    }
    if (i > 0 && p == waypoints[i - 1]) {
      throw PlanError("waypoints " + std::to_string(i - 1) + " and " + std::to_string(i) +
                      " coincide");
    }
  }
}

WaypointPlan plan_octagon(const SafeSet& safe, double margin_fraction,
                          double chamfer_fraction, double v_max, double a_max) {
  if (!(margin_fraction > 0.0 && margin_fraction < 1.0)) {
    throw PlanError("margin_fraction must lie in (0, 1)");
  }
  if (!(chamfer_fraction > 0.0 && chamfer_fraction < 1.0)) {
    throw PlanError("chamfer_fraction must lie in (0, 1); the octagon degenerates otherwise");
  }
  const double hx = margin_fraction * safe.xbar1[0];
  const double hy = margin_fraction * safe.xbar1[1];
  const double cx = (1.0 - chamfer_fraction) * hx;
  const double cy = (1.0 - chamfer_fraction) * hy;

  WaypointPlan plan;
  plan.v_max = v_max;
  plan.a_max = a_max;
  plan.waypoints = {
      Vec2(0.0, 0.0),
      Vec2(hx, -cy), Vec2(hx, cy),   Vec2(cx, hy),   Vec2(-cx, hy),
      Vec2(-hx, cy), Vec2(-hx, -cy), Vec2(-cx, -hy), Vec2(cx, -hy),
      Vec2(0.0, 0.0),
  };
  plan.validate(safe);
  return plan;
}

SegmentProfile segment_profile(const Vec2& from, const Vec2& to, double v_max,
                               double a_max) {
  if (!(v_max > 0.0) || !(a_max > 0.0)) {
    throw PlanError("segment limits must be positive");
  }
  const double d = (to - from).norm();
  if (!(d > 0.0)) throw PlanError("segment endpoints coincide");

  SegmentProfile p;
  p.from = from;
  p.to = to;
  p.length = d;
  p.accel = a_max;
  if (d >= v_max * v_max / a_max) {
    p.peak_speed = v_max;
    p.t_accel = v_max / a_max;
    p.t_cruise = d / v_max - v_max / a_max;
  } else {
    p.peak_speed = std::sqrt(d * a_max);
    p.t_accel = std::sqrt(d / a_max);
    p.t_cruise = 0.0;
  }
  p.duration = 2.0 * p.t_accel + p.t_cruise;
  return p;
}

double SegmentProfile::distance_at(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= duration) return length;
  const double ramp = 0.5 * accel * t_accel * t_accel;
  if (t < t_accel) return 0.5 * accel * t * t;
  if (t < t_accel + t_cruise) return ramp + peak_speed * (t - t_accel);
  const double remaining = duration - t;
  return std::min(length, length - 0.5 * accel * remaining * remaining);
}

Vec2 SegmentProfile::position_at(double t) const {
  if (t >= duration) return to;
  return from + (to - from) * (distance_at(t) / length);
}

ReferenceTrajectory::ReferenceTrajectory(const WaypointPlan& plan) {
  if (plan.waypoints.empty()) throw PlanError("plan has no waypoints");
  start_ = plan.waypoints.front();
  double t = 0.0;
  for (std::size_t i = 1; i < plan.waypoints.size(); ++i) {
    segments_.push_back(
        segment_profile(plan.waypoints[i - 1], plan.waypoints[i], plan.v_max, plan.a_max));
    start_times_.push_back(t);
    t += segments_.back().duration;
  }
  total_duration_ = t;
}

ReferenceSample ReferenceTrajectory::sample(double t) const {
  ReferenceSample out;
  out.t = t;
  if (segments_.empty() || t <= 0.0) {
    out.x_d1 = start_;
    return out;
  }
  if (t >= total_duration_) {
    out.x_d1 = segments_.back().to;
    return out;
  }
  // Last segment whose start time is <= t.
  const auto it = std::upper_bound(start_times_.begin(), start_times_.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - start_times_.begin()) - 1;
  out.x_d1 = segments_[idx].position_at(t - start_times_[idx]);
  return out;
}

ReferenceSample sample_reference(const WaypointPlan& plan, double t) {
  return ReferenceTrajectory(plan).sample(t);
}

}  // namespace bicopter
