#include "trajcx/trajectory.hpp"

#include <cmath>
#include <string>

#include "trajcx/error.hpp"

namespace trajcx {

namespace {

std::string plan_label(const FlightPlan& plan) {
  return "flight plan '" + plan.id + "'";
}

}  // namespace

void validate_plan(const FlightPlan& plan) {
  if (plan.waypoints.size() < 2) {
    throw Error(ErrorCode::kDegenerateSegment,
                plan_label(plan) + ": needs at least two waypoints");
  }
  if (plan.speeds.size() + 1 != plan.waypoints.size()) {
    throw Error(ErrorCode::kValidationError,
                plan_label(plan) + ": expected " +
                    std::to_string(plan.waypoints.size() - 1) + " speeds, got " +
                    std::to_string(plan.speeds.size()));
  }
  for (std::size_t i = 0; i < plan.waypoints.size(); ++i) {
    const Waypoint& p = plan.waypoints[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kNonFiniteValue,
                  plan_label(plan) + ": waypoint " + std::to_string(i) +
                      " is not finite");
    }
    if (i > 0 && p == plan.waypoints[i - 1]) {
      throw Error(ErrorCode::kDegenerateSegment,
                  plan_label(plan) + ": waypoints " + std::to_string(i - 1) +
                      " and " + std::to_string(i) + " coincide");
    }
  }
  for (std::size_t j = 0; j < plan.speeds.size(); ++j) {
    // Written as !(> 0) so NaN is rejected too.
    if (!(plan.speeds[j] > 0.0) || !std::isfinite(plan.speeds[j])) {
      throw Error(ErrorCode::kNonPositiveSpeed,
                  plan_label(plan) + ": speed " + std::to_string(j) +
                      " must be positive and finite");
    }
  }
  if (!(plan.sigma_along > 0.0) || !(plan.sigma_cross > 0.0) ||
      !std::isfinite(plan.sigma_along) || !std::isfinite(plan.sigma_cross)) {
    throw Error(ErrorCode::kNonPositiveSigma,
                plan_label(plan) + ": sigma_along and sigma_cross must be positive");
  }
  if (!std::isfinite(plan.start_time)) {
    throw Error(ErrorCode::kNonFiniteValue,
                plan_label(plan) + ": start time is not finite");
  }
}

Trajectory build_trajectory(const FlightPlan& plan) {
  validate_plan(plan);
  Trajectory traj;
  traj.id = plan.id;
  traj.segments.reserve(plan.speeds.size());
  double t = plan.start_time;
  for (std::size_t j = 1; j < plan.waypoints.size(); ++j) {
    Segment seg;
    seg.p_start = plan.waypoints[j - 1];
    seg.p_end = plan.waypoints[j];
    const Vec2 delta = seg.p_end - seg.p_start;
    const double length = norm(delta);
    const double speed = plan.speeds[j - 1];
    seg.velocity = (speed / length) * delta;
    seg.heading = std::atan2(delta.y, delta.x);
    seg.t_start = t;
    seg.t_end = t + length / speed;
    seg.covariance = rotate_covariance(plan.sigma_along, plan.sigma_cross, seg.heading);
    t = seg.t_end;
    traj.segments.push_back(seg);
  }
  return traj;
}

const Segment& Trajectory::segment_at(double t) const {
  if (segments.empty() || !(t >= t_start()) || !(t <= t_end())) {
    throw Error(ErrorCode::kTimeOutOfRange,
                "trajectory '" + id + "': time " + std::to_string(t) +
                    " h outside [" + std::to_string(segments.empty() ? 0.0 : t_start()) +
                    ", " + std::to_string(segments.empty() ? 0.0 : t_end()) + "]");
  }
  // Few segments per plan; a linear scan keeps the ownership rule obvious.
  for (const Segment& seg : segments) {
    if (t < seg.t_end) return seg;
  }
  return segments.back();
}

std::vector<double> Trajectory::breakpoints() const {
  std::vector<double> out;
  out.reserve(segments.size() + 1);
  if (segments.empty()) return out;
  out.push_back(segments.front().t_start);
  for (const Segment& seg : segments) out.push_back(seg.t_end);
  return out;
}

Vec2 position_at(const Trajectory& traj, double t) {
  const Segment& seg = traj.segment_at(t);
  if (t == seg.t_start) return seg.p_start;
  if (t == seg.t_end) return seg.p_end;
  return seg.p_start + (t - seg.t_start) * seg.velocity;
}

Mat2 rotation_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, -s, s, c};
}

Mat2 rotate_covariance(double sigma_along, double sigma_cross, double theta) {
  if (!(sigma_along > 0.0) || !(sigma_cross > 0.0)) {
    throw Error(ErrorCode::kNonPositiveSigma, "sigmas must be positive");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double va = sigma_along * sigma_along;
  const double vc = sigma_cross * sigma_cross;
  // Expanded R diag(va, vc) R^T; the off-diagonal is computed once so the
  // result is exactly symmetric.
  const double off = (va - vc) * c * s;
  return {va * c * c + vc * s * s, off, off, va * s * s + vc * c * c};
}

}  // namespace trajcx
