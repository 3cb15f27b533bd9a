#pragma once

#include <span>
#include <string>
#include <vector>

#include "trajcx/linalg.hpp"

namespace trajcx {

// Units throughout: nautical miles, knots, hours.
using Waypoint = Vec2;

// Declarative input for one aircraft. Velocity vectors are not part of the
// plan: each leg flies from waypoint j-1 to waypoint j at speeds[j-1].
struct FlightPlan {
  std::string id;
  std::vector<Waypoint> waypoints;
  std::vector<double> speeds;
  double sigma_along = 0.0;
  double sigma_cross = 0.0;
  double start_time = 0.0;
};

struct Segment {
  Waypoint p_start;
  Waypoint p_end;
  Vec2 velocity;
  double heading = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  Mat2 covariance;
};

struct Trajectory {
  std::string id;
  std::vector<Segment> segments;

  double t_start() const { return segments.front().t_start; }
  double t_end() const { return segments.back().t_end; }

  // Segment owning time t under the half-open [t_start, t_end) convention,
  // with the final instant owned by the last segment. Throws kTimeOutOfRange.
  const Segment& segment_at(double t) const;

  // t_start of the first segment followed by every segment end time.
  std::vector<double> breakpoints() const;
};

// Checks every FlightPlan invariant; throws the matching ErrorCode.
void validate_plan(const FlightPlan& plan);

Trajectory build_trajectory(const FlightPlan& plan);

Vec2 position_at(const Trajectory& traj, double t);

Mat2 rotation_matrix(double theta);

// R(theta) * diag(sigma_along^2, sigma_cross^2) * R(theta)^T.
Mat2 rotate_covariance(double sigma_along, double sigma_cross, double theta);

}  // namespace trajcx
