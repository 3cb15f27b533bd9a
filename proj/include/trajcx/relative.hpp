#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trajcx/linalg.hpp"
#include "trajcx/trajectory.hpp"

namespace trajcx {

// Breakpoints closer than this (hours) are treated as one.
inline constexpr double kBreakpointTolerance = 1e-9;

// Motion of A relative to B on one interval where both velocities are
// constant. dp is A - B; sigma_ab is the combined error covariance carried
// by A while B is the deterministic reference.
struct RelativeSegment {
  Vec2 dp_start;
  Vec2 dp_end;
  Vec2 dv;
  double t_start = 0.0;
  double t_end = 0.0;
  Mat2 sigma_ab;

  double duration() const { return t_end - t_start; }
};

struct RelativeTrajectory {
  std::pair<std::string, std::string> pair;
  std::vector<RelativeSegment> segments;
};

struct TimeWindow {
  double lo = 0.0;
  double hi = 0.0;
};

// Ascending union of both breakpoint lists restricted to the open window,
// bracketed by window.lo and window.hi. Throws kEmptyWindow unless lo < hi.
std::vector<double> merge_breakpoints(std::span<const double> times_a,
                                      std::span<const double> times_b,
                                      TimeWindow window);

// [max of starts, min of ends]; may be empty (lo >= hi).
TimeWindow common_window(const Trajectory& a, const Trajectory& b);

// Throws kEmptyWindow when the schedules do not overlap.
RelativeTrajectory relative_trajectory(const Trajectory& a, const Trajectory& b);

}  // namespace trajcx
