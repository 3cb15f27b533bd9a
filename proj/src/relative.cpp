#include "trajcx/relative.hpp"

#include <algorithm>
#include <cmath>

#include "trajcx/error.hpp"

namespace trajcx {

std::vector<double> merge_breakpoints(std::span<const double> times_a,
                                      std::span<const double> times_b,
                                      TimeWindow window) {
  if (!(window.lo < window.hi)) {
    throw Error(ErrorCode::kEmptyWindow,
                "empty time window [" + std::to_string(window.lo) + ", " +
                    std::to_string(window.hi) + "]");
  }
  std::vector<double> interior;
  interior.reserve(times_a.size() + times_b.size());
  for (auto times : {times_a, times_b}) {
    for (double t : times) {
      if (t > window.lo && t < window.hi) interior.push_back(t);
    }
  }
  std::sort(interior.begin(), interior.end());

  std::vector<double> out;
  out.reserve(interior.size() + 2);
  out.push_back(window.lo);
  for (double t : interior) {
    if (t - out.back() > kBreakpointTolerance) out.push_back(t);
  }
  // The window end wins over any interior point it swallows.
  while (out.size() > 1 && window.hi - out.back() <= kBreakpointTolerance) {
    out.pop_back();
  }
  out.push_back(window.hi);
  return out;
}

TimeWindow common_window(const Trajectory& a, const Trajectory& b) {
  return {std::max(a.t_start(), b.t_start()), std::min(a.t_end(), b.t_end())};
}

RelativeTrajectory relative_trajectory(const Trajectory& a, const Trajectory& b) {
  const TimeWindow window = common_window(a, b);
  if (!(window.lo < window.hi)) {
    throw Error(ErrorCode::kEmptyWindow,
                "trajectories '" + a.id + "' and '" + b.id + "' do not overlap in time");
  }
  const std::vector<double> ta = a.breakpoints();
  const std::vector<double> tb = b.breakpoints();
  const std::vector<double> times = merge_breakpoints(ta, tb, window);

  RelativeTrajectory rel;
  rel.pair = {a.id, b.id};
  rel.segments.reserve(times.size() - 1);
  Vec2 dp_prev = position_at(a, times.front()) - position_at(b, times.front());
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double t0 = times[k - 1];
    const double t1 = times[k];
    // Both aircraft hold one segment over the whole interval; the midpoint
    // identifies it unambiguously.
    const double mid = 0.5 * (t0 + t1);
    const Segment& sa = a.segment_at(mid);
    const Segment& sb = b.segment_at(mid);

    RelativeSegment seg;
    seg.t_start = t0;
    seg.t_end = t1;
    seg.dp_start = dp_prev;
    seg.dp_end = position_at(a, t1) - position_at(b, t1);
    seg.dv = sa.velocity - sb.velocity;
    seg.sigma_ab = sa.covariance + sb.covariance;
    dp_prev = seg.dp_end;
    rel.segments.push_back(seg);
  }
  return rel;
}

}  // namespace trajcx
