#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "trajcx/error.hpp"
#include "trajcx/relative.hpp"

using namespace trajcx;
using trajcx::testing::near;

namespace {

Trajectory straight(std::string id, Waypoint a, Waypoint b, double speed, double start = 0.0) {
  FlightPlan p;
  p.id = std::move(id);
  p.waypoints = {a, b};
  p.speeds = {speed};
  p.sigma_along = 1.0;
  p.sigma_cross = 0.5;
  p.start_time = start;
  return build_trajectory(p);
}

FlightPlan rotated(FlightPlan plan, double phi, Vec2 shift) {
  const Mat2 r = rotation_matrix(phi);
  for (Waypoint& p : plan.waypoints) p = r * p + shift;
  return plan;
}

}  // namespace

TEST_CASE("merge_breakpoints examples") {
  const std::vector<double> a = {0, 0.5, 1.0};
  const std::vector<double> b = {0, 0.7, 1.0};
  CHECK(merge_breakpoints(a, b, {0, 1}) == std::vector<double>{0, 0.5, 0.7, 1.0});

  const std::vector<double> same = {0, 1};
  CHECK(merge_breakpoints(same, same, {0, 1}) == std::vector<double>{0, 1});

  const std::vector<double> c = {0, 0.5};
  const std::vector<double> d = {0.6, 1.2};
  try {
    merge_breakpoints(c, d, {0.6, 0.5});
    FAIL("expected EmptyWindow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyWindow);
  }
}

TEST_CASE("merge_breakpoints clips to the window and collapses near-duplicates") {
  const std::vector<double> a = {0, 0.3, 0.6, 2.0};
  const std::vector<double> b = {0.2, 0.3 + 5e-10, 1.0 - 1e-10, 1.5};
  CHECK(merge_breakpoints(a, b, {0.25, 1.0}) == std::vector<double>{0.25, 0.3, 0.6, 1.0});
}

TEST_CASE("head-on pair gives one relative segment") {
  const Trajectory a = straight("A", {0, 0}, {100, 0}, 400);
  const Trajectory b = straight("B", {100, 0}, {0, 0}, 400);
  const RelativeTrajectory rel = relative_trajectory(a, b);
  REQUIRE(rel.segments.size() == 1);
  const RelativeSegment& s = rel.segments[0];
  CHECK(near(s.dp_start, Vec2{-100, 0}, 1e-12));
  CHECK(near(s.dp_end, Vec2{100, 0}, 1e-12));
  CHECK(near(s.dv, Vec2{800, 0}, 1e-12));
  CHECK(near(s.sigma_ab, a.segments[0].covariance + b.segments[0].covariance, 0.0));
  CHECK(rel.pair == std::pair<std::string, std::string>{"A", "B"});
}

TEST_CASE("breakpoints of either aircraft split the relative trajectory") {
  const Trajectory a = straight("A", {0, 0}, {400, 0}, 400);
  FlightPlan pb;
  pb.id = "B";
  pb.waypoints = {{0, 50}, {200, 50}, {200, 250}};
  pb.speeds = {400, 400};
  pb.sigma_along = 1.0;
  pb.sigma_cross = 1.0;
  const RelativeTrajectory rel = relative_trajectory(a, build_trajectory(pb));
  REQUIRE(rel.segments.size() == 2);
  CHECK(rel.segments[0].t_end == doctest::Approx(0.5));
  CHECK(rel.segments[1].t_start == rel.segments[0].t_end);
  CHECK(near(rel.segments[1].dv, Vec2{400, -400}, 1e-12));
}

TEST_CASE("disjoint schedules have no relative trajectory") {
  const Trajectory a = straight("A", {0, 0}, {400, 0}, 400, 0.0);
  const Trajectory b = straight("B", {0, 0}, {400, 0}, 400, 2.0);
  try {
    relative_trajectory(a, b);
    FAIL("expected EmptyWindow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyWindow);
  }
}

TEST_CASE("partially overlapping schedules are clipped to the common window") {
  const Trajectory a = straight("A", {0, 0}, {400, 0}, 400, 0.0);
  const Trajectory b = straight("B", {0, 10}, {400, 10}, 400, 0.5);
  const RelativeTrajectory rel = relative_trajectory(a, b);
  REQUIRE(rel.segments.size() == 1);
  CHECK(rel.segments[0].t_start == 0.5);
  CHECK(rel.segments[0].t_end == 1.0);
  CHECK(near(rel.segments[0].dp_start, Vec2{200, -10}, 1e-12));
}

TEST_CASE("relative trajectory properties over random pairs") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-3.14, 3.14);
  std::uniform_real_distribution<double> off(-500, 500);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const FlightPlan pa = trajcx::testing::random_plan(rng, "A", 1 + i % 4);
    const FlightPlan pb = trajcx::testing::random_plan(rng, "B", 1 + (i / 4) % 4);
    const Trajectory a = build_trajectory(pa);
    const Trajectory b = build_trajectory(pb);
    const TimeWindow w = common_window(a, b);
    if (!(w.lo < w.hi)) continue;
    ++checked;
    const RelativeTrajectory ab = relative_trajectory(a, b);
    const RelativeTrajectory ba = relative_trajectory(b, a);
    if (w.lo == 0.0 && a.t_end() == b.t_end()) {
      CHECK(ab.segments.size() <= a.segments.size() + b.segments.size() - 1);
    }
    REQUIRE(ab.segments.size() == ba.segments.size());
    for (std::size_t k = 0; k < ab.segments.size(); ++k) {
      const RelativeSegment& s = ab.segments[k];
      CHECK(near(s.dp_end, s.dp_start + s.duration() * s.dv, 1e-9));
      CHECK(s.sigma_ab.det() > 0.0);
      if (k + 1 < ab.segments.size()) {
        CHECK(near(s.dp_end, ab.segments[k + 1].dp_start, 1e-9));
        CHECK(s.t_end == ab.segments[k + 1].t_start);
      }
      CHECK(near(s.dp_start, -ba.segments[k].dp_start, 1e-12));
      CHECK(near(s.dv, -ba.segments[k].dv, 1e-12));
      CHECK(near(s.sigma_ab, ba.segments[k].sigma_ab, 1e-15));
    }

    const double phi = ang(rng);
    const Vec2 shift{off(rng), off(rng)};
    const Mat2 r = rotation_matrix(phi);
    const RelativeTrajectory moved = relative_trajectory(build_trajectory(rotated(pa, phi, shift)),
                                                         build_trajectory(rotated(pb, phi, shift)));
    REQUIRE(moved.segments.size() == ab.segments.size());
    for (std::size_t k = 0; k < ab.segments.size(); ++k) {
      CHECK(near(moved.segments[k].dp_start, r * ab.segments[k].dp_start, 1e-9));
      CHECK(near(moved.segments[k].dv, r * ab.segments[k].dv, 1e-9));
      CHECK(near(moved.segments[k].sigma_ab, r * ab.segments[k].sigma_ab * r.transposed(), 1e-9));
    }
  }
  CHECK(checked > 100);
}
