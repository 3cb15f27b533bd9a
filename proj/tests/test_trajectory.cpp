#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "trajcx/error.hpp"
#include "trajcx/trajectory.hpp"

using namespace trajcx;
using trajcx::testing::near;

namespace {

FlightPlan plan_of(std::vector<Waypoint> wps, std::vector<double> speeds, double sa = 2.0,
                   double sc = 1.0) {
  FlightPlan p;
  p.id = "T";
  p.waypoints = std::move(wps);
  p.speeds = std::move(speeds);
  p.sigma_along = sa;
  p.sigma_cross = sc;
  return p;
}

ErrorCode code_of(const FlightPlan& p) {
  try {
    build_trajectory(p);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kValidationError;
}

}  // namespace

TEST_CASE("segment end times follow the length/speed recursion") {
  const Trajectory one = build_trajectory(plan_of({{0, 0}, {3, 4}}, {5}));
  REQUIRE(one.segments.size() == 1);
  CHECK(one.segments[0].t_end == doctest::Approx(1.0).epsilon(1e-15));

  const Trajectory two = build_trajectory(plan_of({{0, 0}, {3, 4}, {3, 10}}, {5, 3}));
  REQUIRE(two.segments.size() == 2);
  CHECK(two.segments[0].t_end == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.segments[1].t_end == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(two.segments[1].velocity.x == doctest::Approx(0.0));
  CHECK(two.segments[1].velocity.y == doctest::Approx(3.0));
  CHECK(two.segments[1].heading == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("start time offsets the whole timeline") {
  FlightPlan p = plan_of({{0, 0}, {3, 4}}, {5});
  p.start_time = 2.5;
  const Trajectory t = build_trajectory(p);
  CHECK(t.t_start() == 2.5);
  CHECK(t.t_end() == doctest::Approx(3.5));
}

TEST_CASE("invalid plans are rejected with the matching code") {
  CHECK(code_of(plan_of({{0, 0}, {0, 0}}, {5})) == ErrorCode::kDegenerateSegment);
  CHECK(code_of(plan_of({{0, 0}}, {})) == ErrorCode::kDegenerateSegment);
  CHECK(code_of(plan_of({{0, 0}, {1, 0}}, {0})) == ErrorCode::kNonPositiveSpeed);
  CHECK(code_of(plan_of({{0, 0}, {1, 0}}, {-3})) == ErrorCode::kNonPositiveSpeed);
  CHECK(code_of(plan_of({{0, 0}, {1, 0}}, {5}, 0.0, 1.0)) == ErrorCode::kNonPositiveSigma);
  CHECK(code_of(plan_of({{0, 0}, {1, 0}}, {5}, 1.0, -1.0)) == ErrorCode::kNonPositiveSigma);
  CHECK(code_of(plan_of({{0, 0}, {1, 0}}, {5, 5})) == ErrorCode::kValidationError);
  CHECK(code_of(plan_of({{0, 0}, {NAN, 0}}, {5})) == ErrorCode::kNonFiniteValue);
}

TEST_CASE("position_at interpolates and owns the final instant") {
  const Trajectory t = build_trajectory(plan_of({{0, 0}, {3, 4}}, {5}));
  CHECK(near(position_at(t, 0.5), Vec2{1.5, 2.0}, 1e-15));
  CHECK(position_at(t, 0.0) == Vec2{0, 0});
  CHECK(position_at(t, 1.0) == Vec2{3, 4});
  try {
    position_at(t, 2.0);
    FAIL("expected TimeOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTimeOutOfRange);
  }
  CHECK_THROWS_AS(position_at(t, -1e-12), Error);
}

TEST_CASE("rotation matrix examples") {
  CHECK(rotation_matrix(0.0) == Mat2::identity());
  CHECK(near(rotation_matrix(std::numbers::pi / 2), Mat2{0, -1, 1, 0}, 1e-15));
  const double h = std::numbers::sqrt2 / 2;
  CHECK(near(rotation_matrix(std::numbers::pi / 4), Mat2{h, -h, h, h}, 1e-15));
  for (double theta : {-2.0, 0.3, 1.7, 5.0}) {
    const Mat2 r = rotation_matrix(theta);
    CHECK(r.det() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(near(r * r.transposed(), Mat2::identity(), 1e-15));
  }
}

TEST_CASE("rotate_covariance examples") {
  CHECK(near(rotate_covariance(2, 1, 0.0), Mat2{4, 0, 0, 1}, 1e-15));
  CHECK(near(rotate_covariance(2, 1, std::numbers::pi / 2), Mat2{1, 0, 0, 4}, 1e-14));
  // R diag(4,1) R^T at 45 degrees, by hand: 0.5*[[5,3],[3,5]].
  CHECK(near(rotate_covariance(2, 1, std::numbers::pi / 4), Mat2{2.5, 1.5, 1.5, 2.5}, 1e-14));
  CHECK_THROWS_AS(rotate_covariance(0.0, 1.0, 0.0), Error);
}

TEST_CASE("rotate_covariance properties over random angles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  std::uniform_real_distribution<double> sig(0.1, 5.0);
  for (int i = 0; i < 500; ++i) {
    const double sa = sig(rng);
    const double sc = sig(rng);
    const double theta = ang(rng);
    const Mat2 c = rotate_covariance(sa, sc, theta);
    CHECK(c.xy == c.yx);
    const double det = sa * sa * sc * sc;
    CHECK(std::fabs(c.det() - det) <= 1e-12 * det);
    CHECK(c.trace() == doctest::Approx(sa * sa + sc * sc).epsilon(1e-14));
    const Mat2 r = rotation_matrix(theta);
    CHECK(near(c, r * Mat2::diag(sa * sa, sc * sc) * r.transposed(), 1e-12 * (sa * sa + sc * sc)));
    CHECK(near(c, rotate_covariance(sa, sc, theta + 2 * std::numbers::pi),
               1e-12 * (sa * sa + sc * sc)));
  }
}

TEST_CASE("random trajectories satisfy segment invariants") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const FlightPlan plan = trajcx::testing::random_plan(rng, "R", 1 + i % 5, 0.25 * (i % 3));
    const Trajectory t = build_trajectory(plan);
    REQUIRE(t.segments.size() == plan.speeds.size());
    for (std::size_t k = 0; k < t.segments.size(); ++k) {
      const Segment& s = t.segments[k];
      const double length = norm(s.p_end - s.p_start);
      CHECK(s.t_end > s.t_start);
      CHECK(std::fabs((s.t_end - s.t_start) * plan.speeds[k] - length) <= 1e-9 * length);
      const Vec2 v = (1.0 / (s.t_end - s.t_start)) * (s.p_end - s.p_start);
      CHECK(std::fabs(v.x - s.velocity.x) <= 1e-9 * norm(v));
      CHECK(std::fabs(v.y - s.velocity.y) <= 1e-9 * norm(v));
      if (k + 1 < t.segments.size()) {
        CHECK(s.t_end == t.segments[k + 1].t_start);
        CHECK(s.p_end == t.segments[k + 1].p_start);
        // Interior breakpoints return the waypoint exactly.
        CHECK(position_at(t, s.t_end) == plan.waypoints[k + 1]);
      }
    }

    FlightPlan moved = plan;
    for (Waypoint& p : moved.waypoints) p = p + Vec2{1234.5, -987.25};
    const Trajectory tm = build_trajectory(moved);
    for (std::size_t k = 0; k < t.segments.size(); ++k) {
      const double d0 = t.segments[k].t_end - t.segments[k].t_start;
      const double d1 = tm.segments[k].t_end - tm.segments[k].t_start;
      CHECK(std::fabs(d0 - d1) <= 1e-9 * d0);
      CHECK(near(t.segments[k].covariance, tm.segments[k].covariance, 1e-9));
    }
  }
}
