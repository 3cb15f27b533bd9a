#pragma once

#include <cstdint>
#include <vector>

#include "trajcx/conflict.hpp"
#include "trajcx/linalg.hpp"
#include "trajcx/relative.hpp"

namespace trajcx::oracle {

// Exact instantaneous conflict probability: mass of N(0, sigma_ab) inside
// the disc of radius rho0 centred at -dp. Absolute error <= tol, which must
// lie in (0, 1e-3]. Throws kSingularCovariance.
double cp_instant_exact(Vec2 dp, const Mat2& sigma_ab, double rho0 = kDefaultRho0,
                        double tol = 1e-10);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

// Euclidean distance from point p to the closed segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

// Fraction of error draws eps ~ N(0, sigma_ab) for which the nominal relative
// path dp_start -> dp_end passes within rho0 of -eps. Trial i draws from a
// stream keyed by (seed, i), so the result does not depend on `threads`.
// samples must be >= 1e4.
McEstimate cp_segment_mc(const RelativeSegment& seg, double rho0, std::uint64_t samples,
                         std::uint64_t seed, unsigned threads = 1);

struct PairMcEstimate {
  std::vector<McEstimate> segments;
  double combined = 0.0;         // 1 - prod(1 - estimate_k)
  double combined_stderr = 0.0;  // first-order propagation of the per-segment errors
};

// Independent per-segment runs combined as if the segments were independent.
PairMcEstimate pair_cp_mc(const RelativeTrajectory& rel, double rho0, std::uint64_t samples,
                          std::uint64_t seed, unsigned threads = 1);

}  // namespace trajcx::oracle
