#pragma once

#include "trajcx/linalg.hpp"
#include "trajcx/relative.hpp"

namespace trajcx {

// Horizontal separation standard, nmi.
inline constexpr double kDefaultRho0 = 5.0;

// Relative speeds below this (knots) leave the alignment rotation undefined.
inline constexpr double kZeroVelocity = 1e-9;

// Covariance determinants below this (nmi^4) are rejected.
inline constexpr double kSingularDeterminant = 1e-15;

// Standard normal CDF; beyond this many sigmas a tail is treated as zero.
inline constexpr double kTailCutoff = 38.0;

double phi(double x);

// P(lo < Z < hi) for standard normal Z, computed on the tail that avoids
// cancellation. Zero when hi <= lo or the interval lies past kTailCutoff.
double normal_interval(double lo, double hi);

// How the u axis was chosen.
enum class FrameAlignment {
  kVelocity,       // u axis anti-parallel to the whitened relative velocity
  kPosition,       // zero velocity; u axis along the whitened moving point
  kFrameDependent  // zero velocity and zero offset; rotation left at identity
};

// Coordinates u-v in which the combined covariance is the identity and the
// moving reference aircraft travels toward -u.
struct WhitenedFrame {
  Mat2 transform;
  Mat2 m_matrix;  // (T^-1)^T (T^-1) = [[a, b], [b, c]]
  double du = 0.0;
  double dv = 0.0;
  FrameAlignment alignment = FrameAlignment::kVelocity;

  Vec2 apply(Vec2 p) const { return transform * p; }
};

// Symmetric inverse square root of an SPD 2x2 matrix.
Mat2 inverse_sqrt_spd(const Mat2& sigma);

// `dv` is the relative velocity of A with respect to B. `fallback` is the
// moving point position (-dp) used to orient the frame when dv vanishes.
// Throws kSingularCovariance.
WhitenedFrame build_transform(const Mat2& sigma_ab, Vec2 dv, double rho0 = kDefaultRho0,
                              Vec2 fallback = {});

struct SegmentCp {
  double value = 0.0;           // finite rectangle over [t_start, t_end]
  double value_infinite = 0.0;  // infinite strip
  double u_cs = 0.0;
  double u_cf = 0.0;
  double v_c = 0.0;
  FrameAlignment alignment = FrameAlignment::kVelocity;
};

SegmentCp cp_segment(const RelativeSegment& seg, double rho0 = kDefaultRho0);

}  // namespace trajcx
