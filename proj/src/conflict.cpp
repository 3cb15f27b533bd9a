#include "trajcx/conflict.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trajcx/error.hpp"

namespace trajcx {

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_interval(double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  if (lo > kTailCutoff || hi < -kTailCutoff) return 0.0;
  double p;
  if (lo >= 0.0) {
    p = phi(-lo) - phi(-hi);
  } else if (hi <= 0.0) {
    p = phi(hi) - phi(lo);
  } else {
    p = 1.0 - phi(lo) - phi(-hi);
  }
  return std::clamp(p, 0.0, 1.0);
}

Mat2 inverse_sqrt_spd(const Mat2& sigma) {
  // sqrt(S) = (S + sqrt(det) I) / sqrt(tr + 2 sqrt(det)) for SPD 2x2; its
  // inverse follows from the adjugate.
  const double s = std::sqrt(sigma.det());
  const double t = std::sqrt(sigma.trace() + 2.0 * s);
  const double k = 1.0 / (s * t);
  const double off = -0.5 * (sigma.xy + sigma.yx) * k;
  return {(sigma.yy + s) * k, off, off, (sigma.xx + s) * k};
}

namespace {

// Rotation taking w onto the negative first axis.
Mat2 align_to_negative_u(Vec2 w) {
  const double len = norm(w);
  const double c = -w.x / len;
  const double s = w.y / len;
  return {c, -s, s, c};
}

}  // namespace

WhitenedFrame build_transform(const Mat2& sigma_ab, Vec2 dv, double rho0, Vec2 fallback) {
  const double det = sigma_ab.det();
  if (!(det >= kSingularDeterminant) || !(sigma_ab.xx > 0.0)) {
    throw Error(ErrorCode::kSingularCovariance,
                "combined covariance is singular (det = " + std::to_string(det) + ")");
  }
  const Mat2 whiten = inverse_sqrt_spd(sigma_ab);

  WhitenedFrame frame;
  Mat2 rotation = Mat2::identity();
  if (norm(dv) >= kZeroVelocity) {
    rotation = align_to_negative_u(whiten * (-dv));
  } else if (norm(fallback) >= kZeroVelocity) {
    // Place the stationary moving point on +u.
    rotation = align_to_negative_u(-(whiten * fallback));
    frame.alignment = FrameAlignment::kPosition;
  } else {
    frame.alignment = FrameAlignment::kFrameDependent;
  }
  frame.transform = rotation * whiten;

  const Mat2 inv = frame.transform.inverse();
  frame.m_matrix = inv.transposed() * inv;
  const double a = frame.m_matrix.xx;
  const double b = 0.5 * (frame.m_matrix.xy + frame.m_matrix.yx);
  const double c = frame.m_matrix.yy;
  const double denom = a * c - b * b;
  frame.dv = rho0 * std::sqrt(a / denom);
  frame.du = rho0 * std::sqrt(c / denom);
  return frame;
}

SegmentCp cp_segment(const RelativeSegment& seg, double rho0) {
  const WhitenedFrame frame = build_transform(seg.sigma_ab, seg.dv, rho0, -seg.dp_start);
  const Vec2 start = frame.apply(-seg.dp_start);
  const Vec2 end = frame.apply(-seg.dp_end);

  SegmentCp out;
  out.alignment = frame.alignment;
  out.u_cs = start.x;
  out.u_cf = end.x;
  out.v_c = start.y;
  // Rounding can leave u_cf a hair above u_cs on near-zero-length segments.
  const double u_hi = std::max(out.u_cs, out.u_cf);
  const double u_lo = std::min(out.u_cs, out.u_cf);
  out.u_cf = u_lo;
  out.u_cs = u_hi;

  const double lateral = normal_interval(out.v_c - frame.dv, out.v_c + frame.dv);
  const double along = normal_interval(u_lo - frame.du, u_hi + frame.du);
  out.value_infinite = lateral;
  out.value = lateral * along;
  return out;
}

}  // namespace trajcx
