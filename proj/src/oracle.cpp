#include "trajcx/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>

#include "trajcx/error.hpp"

namespace trajcx::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Lower Cholesky factor of an SPD matrix.
Mat2 cholesky(const Mat2& s) {
  const double l11 = std::sqrt(s.xx);
  const double l21 = 0.5 * (s.xy + s.yx) / l11;
  const double l22 = std::sqrt(s.yy - l21 * l21);
  return {l11, 0.0, l21, l22};
}

void require_spd(const Mat2& s) {
  if (!(s.xx > 0.0) || !(s.det() >= kSingularDeterminant)) {
    throw Error(ErrorCode::kSingularCovariance, "oracle: covariance is not positive definite");
  }
}

// Radially integrated standard normal along one whitened direction: the
// ray r*u enters the transformed disc at r1 and leaves at r2, and the 2D
// density integrates in closed form over r in [r1, r2].
struct RayMass {
  Mat2 chol;
  Vec2 centre;
  double excess;  // |centre|^2 - rho0^2, negative when the origin is inside

  double operator()(double angle) const {
    const Vec2 q = chol * Vec2{std::cos(angle), std::sin(angle)};
    const double a = dot(q, q);
    const double b = dot(q, centre);
    double r1 = 0.0;
    double r2 = 0.0;
    if (excess < 0.0) {
      r2 = (b + std::sqrt(b * b - a * excess)) / a;
    } else {
      const double disc = b * b - a * excess;
      if (disc <= 0.0 || b <= 0.0) return 0.0;
      r2 = (b + std::sqrt(disc)) / a;
      r1 = excess / (a * r2);
    }
    return std::exp(-0.5 * r1 * r1) - std::exp(-0.5 * r2 * r2);
  }
};

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
double gauss_kronrod(const F& f, double lo, double hi, double& error) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(centre);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kWgk[j] * sum;
    // Gauss nodes are the odd-indexed Kronrod nodes.
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  error = std::fabs((kronrod - gauss) * half);
  return kronrod * half;
}

template <class F>
double adaptive(const F& f, double lo, double hi, double tol, int depth) {
  double error = 0.0;
  const double whole = gauss_kronrod(f, lo, hi, error);
  if (error <= tol || depth >= 40) return whole;
  const double mid = 0.5 * (lo + hi);
  return adaptive(f, lo, mid, 0.5 * tol, depth + 1) + adaptive(f, mid, hi, 0.5 * tol, depth + 1);
}

// Angles of rays tangent to the transformed disc. The radial integrand has a
// square-root kink there, so they become panel boundaries.
std::vector<double> tangent_angles(const Mat2& chol, Vec2 centre, double excess) {
  std::vector<double> out;
  if (excess < 0.0) return out;
  // Discriminant as a quadratic form in the unit direction.
  const Vec2 g = chol.transposed() * centre;
  const Mat2 gram = chol.transposed() * chol;
  const double q11 = g.x * g.x - excess * gram.xx;
  const double q22 = g.y * g.y - excess * gram.yy;
  const double q12 = g.x * g.y - excess * 0.5 * (gram.xy + gram.yx);
  const double mean = 0.5 * (q11 + q22);
  const double amp = std::hypot(0.5 * (q11 - q22), q12);
  if (!(amp > std::fabs(mean))) return out;
  const double shift = std::atan2(q12, 0.5 * (q11 - q22));
  const double spread = std::acos(-mean / amp);
  for (double two_phi : {shift + spread, shift - spread}) {
    for (double base : {0.5 * two_phi, 0.5 * two_phi + std::numbers::pi}) {
      double a = std::fmod(base, kTwoPi);
      if (a < 0.0) a += kTwoPi;
      out.push_back(a);
    }
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Standard normal pair for trial `index` of stream `key` (Box-Muller).
Vec2 normal_pair(std::uint64_t key, std::uint64_t index) {
  const std::uint64_t a = splitmix64(key ^ splitmix64(2 * index));
  const std::uint64_t b = splitmix64(key ^ splitmix64(2 * index + 1));
  constexpr double kScale = 0x1.0p-53;
  const double u1 = static_cast<double>((a >> 11) + 1) * kScale;  // (0, 1]
  const double u2 = static_cast<double>(b >> 11) * kScale;        // [0, 1)
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

}  // namespace

double cp_instant_exact(Vec2 dp, const Mat2& sigma_ab, double rho0, double tol) {
  require_spd(sigma_ab);
  if (!(tol > 0.0) || tol > 1e-3) {
    throw Error(ErrorCode::kValidationError, "oracle: tol must lie in (0, 1e-3]");
  }
  const Mat2 chol = cholesky(sigma_ab);
  const Vec2 centre = -dp;
  const double excess = dot(centre, centre) - rho0 * rho0;
  const RayMass mass{chol, centre, excess};

  std::vector<double> cuts = tangent_angles(chol, centre, excess);
  cuts.push_back(0.0);
  cuts.push_back(kTwoPi);
  std::sort(cuts.begin(), cuts.end());

  // The angular integral is divided by 2*pi at the end.
  const double panel_tol = tol * kTwoPi / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] > cuts[i - 1]) total += adaptive(mass, cuts[i - 1], cuts[i], panel_tol, 0);
  }
  return std::clamp(total / kTwoPi, 0.0, 1.0);
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double s = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return norm(p - (a + s * ab));
}

McEstimate cp_segment_mc(const RelativeSegment& seg, double rho0, std::uint64_t samples,
                         std::uint64_t seed, unsigned threads) {
  require_spd(seg.sigma_ab);
  if (samples < 10000) {
    throw Error(ErrorCode::kValidationError, "oracle: at least 10000 samples required");
  }
  const Mat2 chol = cholesky(seg.sigma_ab);
  const std::uint64_t key = splitmix64(seed);

  auto count = [&](std::uint64_t first, std::uint64_t last) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = first; i < last; ++i) {
      const Vec2 eps = chol * normal_pair(key, i);
      if (point_segment_distance(-eps, seg.dp_start, seg.dp_end) < rho0) ++hits;
    }
    return hits;
  };

  const std::uint64_t width = std::max(1u, threads);
  std::vector<std::uint64_t> partial(width, 0);
  if (width == 1) {
    partial[0] = count(0, samples);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < width; ++w) {
      pool.emplace_back([&, w] {
        partial[w] = count(samples * w / width, samples * (w + 1) / width);
      });
    }
  }

  McEstimate out;
  out.samples = samples;
  for (std::uint64_t h : partial) out.hits += h;
  const double n = static_cast<double>(samples);
  out.estimate = static_cast<double>(out.hits) / n;
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / n);
  return out;
}

PairMcEstimate pair_cp_mc(const RelativeTrajectory& rel, double rho0, std::uint64_t samples,
                          std::uint64_t seed, unsigned threads) {
  PairMcEstimate out;
  double survival = 1.0;
  for (std::size_t k = 0; k < rel.segments.size(); ++k) {
    const std::uint64_t segment_seed = splitmix64(seed ^ splitmix64(0xC0FFEEULL + k));
    out.segments.push_back(cp_segment_mc(rel.segments[k], rho0, samples, segment_seed, threads));
    survival *= 1.0 - out.segments.back().estimate;
  }
  out.combined = 1.0 - survival;
  // d(combined)/d(est_k) = prod over j != k of (1 - est_j).
  double variance = 0.0;
  for (std::size_t k = 0; k < out.segments.size(); ++k) {
    double others = 1.0;
    for (std::size_t j = 0; j < out.segments.size(); ++j) {
      if (j != k) others *= 1.0 - out.segments[j].estimate;
    }
    variance += others * others * out.segments[k].std_error * out.segments[k].std_error;
  }
  out.combined_stderr = std::sqrt(variance);
  return out;
}

}  // namespace trajcx::oracle
