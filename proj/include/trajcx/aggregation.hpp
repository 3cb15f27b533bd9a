#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trajcx/conflict.hpp"
#include "trajcx/relative.hpp"
#include "trajcx/trajectory.hpp"

namespace trajcx {

struct SegmentIndicator {
  double t_start = 0.0;
  double t_end = 0.0;
  SegmentCp cp;
};

struct PairComplexity {
  std::pair<std::string, std::string> pair;
  std::vector<SegmentIndicator> segment_cps;
  double cpsum = 0.0;
  double cpweight = 0.0;
  double cpinvpie = 0.0;
  double overlap = 0.0;  // hours
  bool empty_overlap = false;
  // Some segment had zero relative velocity (frame oriented by position).
  bool zero_velocity = false;
  // Some segment had zero velocity and zero offset; its rotation is arbitrary.
  bool frame_dependent = false;

  double max_segment_cp() const;
};

enum class PairField { kCpSum, kCpWeight, kCpInvPie };

std::string_view to_string(PairField field);
std::optional<PairField> parse_pair_field(std::string_view name);
double select(const PairComplexity& pc, PairField field);

// 1 - prod(1 - p_i), evaluated through log1p/expm1 so tiny p survive.
double inverse_product(std::span<const double> probabilities);

PairComplexity pair_complexity(const RelativeTrajectory& rel, double rho0 = kDefaultRho0);

// Handles schedules without overlap by returning an all-zero, flagged result.
PairComplexity pair_complexity(const Trajectory& a, const Trajectory& b,
                               double rho0 = kDefaultRho0);

struct ScenarioComplexity {
  std::vector<PairComplexity> pairs;  // ids ascending, a < b within each pair
  PairField field = PairField::kCpInvPie;
  double agg_max = 0.0;
  double agg_sum = 0.0;
  double agg_mean = 0.0;
  double agg_invprod = 0.0;
  // Pair values were clamped to 1 before the inverse product (cpsum field).
  bool invprod_clamped = false;
  // Pairs share aircraft, so the inverse product treats dependent pairs as
  // independent.
  bool invprod_dependent_pairs = false;
};

struct ScenarioOptions {
  double rho0 = kDefaultRho0;
  PairField field = PairField::kCpInvPie;
  unsigned threads = 1;
};

// Throws kFewerThanTwoAircraft, kDuplicateId.
ScenarioComplexity scenario_complexity(std::span<const Trajectory> trajectories,
                                       const ScenarioOptions& options = {});

// Recompute the four aggregates for another field without redoing pairs.
void aggregate(ScenarioComplexity& scenario, PairField field);

}  // namespace trajcx
