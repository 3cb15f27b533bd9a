#include "trajcx/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "trajcx/error.hpp"

namespace trajcx {

std::string_view to_string(PairField field) {
  switch (field) {
    case PairField::kCpSum: return "cpsum";
    case PairField::kCpWeight: return "cpweight";
    case PairField::kCpInvPie: return "cpinvpie";
  }
  return "cpinvpie";
}

std::optional<PairField> parse_pair_field(std::string_view name) {
  if (name == "cpsum") return PairField::kCpSum;
  if (name == "cpweight") return PairField::kCpWeight;
  if (name == "cpinvpie") return PairField::kCpInvPie;
  return std::nullopt;
}

double select(const PairComplexity& pc, PairField field) {
  switch (field) {
    case PairField::kCpSum: return pc.cpsum;
    case PairField::kCpWeight: return pc.cpweight;
    case PairField::kCpInvPie: return pc.cpinvpie;
  }
  return pc.cpinvpie;
}

double PairComplexity::max_segment_cp() const {
  double m = 0.0;
  for (const SegmentIndicator& s : segment_cps) m = std::max(m, s.cp.value);
  return m;
}

double inverse_product(std::span<const double> probabilities) {
  double log_survival = 0.0;
  for (double p : probabilities) log_survival += std::log1p(-p);
  // Adding +0.0 turns the -0.0 of an all-zero product into +0.0.
  return std::clamp(-std::expm1(log_survival) + 0.0, 0.0, 1.0);
}

PairComplexity pair_complexity(const RelativeTrajectory& rel, double rho0) {
  PairComplexity out;
  out.pair = rel.pair;
  if (rel.segments.empty()) {
    out.empty_overlap = true;
    return out;
  }
  out.segment_cps.reserve(rel.segments.size());
  std::vector<double> values;
  values.reserve(rel.segments.size());
  for (const RelativeSegment& seg : rel.segments) {
    SegmentIndicator ind{seg.t_start, seg.t_end, cp_segment(seg, rho0)};
    out.zero_velocity |= ind.cp.alignment != FrameAlignment::kVelocity;
    out.frame_dependent |= ind.cp.alignment == FrameAlignment::kFrameDependent;
    values.push_back(ind.cp.value);
    out.segment_cps.push_back(ind);
  }
  out.overlap = rel.segments.back().t_end - rel.segments.front().t_start;

  double weighted = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    out.cpsum += values[k];
    weighted += (rel.segments[k].duration() / out.overlap) * values[k];
  }
  // The bounds below hold exactly in real arithmetic; the clamps only absorb
  // the last-ulp rounding of the weighted sum and the log/exp round trip.
  const double max_cp = *std::max_element(values.begin(), values.end());
  out.cpweight = std::min(weighted, max_cp);
  out.cpinvpie = std::clamp(inverse_product(values), max_cp, std::min(out.cpsum, 1.0));
  return out;
}

PairComplexity pair_complexity(const Trajectory& a, const Trajectory& b, double rho0) {
  const TimeWindow window = common_window(a, b);
  if (!(window.lo < window.hi)) {
    RelativeTrajectory empty;
    empty.pair = {a.id, b.id};
    return pair_complexity(empty, rho0);
  }
  return pair_complexity(relative_trajectory(a, b), rho0);
}

void aggregate(ScenarioComplexity& scenario, PairField field) {
  scenario.field = field;
  scenario.agg_max = 0.0;
  scenario.agg_sum = 0.0;
  scenario.invprod_clamped = false;
  std::vector<double> clamped;
  clamped.reserve(scenario.pairs.size());
  for (const PairComplexity& pc : scenario.pairs) {
    const double v = select(pc, field);
    scenario.agg_max = std::max(scenario.agg_max, v);
    scenario.agg_sum += v;
    if (v > 1.0) scenario.invprod_clamped = true;
    clamped.push_back(std::min(v, 1.0));
  }
  scenario.agg_mean =
      scenario.pairs.empty() ? 0.0 : scenario.agg_sum / static_cast<double>(scenario.pairs.size());
  scenario.agg_invprod = inverse_product(clamped);
}

ScenarioComplexity scenario_complexity(std::span<const Trajectory> trajectories,
                                       const ScenarioOptions& options) {
  if (trajectories.size() < 2) {
    throw Error(ErrorCode::kFewerThanTwoAircraft,
                "scenario needs at least two aircraft, got " +
                    std::to_string(trajectories.size()));
  }
  // Canonical order by id makes the result independent of input order.
  std::vector<const Trajectory*> sorted;
  sorted.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const Trajectory* a, const Trajectory* b) { return a->id < b->id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->id == sorted[i - 1]->id) {
      throw Error(ErrorCode::kDuplicateId, "duplicate aircraft id '" + sorted[i]->id + "'");
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) index_pairs.emplace_back(i, j);
  }

  ScenarioComplexity out;
  out.pairs.resize(index_pairs.size());
  std::vector<std::exception_ptr> failures(index_pairs.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < index_pairs.size(); k += stride) {
      const auto [i, j] = index_pairs[k];
      try {
        out.pairs[k] = pair_complexity(*sorted[i], *sorted[j], options.rho0);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const std::size_t width =
      std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(1, index_pairs.size()));
  if (width == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(width);
    for (std::size_t w = 0; w < width; ++w) pool.emplace_back(work, w, width);
  }
  // Report the first failure in canonical pair order.
  for (const std::exception_ptr& e : failures) {
    if (e) std::rethrow_exception(e);
  }

  out.invprod_dependent_pairs = sorted.size() > 2;
  aggregate(out, options.field);
  return out;
}

}  // namespace trajcx
