#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "trajcx/conflict.hpp"
#include "trajcx/error.hpp"
#include "trajcx/trajectory.hpp"

namespace trajcx {

struct Scenario {
  std::string name;
  std::string description;
  double rho0 = kDefaultRho0;
  std::vector<FlightPlan> aircraft;
};

// One problem found while reading a scenario document. `path` addresses the
// offending field, e.g. "aircraft[1] (id 'B').sigma_along_nmi", or gives
// "line L, column C" for syntax errors.
struct Diagnostic {
  std::string path;
  std::string message;
};

class ScenarioError : public Error {
 public:
  ScenarioError(ErrorCode code, std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Document format (JSON):
//   {
//     "name": "...", "description": "...",          optional
//     "rho0_nmi": 5,                                   optional, > 0
//     "aircraft": [
//       { "id": "A", "sigma_along_nmi": 3, "sigma_cross_nmi": 1.5,
//         "start_time_h": 0,                           optional
//         "waypoints": [{"x_nmi": 0, "y_nmi": 0}, ...],
//         "speeds_kn": [480, ...] }
//     ]
//   }
// Throws ScenarioError with kSyntaxError or kValidationError; validation
// collects every problem before throwing.
Scenario parse_scenario(std::string_view text);

std::string serialize_scenario(const Scenario& scenario);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

inline constexpr int kExampleCount = 5;

// Frozen reconstructions of the five demonstration flight plans:
//   1  two 2-leg tracks sharing a turn waypoint, reached simultaneously
//   2  same shapes, second aircraft shifted 15 nmi so the crossing misses
//   3  same shapes flown 60 nmi apart at all times
//   4  three 1-leg tracks crossing one point at the same instant
//   5  three parallel 1-leg tracks 50 nmi apart
// Throws kIndexOutOfRange outside 1..5.
Scenario gen_example(int index);

// Opposite-direction pair at 400 kn over 100 nmi, second track offset
// laterally by `offset` nmi; each aircraft has sigma 1/sqrt(2) on both axes
// so the combined covariance is the identity.
Scenario parallel_offset_pair(double offset);

std::vector<Trajectory> build_trajectories(const Scenario& scenario);

}  // namespace trajcx
