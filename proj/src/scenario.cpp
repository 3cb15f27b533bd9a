#include "trajcx/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace trajcx {

using Json = nlohmann::ordered_json;

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const Diagnostic& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += d.path + ": " + d.message;
  }
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

class Reader {
 public:
  void issue(std::string path, std::string message) {
    diagnostics_.push_back({std::move(path), std::move(message)});
  }

  bool ok() const { return diagnostics_.empty(); }
  std::vector<Diagnostic>& diagnostics() { return diagnostics_; }

  // Finite number at object[key]; records an issue and returns false if absent
  // or mistyped.
  bool number(const Json& object, const char* key, const std::string& path, double& out,
              bool required = true) {
    const auto it = object.find(key);
    if (it == object.end()) {
      if (required) issue(path + "." + key, "missing required field");
      return false;
    }
    if (!it->is_number()) {
      issue(path + "." + key, "expected a number");
      return false;
    }
    out = it->get<double>();
    if (!std::isfinite(out)) {
      issue(path + "." + key, "must be finite");
      return false;
    }
    return true;
  }

  void unknown_keys(const Json& object, const std::set<std::string>& allowed,
                    const std::string& path) {
    for (const auto& [key, value] : object.items()) {
      if (!allowed.contains(key)) issue(path + "." + key, "unknown field");
    }
  }

 private:
  std::vector<Diagnostic> diagnostics_;
};

void read_aircraft(Reader& r, const Json& node, std::size_t index, FlightPlan& plan) {
  std::string path = "aircraft[" + std::to_string(index) + "]";
  if (!node.is_object()) {
    r.issue(path, "expected an object");
    return;
  }
  if (const auto it = node.find("id"); it == node.end()) {
    r.issue(path + ".id", "missing required field");
  } else if (!it->is_string() || it->get<std::string>().empty()) {
    r.issue(path + ".id", "expected a non-empty string");
  } else {
    plan.id = it->get<std::string>();
    path += " (id '" + plan.id + "')";
  }
  r.unknown_keys(node,
                 {"id", "sigma_along_nmi", "sigma_cross_nmi", "start_time_h", "waypoints",
                  "speeds_kn"},
                 path);

  if (r.number(node, "sigma_along_nmi", path, plan.sigma_along) && !(plan.sigma_along > 0.0)) {
    r.issue(path + ".sigma_along_nmi", "must be > 0");
  }
  if (r.number(node, "sigma_cross_nmi", path, plan.sigma_cross) && !(plan.sigma_cross > 0.0)) {
    r.issue(path + ".sigma_cross_nmi", "must be > 0");
  }
  r.number(node, "start_time_h", path, plan.start_time, false);

  bool waypoints_ok = false;
  if (const auto it = node.find("waypoints"); it == node.end()) {
    r.issue(path + ".waypoints", "missing required field");
  } else if (!it->is_array()) {
    r.issue(path + ".waypoints", "expected an array");
  } else {
    waypoints_ok = true;
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& wp = (*it)[i];
      const std::string wp_path = path + ".waypoints[" + std::to_string(i) + "]";
      if (!wp.is_object()) {
        r.issue(wp_path, "expected an object with x_nmi and y_nmi");
        waypoints_ok = false;
        continue;
      }
      r.unknown_keys(wp, {"x_nmi", "y_nmi"}, wp_path);
      Waypoint p;
      const bool x_ok = r.number(wp, "x_nmi", wp_path, p.x);
      const bool y_ok = r.number(wp, "y_nmi", wp_path, p.y);
      if (!x_ok || !y_ok) {
        waypoints_ok = false;
        continue;
      }
      if (!plan.waypoints.empty() && plan.waypoints.back() == p) {
        r.issue(wp_path, "coincides with the previous waypoint (zero-length segment)");
      }
      plan.waypoints.push_back(p);
    }
    if (waypoints_ok && plan.waypoints.size() < 2) {
      r.issue(path + ".waypoints", "needs at least two waypoints");
    }
  }

  if (const auto it = node.find("speeds_kn"); it == node.end()) {
    r.issue(path + ".speeds_kn", "missing required field");
  } else if (!it->is_array()) {
    r.issue(path + ".speeds_kn", "expected an array");
  } else {
    for (std::size_t j = 0; j < it->size(); ++j) {
      const Json& v = (*it)[j];
      const std::string s_path = path + ".speeds_kn[" + std::to_string(j) + "]";
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        r.issue(s_path, "expected a finite number");
        continue;
      }
      const double speed = v.get<double>();
      if (!(speed > 0.0)) r.issue(s_path, "must be > 0");
      plan.speeds.push_back(speed);
    }
    if (waypoints_ok && it->size() + 1 != plan.waypoints.size()) {
      r.issue(path + ".speeds_kn", "expected " + std::to_string(plan.waypoints.size() - 1) +
                                       " entries (one per segment), got " +
                                       std::to_string(it->size()));
    }
  }
}

}  // namespace

ScenarioError::ScenarioError(ErrorCode code, std::vector<Diagnostic> diagnostics)
    : Error(code, join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

Scenario parse_scenario(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at ...:" prefix.
    if (const auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ScenarioError(ErrorCode::kSyntaxError,
                        {{line_column(text, e.byte == 0 ? 0 : e.byte - 1), what}});
  }

  Reader r;
  Scenario scenario;
  if (!doc.is_object()) {
    r.issue("$", "top level must be an object");
    throw ScenarioError(ErrorCode::kValidationError, std::move(r.diagnostics()));
  }
  r.unknown_keys(doc, {"name", "description", "rho0_nmi", "aircraft"}, "$");
  for (const char* key : {"name", "description"}) {
    if (const auto it = doc.find(key); it != doc.end()) {
      if (!it->is_string()) {
        r.issue(std::string("$.") + key, "expected a string");
      } else {
        (std::string_view(key) == "name" ? scenario.name : scenario.description) =
            it->get<std::string>();
      }
    }
  }
  if (r.number(doc, "rho0_nmi", "$", scenario.rho0, false) && !(scenario.rho0 > 0.0)) {
    r.issue("$.rho0_nmi", "must be > 0");
  }

  const auto aircraft = doc.find("aircraft");
  if (aircraft == doc.end()) {
    r.issue("$.aircraft", "missing required field");
  } else if (!aircraft->is_array() || aircraft->empty()) {
    r.issue("$.aircraft", "expected a non-empty array");
  } else {
    std::map<std::string, std::size_t> first_use;
    for (std::size_t i = 0; i < aircraft->size(); ++i) {
      FlightPlan plan;
      read_aircraft(r, (*aircraft)[i], i, plan);
      if (!plan.id.empty()) {
        const auto [it, inserted] = first_use.emplace(plan.id, i);
        if (!inserted) {
          r.issue("aircraft[" + std::to_string(i) + "] (id '" + plan.id + "').id",
                  "duplicate id '" + plan.id + "' (first used by aircraft[" +
                      std::to_string(it->second) + "])");
        }
      }
      scenario.aircraft.push_back(std::move(plan));
    }
  }

  if (!r.ok()) throw ScenarioError(ErrorCode::kValidationError, std::move(r.diagnostics()));
  return scenario;
}

std::string serialize_scenario(const Scenario& scenario) {
  Json doc;
  if (!scenario.name.empty()) doc["name"] = scenario.name;
  if (!scenario.description.empty()) doc["description"] = scenario.description;
  doc["rho0_nmi"] = scenario.rho0;
  Json aircraft = Json::array();
  for (const FlightPlan& plan : scenario.aircraft) {
    Json node;
    node["id"] = plan.id;
    node["sigma_along_nmi"] = plan.sigma_along;
    node["sigma_cross_nmi"] = plan.sigma_cross;
    node["start_time_h"] = plan.start_time;
    Json waypoints = Json::array();
    for (const Waypoint& p : plan.waypoints) waypoints.push_back({{"x_nmi", p.x}, {"y_nmi", p.y}});
    node["waypoints"] = std::move(waypoints);
    node["speeds_kn"] = plan.speeds;
    aircraft.push_back(std::move(node));
  }
  doc["aircraft"] = std::move(aircraft);
  return doc.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScenarioError(ErrorCode::kValidationError, {{path, "cannot open file"}});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ScenarioError(ErrorCode::kValidationError, {{path, "cannot open file for writing"}});
  }
  out << serialize_scenario(scenario);
  if (!out) throw ScenarioError(ErrorCode::kValidationError, {{path, "write failed"}});
}

namespace {

constexpr double kExampleSpeed = 480.0;

FlightPlan make_plan(std::string id, std::vector<Waypoint> waypoints, double sigma_along,
                     double sigma_cross, double speed = kExampleSpeed) {
  FlightPlan plan;
  plan.id = std::move(id);
  plan.speeds.assign(waypoints.size() - 1, speed);
  plan.waypoints = std::move(waypoints);
  plan.sigma_along = sigma_along;
  plan.sigma_cross = sigma_cross;
  return plan;
}

// Two-leg shapes shared by examples 1-3; both aircraft reach the turn point
// (0,0) after 100 nmi.
FlightPlan two_leg_a() { return make_plan("A", {{-100, 0}, {0, 0}, {80, 60}}, 3.0, 1.5); }

FlightPlan shifted(FlightPlan plan, Vec2 offset) {
  for (Waypoint& p : plan.waypoints) p = p + offset;
  return plan;
}

}  // namespace

Scenario gen_example(int index) {
  Scenario s;
  s.rho0 = kDefaultRho0;
  switch (index) {
    case 1:
      s.name = "Flight Plan 1";
      s.description = "Two 2-leg trajectories turning at a shared waypoint at the same time.";
      s.aircraft = {two_leg_a(), make_plan("B", {{0, -100}, {0, 0}, {60, 80}}, 1.5, 0.75)};
      break;
    case 2:
      s.name = "Flight Plan 2";
      s.description = "Flight Plan 1 shapes with the second aircraft shifted 15 nmi east.";
      s.aircraft = {two_leg_a(),
                    make_plan("B", {{15, -100}, {15, 0}, {75, 80}}, 1.5, 0.75)};
      break;
    case 3:
      s.name = "Flight Plan 3";
      s.description = "Parallel 2-leg trajectories 60 nmi apart at all times.";
      s.aircraft = {two_leg_a(), shifted(two_leg_a(), {0, 60})};
      s.aircraft[1].id = "B";
      s.aircraft[1].sigma_along = 1.5;
      s.aircraft[1].sigma_cross = 0.75;
      break;
    case 4: {
      s.name = "Flight Plan 4";
      s.description = "Three 1-leg trajectories crossing the origin at the same instant.";
      const char* ids[] = {"A", "B", "C"};
      for (int k = 0; k < 3; ++k) {
        const double theta = std::numbers::pi / 2.0 + k * 2.0 * std::numbers::pi / 3.0;
        const Waypoint from{100.0 * std::cos(theta), 100.0 * std::sin(theta)};
        const double sa = k == 0 ? 3.0 : 1.5;
        s.aircraft.push_back(make_plan(ids[k], {from, -from}, sa, sa / 2.0));
      }
      break;
    }
    case 5:
      s.name = "Flight Plan 5";
      s.description = "Three parallel 1-leg trajectories 50 nmi apart.";
      s.aircraft = {make_plan("A", {{-100, 0}, {100, 0}}, 3.0, 1.5),
                    make_plan("B", {{-100, 50}, {100, 50}}, 1.5, 0.75),
                    make_plan("C", {{-100, 100}, {100, 100}}, 1.5, 0.75)};
      break;
    default:
      throw Error(ErrorCode::kIndexOutOfRange,
                  "example index " + std::to_string(index) + " outside 1.." +
                      std::to_string(kExampleCount));
  }
  return s;
}

Scenario parallel_offset_pair(double offset) {
  const double sigma = std::numbers::sqrt2 / 2.0;
  Scenario s;
  s.name = "parallel offset " + std::to_string(offset) + " nmi";
  s.aircraft = {make_plan("A", {{0, 0}, {100, 0}}, sigma, sigma, 400.0),
                make_plan("B", {{100, offset}, {0, offset}}, sigma, sigma, 400.0)};
  return s;
}

std::vector<Trajectory> build_trajectories(const Scenario& scenario) {
  std::vector<Trajectory> out;
  out.reserve(scenario.aircraft.size());
  for (const FlightPlan& plan : scenario.aircraft) out.push_back(build_trajectory(plan));
  return out;
}

}  // namespace trajcx
