#pragma once

#include <cmath>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scoutplan/altitude_profile.hpp"
#include "scoutplan/error.hpp"
#include "scoutplan/grid_io.hpp"
#include "scoutplan/planner2d.hpp"

namespace scoutplan {

// Planner + altitude tunables as read from a JSON config file. Every field is
// optional; unset fields fall back to the documented defaults, several of
// which depend on the map (resolution and size). Unknown keys are rejected.
struct CliConfig {
  std::optional<double> c_s, w1_base, w2, weight_gain, inflation_radius, occupancy_threshold,
      goal_tolerance, stall_eps, h, c_z, z_max;
  std::optional<int> max_steps, stall_window;
  std::vector<PlanarPoint> intermediate_waypoints;

  static CliConfig from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
    static const char* known[] = {"c_s",
                                  "w1_base",
                                  "w2",
                                  "weight_gain",
                                  "inflation_radius",
                                  "occupancy_threshold",
                                  "goal_tolerance",
                                  "stall_eps",
                                  "h",
                                  "c_z",
                                  "z_max",
                                  "max_steps",
                                  "stall_window",
                                  "intermediate_waypoints"};
    for (const auto& [key, _] : j.items()) {
      bool ok = false;
      for (const char* k : known)
        if (key == k) ok = true;
      if (!ok) throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
    }

    CliConfig c;
    auto opt_num = [&](const char* key) -> std::optional<double> {
      if (!j.contains(key)) return std::nullopt;
      if (!j[key].is_number())
        throw Error(ErrorCode::InvalidConfig, std::string("'") + key + "' must be a number");
      return j[key].get<double>();
    };
    auto opt_int = [&](const char* key) -> std::optional<int> {
      if (!j.contains(key)) return std::nullopt;
      if (!j[key].is_number_integer())
        throw Error(ErrorCode::InvalidConfig, std::string("'") + key + "' must be an integer");
      return j[key].get<int>();
    };
    c.c_s = opt_num("c_s");
    c.w1_base = opt_num("w1_base");
    c.w2 = opt_num("w2");
    c.weight_gain = opt_num("weight_gain");
    c.inflation_radius = opt_num("inflation_radius");
    c.occupancy_threshold = opt_num("occupancy_threshold");
    c.goal_tolerance = opt_num("goal_tolerance");
    c.stall_eps = opt_num("stall_eps");
    c.h = opt_num("h");
    c.c_z = opt_num("c_z");
    c.z_max = opt_num("z_max");
    c.max_steps = opt_int("max_steps");
    c.stall_window = opt_int("stall_window");
    if (j.contains("intermediate_waypoints")) {
      const auto& arr = j["intermediate_waypoints"];
      if (!arr.is_array())
        throw Error(ErrorCode::InvalidConfig, "'intermediate_waypoints' must be an array");
      for (const auto& wp : arr) {
        if (!wp.is_array() || wp.size() != 2 || !wp[0].is_number() || !wp[1].is_number())
          throw Error(ErrorCode::InvalidConfig, "each intermediate waypoint must be [x, y]");
        c.intermediate_waypoints.push_back({wp[0].get<double>(), wp[1].get<double>()});
      }
    }
    return c;
  }

  static CliConfig load(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
      j = detail::read_json_file(path);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::IoError) throw;
      throw Error(ErrorCode::InvalidConfig, e.detail());
    }
    return from_json(j);
  }

  PlannerConfig resolve_planner(double resolution, int nx, int ny) const {
    PlannerConfig p;
    p.c_s = c_s.value_or(std::sqrt(2.0) * resolution);
    p.w1_base = w1_base.value_or(1.0);
    p.w2 = w2.value_or(5.0);
    p.weight_gain = weight_gain.value_or(4.0);
    p.inflation_radius = inflation_radius.value_or(resolution);
    p.occupancy_threshold = occupancy_threshold.value_or(0.5);
    p.goal_tolerance = goal_tolerance.value_or(p.c_s);
    p.max_steps = max_steps.value_or(10 * (nx + ny));
    p.stall_window = stall_window.value_or(15);
    p.stall_eps = stall_eps.value_or(0.1 * p.c_s);
    p.intermediate_waypoints = intermediate_waypoints;
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw Error(ErrorCode::InvalidConfig, e.what());
    }
    return p;
  }

  AltitudeConfig resolve_altitude() const {
    AltitudeConfig a;
    a.h = h.value_or(35.0);
    a.c_z = c_z.value_or(1.0);
    a.z_max = z_max.value_or(100.0);
    // z_start / z_end come from the mission start/target; validated there.
    return a;
  }
};

// Every effective parameter, including defaulted ones, for reproducibility.
inline nlohmann::json config_echo(const PlannerConfig& p, const AltitudeConfig& a,
                                  const Point3& start, const Point3& target) {
  nlohmann::json wps = nlohmann::json::array();
  for (const PlanarPoint& w : p.intermediate_waypoints) wps.push_back({w.x, w.y});
  return {{"c_s", p.c_s},
          {"w1_base", p.w1_base},
          {"w2", p.w2},
          {"weight_gain", p.weight_gain},
          {"inflation_radius", p.inflation_radius},
          {"occupancy_threshold", p.occupancy_threshold},
          {"goal_tolerance", p.goal_tolerance},
          {"max_steps", p.max_steps},
          {"stall_window", p.stall_window},
          {"stall_eps", p.stall_eps},
          {"intermediate_waypoints", wps},
          {"h", a.h},
          {"c_z", a.c_z},
          {"z_max", a.z_max},
          {"z_start", a.z_start},
          {"z_end", a.z_end},
          {"start", {start.x, start.y, start.z}},
          {"target", {target.x, target.y, target.z}}};
}

}  // namespace scoutplan
