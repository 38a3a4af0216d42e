#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "scoutplan/error.hpp"
#include "scoutplan/grid_io.hpp"
#include "scoutplan/mission.hpp"

namespace scoutplan {

struct LoadedTrajectory {
  Trajectory3D trajectory;
  TrajectoryMetrics metrics;
  nlohmann::json config_echo;
};

inline nlohmann::json metrics_to_json(const TrajectoryMetrics& m) {
  return {{"length_2d", m.length_2d},
          {"length_3d", m.length_3d},
          {"max_step_2d", m.max_step_2d},
          {"max_slope", m.max_slope},
          {"min_clearance_value", m.min_clearance_value},
          {"waypoint_count", m.waypoint_count}};
}

inline TrajectoryMetrics metrics_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedFile, "'metrics' must be an object");
  TrajectoryMetrics m;
  m.length_2d = detail::json_number(j, "length_2d");
  m.length_3d = detail::json_number(j, "length_3d");
  m.max_step_2d = detail::json_number(j, "max_step_2d");
  m.max_slope = detail::json_number(j, "max_slope");
  m.min_clearance_value = detail::json_number(j, "min_clearance_value");
  if (!j.contains("waypoint_count") || !j["waypoint_count"].is_number_integer())
    throw Error(ErrorCode::MalformedFile, "missing field 'waypoint_count'");
  m.waypoint_count = j["waypoint_count"].get<int>();
  return m;
}

inline nlohmann::json trajectory_to_json(const Trajectory3D& traj, const TrajectoryMetrics& metrics,
                                         const nlohmann::json& config_echo) {
  nlohmann::json points = nlohmann::json::array();
  for (const Point3& p : traj.points) points.push_back({p.x, p.y, p.z});
  return {{"points", points}, {"metrics", metrics_to_json(metrics)}, {"config_echo", config_echo}};
}

inline void save_trajectory(const Trajectory3D& traj, const TrajectoryMetrics& metrics,
                            const nlohmann::json& config_echo, const std::filesystem::path& path) {
  detail::write_text_file(path, trajectory_to_json(traj, metrics, config_echo).dump(2) + "\n");
}

inline LoadedTrajectory trajectory_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedFile, "trajectory document must be an object");
  for (const char* key : {"points", "metrics", "config_echo"})
    if (!j.contains(key))
      throw Error(ErrorCode::MalformedFile, std::string("missing field '") + key + "'");
  const auto& points = j["points"];
  if (!points.is_array() || points.size() < 2)
    throw Error(ErrorCode::MalformedFile, "'points' must be an array of at least 2 points");

  LoadedTrajectory out;
  out.trajectory.points.reserve(points.size());
  for (const auto& p : points) {
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() ||
        !p[2].is_number())
      throw Error(ErrorCode::MalformedFile, "each point must be [x, y, z]");
    const Point3 q{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
    if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z))
      throw Error(ErrorCode::MalformedFile, "points must be finite");
    out.trajectory.points.push_back(q);
    out.trajectory.path.waypoints.push_back(q.xy());
    out.trajectory.profile.heights.push_back(q.z);
  }
  out.metrics = metrics_from_json(j["metrics"]);
  if (out.metrics.waypoint_count != static_cast<int>(out.trajectory.points.size()))
    throw Error(ErrorCode::MalformedFile,
                "waypoint_count " + std::to_string(out.metrics.waypoint_count) +
                    " does not match stored point count " +
                    std::to_string(out.trajectory.points.size()));
  out.config_echo = j["config_echo"];
  return out;
}

inline LoadedTrajectory load_trajectory(const std::filesystem::path& path) {
  return trajectory_from_json(detail::read_json_file(path));
}

}  // namespace scoutplan
