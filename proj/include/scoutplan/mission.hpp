#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "scoutplan/altitude_profile.hpp"
#include "scoutplan/error.hpp"
#include "scoutplan/geometry.hpp"
#include "scoutplan/occupancy_grid.hpp"
#include "scoutplan/planner2d.hpp"

namespace scoutplan {

struct MissionSpec {
  Point3 start;
  Point3 target;
  PlannerConfig planner;
  AltitudeConfig altitude;  // z_start / z_end are overwritten from start/target
};

struct TrajectoryMetrics {
  double length_2d = 0.0;
  double length_3d = 0.0;
  double max_step_2d = 0.0;
  double max_slope = 0.0;
  // Worst (largest) occupancy sampled along the path on the inflated grid.
  double min_clearance_value = 0.0;
  int waypoint_count = 0;
};

struct Trajectory3D {
  std::vector<Point3> points;
  Path2D path;
  AltitudeProfile profile;
};

// Pipeline failure wrapping the stage that raised it.
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, ErrorCode code, std::string detail, Path2D partial = {})
      : Error(code, std::move(detail)), stage_(std::move(stage)), partial_(std::move(partial)) {}

  const std::string& stage() const { return stage_; }
  const Path2D& partial_path() const { return partial_; }

 private:
  std::string stage_;
  Path2D partial_;
};

struct StageLogEntry {
  std::string stage;
  std::string detail;
};

struct MissionResult {
  Trajectory3D trajectory;
  TrajectoryMetrics metrics;
  OccupancyGrid2D inflated;
  std::vector<StageLogEntry> log;
};

// Polyline lengths, step extrema, and clearance. Clearance samples every
// waypoint plus 10 evenly spaced interior points per segment: the step cap
// lets a segment cross a cell corner its endpoints avoid.
inline TrajectoryMetrics compute_metrics(const Trajectory3D& traj,
                                         const OccupancyGrid2D& grid_inflated,
                                         const PlannerConfig& /*config*/) {
  TrajectoryMetrics m;
  m.waypoint_count = static_cast<int>(traj.points.size());
  for (std::size_t t = 0; t + 1 < traj.points.size(); ++t) {
    const Point3& a = traj.points[t];
    const Point3& b = traj.points[t + 1];
    const double step2 = distance(a.xy(), b.xy());
    m.length_2d += step2;
    m.length_3d += distance(a, b);
    m.max_step_2d = std::max(m.max_step_2d, step2);
    m.max_slope = std::max(m.max_slope, std::abs(b.z - a.z));
  }
  for (const Point3& p : traj.points)
    m.min_clearance_value = std::max(m.min_clearance_value, occupancy_at(grid_inflated, p.xy()));
  for (std::size_t t = 0; t + 1 < traj.points.size(); ++t) {
    const PlanarPoint a = traj.points[t].xy();
    const PlanarPoint b = traj.points[t + 1].xy();
    for (int k = 1; k <= 10; ++k) {
      const double f = k / 11.0;
      const PlanarPoint q = a + f * (b - a);
      m.min_clearance_value = std::max(m.min_clearance_value, occupancy_at(grid_inflated, q));
    }
  }
  return m;
}

namespace detail {

template <typename Fn>
auto run_stage(const char* stage, std::vector<StageLogEntry>& log, Fn&& fn) {
  try {
    auto result = fn();
    log.push_back({stage, "ok"});
    return result;
  } catch (const PlanError& e) {
    log.push_back({stage, e.what()});
    throw PipelineError(stage, e.code(), e.detail(), e.partial_path());
  } catch (const Error& e) {
    log.push_back({stage, e.what()});
    throw PipelineError(stage, e.code(), e.detail());
  }
}

}  // namespace detail

namespace detail {

// Shared tail of the pipeline, also entered directly when the map is already 2D.
inline MissionResult plan_mission_2d(const OccupancyGrid2D& grid2, const MissionSpec& spec,
                                     MissionResult result) {
  auto& log = result.log;

  result.inflated = run_stage("inflate", log, [&] {
    return inflate(grid2, spec.planner.inflation_radius, spec.planner.occupancy_threshold);
  });

  result.trajectory.path = run_stage("plan2d", log, [&] {
    return plan_path(result.inflated, spec.start.xy(), spec.target.xy(), spec.planner);
  });

  result.trajectory.profile = run_stage("altitude", log, [&] {
    AltitudeConfig acfg = spec.altitude;
    acfg.z_start = spec.start.z;
    acfg.z_end = spec.target.z;
    return solve_heights(static_cast<int>(result.trajectory.path.waypoints.size()), acfg);
  });

  run_stage("fuse", log, [&] {
    const auto& wps = result.trajectory.path.waypoints;
    const auto& hs = result.trajectory.profile.heights;
    result.trajectory.points.resize(wps.size());
    for (std::size_t t = 0; t < wps.size(); ++t)
      result.trajectory.points[t] = {wps[t].x, wps[t].y, hs[t]};
    return 0;
  });

  result.metrics = run_stage("metrics", log, [&] {
    return compute_metrics(result.trajectory, result.inflated, spec.planner);
  });

  return result;
}

}  // namespace detail

// Fixed pipeline: project -> inflate -> plan 2D on the inflated grid ->
// solve altitude with n = waypoint count and z endpoints from the spec ->
// fuse -> metrics. Errors carry their stage tag.
inline MissionResult plan_mission(const OccupancyGrid3D& grid3, const MissionSpec& spec) {
  MissionResult result;
  auto& log = result.log;

  detail::run_stage("validate", log, [&] {
    spec.planner.validate();
    if (spec.start == spec.target)
      throw Error(ErrorCode::Infeasible, "start and target coincide");
    if (!grid3.contains_world(spec.start))
      throw Error(ErrorCode::OutOfBounds, "start outside the grid's world box");
    if (!grid3.contains_world(spec.target))
      throw Error(ErrorCode::OutOfBounds, "target outside the grid's world box");
    return 0;
  });

  const OccupancyGrid2D projected =
      detail::run_stage("project", log, [&] { return project_to_plane(grid3); });
  return detail::plan_mission_2d(projected, spec, std::move(result));
}

// Mission planning on an already-projected 2D map (projection is the identity).
inline MissionResult plan_mission(const OccupancyGrid2D& grid2, const MissionSpec& spec) {
  MissionResult result;
  detail::run_stage("validate", result.log, [&] {
    spec.planner.validate();
    if (spec.start == spec.target)
      throw Error(ErrorCode::Infeasible, "start and target coincide");
    if (!grid2.contains_world(spec.start.xy()) || !grid2.contains_world(spec.target.xy()))
      throw Error(ErrorCode::OutOfBounds, "start or target outside the grid's world box");
    return 0;
  });
  return detail::plan_mission_2d(grid2, spec, std::move(result));
}

}  // namespace scoutplan
