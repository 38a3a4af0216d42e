#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scoutplan/config.hpp"
#include "scoutplan/error.hpp"
#include "scoutplan/grid_generators.hpp"
#include "scoutplan/grid_io.hpp"
#include "scoutplan/mission.hpp"
#include "scoutplan/render_svg.hpp"
#include "scoutplan/trajectory_io.hpp"

namespace scoutplan {

// Exit codes: 0 success, 2 usage/validation, 3 I/O, 4 planner failure,
// 5 check failure.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;
inline constexpr int io = 3;
inline constexpr int planner = 4;
inline constexpr int check = 5;
}  // namespace exit_code

namespace detail {

inline std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

inline void error_line(std::ostream& err, const std::string& stage, const std::string& code,
                       const std::string& detail) {
  err << "stage=" << stage << " code=" << code << " detail=" << one_line(detail) << "\n";
}

inline int io_exit(std::ostream& err, const std::string& stage, const Error& e) {
  error_line(err, stage, to_string(e.code()), e.detail());
  return e.code() == ErrorCode::InvalidConfig ? exit_code::usage : exit_code::io;
}

struct MapInfo {
  GridVariant grid;
  double resolution;
  int nx, ny;
};

inline MapInfo load_map(const std::filesystem::path& path) {
  MapInfo info{load_grid(path), 1.0, 0, 0};
  if (std::holds_alternative<OccupancyGrid2D>(info.grid)) {
    const auto& g = std::get<OccupancyGrid2D>(info.grid);
    info.resolution = g.resolution;
    info.nx = g.nx;
    info.ny = g.ny;
  } else {
    const auto& g = std::get<OccupancyGrid3D>(info.grid);
    info.resolution = g.resolution;
    info.nx = g.nx;
    info.ny = g.ny;
  }
  return info;
}

inline void write_partial(const std::filesystem::path& out, const PipelineError& e) {
  nlohmann::json wps = nlohmann::json::array();
  for (const PlanarPoint& p : e.partial_path().waypoints) wps.push_back({p.x, p.y});
  nlohmann::json doc = {{"partial_waypoints", wps},
                        {"error", {{"stage", e.stage()},
                                   {"code", to_string(e.code())},
                                   {"detail", e.detail()}}}};
  write_text_file(std::filesystem::path(out.string() + ".partial"), doc.dump(2) + "\n");
}

struct CheckRow {
  std::string name;
  bool pass;
  std::string detail;
};

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"scoutplan: two-stage UAV scouting trajectory planner on occupancy grids"};
  app.require_subcommand(1);

  // gen-random
  auto* gen_random_cmd = app.add_subcommand("gen-random", "Generate a random 2D occupancy grid");
  std::vector<int> gr_size;
  double gr_density = 0.2;
  std::uint64_t gr_seed = 0;
  std::string gr_out;
  gen_random_cmd->add_option("--size", gr_size, "Grid size NX NY in cells")
      ->expected(2)
      ->required()
      ->check(CLI::PositiveNumber);
  gen_random_cmd->add_option("--density", gr_density, "Occupied-cell probability")
      ->check(CLI::Range(0.0, 1.0));
  gen_random_cmd->add_option("--seed", gr_seed, "RNG seed");
  gen_random_cmd->add_option("--out", gr_out, "Output grid file")->required();

  // gen-city
  auto* gen_city_cmd = app.add_subcommand("gen-city", "Generate a city-block 3D occupancy grid");
  std::vector<int> gc_size;
  int gc_blocks = 10;
  std::uint64_t gc_seed = 0;
  std::string gc_out;
  gen_city_cmd->add_option("--size", gc_size, "Grid size NX NY NZ in cells")
      ->expected(3)
      ->required()
      ->check(CLI::PositiveNumber);
  gen_city_cmd->add_option("--blocks", gc_blocks, "Number of blocks")->check(CLI::PositiveNumber);
  gen_city_cmd->add_option("--seed", gc_seed, "RNG seed");
  gen_city_cmd->add_option("--out", gc_out, "Output grid file")->required();

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Plan a 3D scouting trajectory");
  std::string p_map, p_config, p_out, p_svg;
  std::vector<double> p_start, p_target;
  plan_cmd->add_option("--map", p_map, "Occupancy grid file (grid2 or grid3)")->required();
  plan_cmd->add_option("--start", p_start, "Start X Y Z in meters")->expected(3)->required();
  plan_cmd->add_option("--target", p_target, "Target X Y Z in meters")->expected(3)->required();
  plan_cmd->add_option("--config", p_config, "Planner/altitude config JSON");
  plan_cmd->add_option("--out", p_out, "Output trajectory file")->required();
  plan_cmd->add_option("--svg", p_svg, "Optional SVG rendering of the mission");

  // check
  auto* check_cmd = app.add_subcommand("check", "Re-verify invariants of a planned trajectory");
  std::string c_traj, c_map, c_config;
  check_cmd->add_option("--traj", c_traj, "Trajectory file")->required();
  check_cmd->add_option("--map", c_map, "Occupancy grid file")->required();
  check_cmd->add_option("--config", c_config, "Planner/altitude config JSON");

  // render
  auto* render_cmd = app.add_subcommand("render", "Render a map (and optional trajectory) as SVG");
  std::string r_map, r_traj, r_out;
  render_cmd->add_option("--map", r_map, "Occupancy grid file")->required();
  render_cmd->add_option("--traj", r_traj, "Trajectory file");
  render_cmd->add_option("--out", r_out, "Output SVG file")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    detail::error_line(err, "cli", "BadFlags", e.what());
    return exit_code::usage;
  }

  if (*gen_random_cmd) {
    try {
      const OccupancyGrid2D g = gen_random(gr_size[0], gr_size[1], gr_density, gr_seed);
      save_grid(g, gr_out);
    } catch (const Error& e) {
      return detail::io_exit(err, "gen-random", e);
    }
    out << "wrote " << gr_out << " (" << gr_size[0] << "x" << gr_size[1] << ", density "
        << gr_density << ", seed " << gr_seed << ")\n";
    return exit_code::ok;
  }

  if (*gen_city_cmd) {
    try {
      const OccupancyGrid3D g = gen_city_block(gc_size[0], gc_size[1], gc_size[2], gc_blocks, gc_seed);
      save_grid(g, gc_out);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PlacementFailed) {
        detail::error_line(err, "gen-city", to_string(e.code()), e.detail());
        return exit_code::usage;
      }
      return detail::io_exit(err, "gen-city", e);
    }
    out << "wrote " << gc_out << " (" << gc_size[0] << "x" << gc_size[1] << "x" << gc_size[2]
        << ", " << gc_blocks << " blocks, seed " << gc_seed << ")\n";
    return exit_code::ok;
  }

  if (*plan_cmd) {
    detail::MapInfo map;
    try {
      map = detail::load_map(p_map);
    } catch (const Error& e) {
      return detail::io_exit(err, "load-map", e);
    }
    CliConfig file_cfg;
    if (!p_config.empty()) {
      try {
        file_cfg = CliConfig::load(p_config);
      } catch (const Error& e) {
        return detail::io_exit(err, "load-config", e);
      }
    }
    MissionSpec spec;
    spec.start = {p_start[0], p_start[1], p_start[2]};
    spec.target = {p_target[0], p_target[1], p_target[2]};
    try {
      spec.planner = file_cfg.resolve_planner(map.resolution, map.nx, map.ny);
    } catch (const Error& e) {
      return detail::io_exit(err, "load-config", e);
    }
    spec.altitude = file_cfg.resolve_altitude();

    MissionResult result;
    try {
      if (std::holds_alternative<OccupancyGrid3D>(map.grid))
        result = plan_mission(std::get<OccupancyGrid3D>(map.grid), spec);
      else
        result = plan_mission(std::get<OccupancyGrid2D>(map.grid), spec);
    } catch (const PipelineError& e) {
      detail::error_line(err, e.stage(), to_string(e.code()), e.detail());
      if (!e.partial_path().waypoints.empty()) {
        try {
          detail::write_partial(p_out, e);
        } catch (const Error& io_e) {
          detail::error_line(err, "write-partial", to_string(io_e.code()), io_e.detail());
        }
      }
      return exit_code::planner;
    }

    AltitudeConfig echo_alt = spec.altitude;
    echo_alt.z_start = spec.start.z;
    echo_alt.z_end = spec.target.z;
    const nlohmann::json echo = config_echo(spec.planner, echo_alt, spec.start, spec.target);
    try {
      save_trajectory(result.trajectory, result.metrics, echo, p_out);
      if (!p_svg.empty()) {
        const OccupancyGrid2D base = std::holds_alternative<OccupancyGrid2D>(map.grid)
                                         ? std::get<OccupancyGrid2D>(map.grid)
                                         : project_to_plane(std::get<OccupancyGrid3D>(map.grid));
        SvgOptions opts;
        opts.inflated = &result.inflated;
        opts.occupancy_threshold = spec.planner.occupancy_threshold;
        opts.trajectory = &result.trajectory.points;
        opts.altitude_chart = true;
        opts.scout_height = spec.altitude.h;
        detail::write_text_file(p_svg, render_svg(base, opts));
      }
    } catch (const Error& e) {
      return detail::io_exit(err, "write-output", e);
    }
    out << "planned " << result.metrics.waypoint_count << " waypoints: length_2d="
        << result.metrics.length_2d << " length_3d=" << result.metrics.length_3d
        << " max_step_2d=" << result.metrics.max_step_2d << " max_slope="
        << result.metrics.max_slope << " clearance=" << result.metrics.min_clearance_value << "\n";
    return exit_code::ok;
  }

  if (*check_cmd) {
    LoadedTrajectory traj;
    detail::MapInfo map;
    try {
      traj = load_trajectory(c_traj);
      map = detail::load_map(c_map);
    } catch (const Error& e) {
      return detail::io_exit(err, "load", e);
    }
    CliConfig file_cfg;
    if (!c_config.empty()) {
      try {
        file_cfg = CliConfig::load(c_config);
      } catch (const Error& e) {
        return detail::io_exit(err, "load-config", e);
      }
    }
    PlannerConfig pcfg;
    try {
      pcfg = file_cfg.resolve_planner(map.resolution, map.nx, map.ny);
    } catch (const Error& e) {
      return detail::io_exit(err, "load-config", e);
    }
    const AltitudeConfig acfg = file_cfg.resolve_altitude();
    const OccupancyGrid2D base = std::holds_alternative<OccupancyGrid2D>(map.grid)
                                     ? std::get<OccupancyGrid2D>(map.grid)
                                     : project_to_plane(std::get<OccupancyGrid3D>(map.grid));
    const OccupancyGrid2D inflated = inflate(base, pcfg.inflation_radius, pcfg.occupancy_threshold);

    std::vector<detail::CheckRow> rows;
    const auto& pts = traj.trajectory.points;
    const double slack = 1e-9;

    double max_step = 0.0;
    for (std::size_t t = 0; t + 1 < pts.size(); ++t)
      max_step = std::max(max_step, distance(pts[t].xy(), pts[t + 1].xy()));
    rows.push_back({"step_cap", max_step <= pcfg.c_s + slack,
                    "max 2D step " + std::to_string(max_step) + " vs c_s " + std::to_string(pcfg.c_s)});

    bool in_bounds = true;
    for (const Point3& p : pts) in_bounds = in_bounds && base.world_box().contains(p.xy());
    rows.push_back({"boundary", in_bounds, in_bounds ? "all waypoints inside the map" : "waypoint outside the map"});

    double max_slope = 0.0;
    for (std::size_t t = 0; t + 1 < pts.size(); ++t)
      max_slope = std::max(max_slope, std::abs(pts[t + 1].z - pts[t].z));
    rows.push_back({"slope_cap", max_slope <= acfg.c_z + slack,
                    "max slope " + std::to_string(max_slope) + " vs c_z " + std::to_string(acfg.c_z)});

    bool z_box = true;
    for (const Point3& p : pts) z_box = z_box && p.z >= -slack && p.z <= acfg.z_max + slack;
    rows.push_back({"altitude_box", z_box, "heights within [0, z_max]"});

    if (in_bounds) {
      const TrajectoryMetrics recomputed = compute_metrics(traj.trajectory, inflated, pcfg);
      rows.push_back({"clearance", recomputed.min_clearance_value < pcfg.occupancy_threshold,
                      "worst sampled occupancy " + std::to_string(recomputed.min_clearance_value) +
                          " vs threshold " + std::to_string(pcfg.occupancy_threshold)});
      const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
      const bool metrics_ok = close(recomputed.length_2d, traj.metrics.length_2d) &&
                              close(recomputed.length_3d, traj.metrics.length_3d) &&
                              close(recomputed.max_step_2d, traj.metrics.max_step_2d) &&
                              close(recomputed.max_slope, traj.metrics.max_slope) &&
                              close(recomputed.min_clearance_value, traj.metrics.min_clearance_value) &&
                              recomputed.waypoint_count == traj.metrics.waypoint_count;
      rows.push_back({"metrics_match", metrics_ok, "stored metrics vs recomputation"});
    } else {
      rows.push_back({"clearance", false, "skipped: waypoints outside the map"});
      rows.push_back({"metrics_match", false, "skipped: waypoints outside the map"});
    }

    bool all_pass = true;
    for (const auto& row : rows) {
      out << std::left << std::setw(16) << row.name << (row.pass ? "PASS  " : "FAIL  ")
          << row.detail << "\n";
      all_pass = all_pass && row.pass;
    }
    if (!all_pass) {
      for (const auto& row : rows)
        if (!row.pass) {
          detail::error_line(err, "check", row.name, row.detail);
          break;
        }
      return exit_code::check;
    }
    return exit_code::ok;
  }

  if (*render_cmd) {
    try {
      const OccupancyGrid2D base = load_grid_as_2d(r_map);
      SvgOptions opts;
      std::vector<Point3> pts;
      if (!r_traj.empty()) {
        pts = load_trajectory(r_traj).trajectory.points;
        opts.trajectory = &pts;
      }
      detail::write_text_file(r_out, render_svg(base, opts));
    } catch (const Error& e) {
      return detail::io_exit(err, "render", e);
    }
    out << "wrote " << r_out << "\n";
    return exit_code::ok;
  }

  return exit_code::usage;
}

}  // namespace scoutplan
