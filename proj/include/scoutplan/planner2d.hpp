#pragma once

#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scoutplan/error.hpp"
#include "scoutplan/geometry.hpp"
#include "scoutplan/occupancy_grid.hpp"
#include "scoutplan/optim_kernel.hpp"

namespace scoutplan {

struct Weights {
  double w1 = 0.0;  // goal attraction
  double w2 = 0.0;  // obstacle avoidance
};

struct PlannerConfig {
  double c_s = std::sqrt(2.0);           // max step, meters
  double w1_base = 1.0;
  double w2 = 5.0;
  double weight_gain = 4.0;
  double inflation_radius = 1.0;         // meters
  double occupancy_threshold = 0.5;
  double goal_tolerance = std::sqrt(2.0);  // meters, <= c_s
  int max_steps = 1000;
  int stall_window = 15;
  double stall_eps = 0.1 * std::sqrt(2.0);
  std::vector<PlanarPoint> intermediate_waypoints;

  // Map-derived defaults: c_s = sqrt(2)*resolution, inflation one cell,
  // goal_tolerance = c_s, max_steps = 10*(nx+ny), stall_eps = 0.1*c_s.
  static PlannerConfig defaults_for(const OccupancyGrid2D& grid) {
    PlannerConfig c;
    c.c_s = std::sqrt(2.0) * grid.resolution;
    c.inflation_radius = grid.resolution;
    c.goal_tolerance = c.c_s;
    c.max_steps = 10 * (grid.nx + grid.ny);
    c.stall_eps = 0.1 * c.c_s;
    return c;
  }

  void validate() const {
    if (!(c_s > 0.0) || !std::isfinite(c_s)) throw std::invalid_argument("c_s must be > 0");
    if (!(goal_tolerance > 0.0) || goal_tolerance > c_s)
      throw std::invalid_argument("goal_tolerance must lie in (0, c_s]");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    if (stall_window < 2) throw std::invalid_argument("stall_window must be >= 2");
    if (!(stall_eps > 0.0)) throw std::invalid_argument("stall_eps must be > 0");
    if (w1_base < 0.0 || w2 < 0.0 || w1_base + w2 <= 0.0)
      throw std::invalid_argument("weights must be non-negative with w1_base + w2 > 0");
    if (weight_gain < 0.0) throw std::invalid_argument("weight_gain must be >= 0");
    if (!(inflation_radius >= 0.0)) throw std::invalid_argument("inflation_radius must be >= 0");
    if (!(occupancy_threshold > 0.0 && occupancy_threshold < 1.0))
      throw std::invalid_argument("occupancy_threshold must lie in (0,1)");
  }
};

struct StepRecord {
  int index = 0;
  Weights weights;
  double objective_before = 0.0;
  double objective_after = 0.0;
  double displacement = 0.0;
};

struct Path2D {
  std::vector<PlanarPoint> waypoints;
  std::vector<double> objective_values;  // one entry per optimization step
  std::vector<StepRecord> steps;
};

// Planner failure carrying whatever partial path existed when it was raised,
// so callers can inspect it or insert intermediate waypoints.
class PlanError : public Error {
 public:
  PlanError(ErrorCode code, std::string detail, Path2D partial = {}, int leg_index = -1)
      : Error(code, std::move(detail)), partial_(std::move(partial)), leg_index_(leg_index) {}

  const Path2D& partial_path() const { return partial_; }
  int leg_index() const { return leg_index_; }

 private:
  Path2D partial_;
  int leg_index_;
};

// w1 grows affinely with mission progress while w2 stays constant, so goal
// attraction never weakens as the target nears.
inline Weights weight_schedule(double d_current, double d0, const PlannerConfig& config) {
  const double progress = std::max(0.0, 1.0 - d_current / d0);
  return {config.w1_base * (1.0 + config.weight_gain * progress), config.w2};
}

// Per-step objective: w1*||p - target||^2/d0^2 + w2*occupancy(p). The
// distance term is normalized by the initial start-to-target distance so both
// terms are O(1) and weights transfer across maps. The grid must outlive the
// returned field.
inline ObjectiveField step_objective(const OccupancyGrid2D& grid, PlanarPoint target,
                                     Weights weights, double d0) {
  if (!(d0 > 0.0)) throw std::invalid_argument("d0 must be > 0");
  const OccupancyGrid2D* g = &grid;
  const double inv_d02 = 1.0 / (d0 * d0);
  ObjectiveField field;
  field.eval = [g, target, weights, inv_d02](PlanarPoint p) {
    const PlanarPoint d = p - target;
    return weights.w1 * dot(d, d) * inv_d02 + weights.w2 * occupancy_at(*g, p);
  };
  field.grad = [g, target, weights, inv_d02](PlanarPoint p) {
    const PlanarPoint quad = (2.0 * weights.w1 * inv_d02) * (p - target);
    const PlanarPoint occ = occupancy_gradient(*g, p);
    return quad + weights.w2 * occ;
  };
  field.quad_minimizer = target;
  // Cell centers near the step disk seed one descent per bilinear basin; the
  // occupancy term's ridges are impassable to descent, so ring starts alone
  // miss interior pockets.
  field.extra_starts = [g](const DiskBoxRegion& region) {
    std::vector<PlanarPoint> pts;
    int ic, jc;
    g->cell_of(region.center, ic, jc);
    const int reach = static_cast<int>(std::ceil(region.radius / g->resolution)) + 1;
    for (int j = jc - reach; j <= jc + reach; ++j)
      for (int i = ic - reach; i <= ic + reach; ++i) {
        if (!g->in_grid(i, j)) continue;
        const PlanarPoint cc = g->cell_center(i, j);
        if (distance(cc, region.center) > region.radius + g->resolution) continue;
        pts.push_back(cc);
      }
    return pts;
  };
  return field;
}

// True iff the cells containing start and target are connected through
// 4-neighbor cells with value < threshold. Diagnostic: separates planner
// local-minimum failures from genuinely blocked maps.
inline bool feasibility_oracle(const OccupancyGrid2D& grid, PlanarPoint start, PlanarPoint target,
                               double threshold) {
  int si, sj, ti, tj;
  grid.cell_of(start, si, sj);
  grid.cell_of(target, ti, tj);
  if (grid.at(si, sj) >= threshold || grid.at(ti, tj) >= threshold) return false;
  if (si == ti && sj == tj) return true;
  std::vector<char> seen(grid.values.size(), 0);
  std::queue<std::pair<int, int>> frontier;
  frontier.push({si, sj});
  seen[grid.index(si, sj)] = 1;
  while (!frontier.empty()) {
    auto [i, j] = frontier.front();
    frontier.pop();
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      const int ii = i + di[d], jj = j + dj[d];
      if (!grid.in_grid(ii, jj) || seen[grid.index(ii, jj)]) continue;
      if (grid.at(ii, jj) >= threshold) continue;
      if (ii == ti && jj == tj) return true;
      seen[grid.index(ii, jj)] = 1;
      frontier.push({ii, jj});
    }
  }
  return false;
}

namespace detail {

inline void require_free(const OccupancyGrid2D& grid, PlanarPoint p, double threshold,
                         ErrorCode code, const char* what) {
  if (!grid.world_box().contains_strict(p))
    throw PlanError(ErrorCode::OutOfBounds,
                    std::string(what) + " (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                        ") not strictly inside the grid");
  if (occupancy_at(grid, p) >= threshold)
    throw PlanError(code, std::string(what) + " (" + std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ") lies in occupied space");
}

}  // namespace detail

// One leg of greedy planning: repeatedly minimize the step objective over
// disk(p_prev, c_s) ∩ bounds until the target is within goal_tolerance, then
// snap to the target exactly. The grid passed here is expected to be the
// inflated one; the raw grid is never consulted while stepping.
inline Path2D plan_leg(const OccupancyGrid2D& grid, PlanarPoint start, PlanarPoint target,
                       const PlannerConfig& config) {
  config.validate();
  detail::require_free(grid, start, config.occupancy_threshold, ErrorCode::StartOccupied, "start");
  detail::require_free(grid, target, config.occupancy_threshold, ErrorCode::TargetOccupied,
                       "target");

  Path2D path;
  path.waypoints.push_back(start);
  const double d0 = distance(start, target);
  if (d0 <= config.goal_tolerance) {
    path.waypoints.push_back(target);
    return path;
  }

  const Box2 bounds = grid.world_box();
  const KernelSettings settings = KernelSettings::for_radius(config.c_s);
  PlanarPoint p = start;
  for (int step = 1; step <= config.max_steps; ++step) {
    const double d_cur = distance(p, target);
    if (d_cur <= config.goal_tolerance) {
      path.waypoints.push_back(target);
      return path;
    }
    const Weights w = weight_schedule(d_cur, d0, config);
    const ObjectiveField field = step_objective(grid, target, w, d0);
    const DiskBoxRegion region{p, config.c_s, bounds};
    const SolveReport report = minimize(field, region, settings);

    StepRecord rec;
    rec.index = static_cast<int>(path.steps.size()) + 1;
    rec.weights = w;
    rec.objective_before = field.eval(p);
    rec.objective_after = report.value;
    rec.displacement = distance(report.argmin, p);
    path.steps.push_back(rec);
    p = report.argmin;
    path.waypoints.push_back(p);
    path.objective_values.push_back(report.value);

    if (static_cast<int>(path.steps.size()) >= config.stall_window) {
      double window_disp = 0.0;
      for (std::size_t k = path.steps.size() - config.stall_window; k < path.steps.size(); ++k)
        window_disp += path.steps[k].displacement;
      if (window_disp < config.stall_eps)
        throw PlanError(ErrorCode::StallDetected,
                        "displacement " + std::to_string(window_disp) + " over the last " +
                            std::to_string(config.stall_window) + " steps is below " +
                            std::to_string(config.stall_eps),
                        std::move(path));
    }
  }
  if (distance(p, target) <= config.goal_tolerance) {
    path.waypoints.push_back(target);
    return path;
  }
  throw PlanError(ErrorCode::MaxStepsExceeded,
                  "no arrival within " + std::to_string(config.max_steps) + " steps",
                  std::move(path));
}

// Chains plan_leg through the configured intermediate waypoints, dropping
// duplicated junction points. Leg failures are rethrown annotated with the
// failing leg index and the partial path accumulated so far.
inline Path2D plan_path(const OccupancyGrid2D& grid, PlanarPoint start, PlanarPoint target,
                        const PlannerConfig& config) {
  std::vector<PlanarPoint> anchors;
  anchors.push_back(start);
  anchors.insert(anchors.end(), config.intermediate_waypoints.begin(),
                 config.intermediate_waypoints.end());
  anchors.push_back(target);

  Path2D full;
  for (std::size_t leg = 0; leg + 1 < anchors.size(); ++leg) {
    Path2D part;
    try {
      part = plan_leg(grid, anchors[leg], anchors[leg + 1], config);
    } catch (const PlanError& e) {
      Path2D partial = full;
      const auto& tail = e.partial_path();
      const std::size_t skip = (partial.waypoints.empty() || tail.waypoints.empty()) ? 0 : 1;
      partial.waypoints.insert(partial.waypoints.end(), tail.waypoints.begin() + skip,
                               tail.waypoints.end());
      partial.objective_values.insert(partial.objective_values.end(), tail.objective_values.begin(),
                                      tail.objective_values.end());
      partial.steps.insert(partial.steps.end(), tail.steps.begin(), tail.steps.end());
      throw PlanError(e.code(), e.detail() + " [leg " + std::to_string(leg) + "]",
                      std::move(partial), static_cast<int>(leg));
    }
    const std::size_t skip = full.waypoints.empty() ? 0 : 1;  // junction appears once
    full.waypoints.insert(full.waypoints.end(), part.waypoints.begin() + skip,
                          part.waypoints.end());
    full.objective_values.insert(full.objective_values.end(), part.objective_values.begin(),
                                 part.objective_values.end());
    full.steps.insert(full.steps.end(), part.steps.begin(), part.steps.end());
  }
  for (std::size_t k = 0; k < full.steps.size(); ++k) full.steps[k].index = static_cast<int>(k) + 1;
  return full;
}

}  // namespace scoutplan
