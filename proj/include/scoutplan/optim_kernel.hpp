#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scoutplan/error.hpp"
#include "scoutplan/geometry.hpp"

namespace scoutplan {

struct DiskBoxRegion;

// Smooth scalar field with an analytic gradient. eval must be deterministic
// and side-effect free (multi-start branches may share it concurrently).
// quad_minimizer, when set, is the unconstrained minimizer of the field's
// quadratic term; the solver uses its feasible projection as an extra start.
// extra_starts lets the field suggest additional start points aligned with
// its own non-smooth structure (e.g. lattice nodes of an interpolated grid);
// descent alone cannot cross ridges into basins no fixed start reaches.
struct ObjectiveField {
  std::function<double(PlanarPoint)> eval;
  std::function<PlanarPoint(PlanarPoint)> grad;
  std::optional<PlanarPoint> quad_minimizer;
  std::function<std::vector<PlanarPoint>(const DiskBoxRegion&)> extra_starts;
};

// Intersection of a disk (the per-step reach) and an axis-aligned box (the
// environment boundary). The center must lie inside the box, so the region is
// never empty.
struct DiskBoxRegion {
  PlanarPoint center;
  double radius = 0.0;
  Box2 box;

  void validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw std::invalid_argument("region radius must be positive and finite");
    if (!box.valid()) throw std::invalid_argument("region box is degenerate");
    if (!box.contains(center)) throw std::invalid_argument("region center must lie inside the box");
  }

  bool contains(PlanarPoint p, double tol = 0.0) const {
    return distance(p, center) <= radius + tol && box.contains(p, tol);
  }
};

struct KernelSettings {
  int max_iterations = 200;
  double step_init = 1.0;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  double grad_tol = 1e-8;
  int ring_starts = 8;

  static KernelSettings for_radius(double radius) {
    KernelSettings s;
    s.step_init = radius;
    return s;
  }

  void validate() const {
    if (max_iterations < 1 || ring_starts < 0) throw std::invalid_argument("bad kernel counts");
    if (!(step_init > 0.0) || !(grad_tol > 0.0)) throw std::invalid_argument("bad kernel steps");
    if (!(armijo_c > 0.0 && armijo_c < 1.0) || !(backtrack_factor > 0.0 && backtrack_factor < 1.0))
      throw std::invalid_argument("armijo_c and backtrack_factor must lie in (0,1)");
  }
};

struct SolveReport {
  PlanarPoint argmin;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  int starts_tried = 0;
};

namespace detail {

inline PlanarPoint project_disk(PlanarPoint p, PlanarPoint center, double radius) {
  const PlanarPoint d = p - center;
  const double r = norm(d);
  if (r <= radius) return p;
  return center + (radius / r) * d;
}

}  // namespace detail

// Metric projection onto disk ∩ box, via Dykstra-corrected alternating
// disk/box projections run to a fixed point (tolerance 1e-12 m, at most 100
// alternations). The correction terms make the fixed point the nearest
// feasible point, not merely a feasible one. Returns p unchanged when p is
// already feasible.
inline PlanarPoint project_feasible(PlanarPoint p, const DiskBoxRegion& region) {
  region.validate();
  PlanarPoint x = p;
  PlanarPoint disk_corr{0.0, 0.0}, box_corr{0.0, 0.0};
  for (int iter = 0; iter < 100; ++iter) {
    const PlanarPoint y = detail::project_disk(x + disk_corr, region.center, region.radius);
    disk_corr = x + disk_corr - y;
    const PlanarPoint xn = region.box.clamp(y + box_corr);
    box_corr = y + box_corr - xn;
    const double moved = distance(xn, x);
    x = xn;
    if (moved <= 1e-12 && region.contains(x, 1e-12)) break;
  }
  // x is box-exact after the final clamp; nudge onto the disk if the loop
  // stopped with a residual violation.
  if (distance(x, region.center) > region.radius)
    x = region.box.clamp(detail::project_disk(x, region.center, region.radius));
  return x;
}

namespace detail {

inline double eval_checked(const ObjectiveField& field, PlanarPoint p) {
  const double v = field.eval(p);
  if (!std::isfinite(v))
    throw Error(ErrorCode::NonFiniteObjective, "objective non-finite at (" + std::to_string(p.x) +
                                                   ", " + std::to_string(p.y) + ")");
  return v;
}

struct DescentResult {
  PlanarPoint x;
  double value;
  int iterations;
  bool converged;
};

// Projected gradient descent with Armijo backtracking from one start.
inline DescentResult descend(const ObjectiveField& field, const DiskBoxRegion& region,
                             const KernelSettings& s, PlanarPoint start) {
  PlanarPoint x = start;
  double fx = eval_checked(field, x);
  int it = 0;
  bool converged = false;
  for (; it < s.max_iterations; ++it) {
    const PlanarPoint g = field.grad(x);
    if (!std::isfinite(g.x) || !std::isfinite(g.y))
      throw Error(ErrorCode::NonFiniteObjective, "gradient non-finite at (" + std::to_string(x.x) +
                                                     ", " + std::to_string(x.y) + ")");
    if (norm(g) <= s.grad_tol) {
      converged = true;
      break;
    }
    double alpha = s.step_init;
    bool accepted = false;
    PlanarPoint cand{};
    double fc = 0.0;
    while (alpha > 1e-18) {
      cand = project_feasible(x - alpha * g, region);
      fc = eval_checked(field, cand);
      const double decrease = dot(g, x - cand);
      if (fc <= fx - s.armijo_c * decrease && fc <= fx) {
        accepted = true;
        break;
      }
      alpha *= s.backtrack_factor;
    }
    if (!accepted || distance(cand, x) <= 1e-14) {
      converged = true;  // no feasible descent direction: projected-stationary
      break;
    }
    x = cand;
    fx = fc;
  }
  return {x, fx, it, converged};
}

}  // namespace detail

// Multi-start projected gradient descent over disk ∩ box. Starts are the
// region center, ring_starts points evenly spaced on the disk boundary
// (projected into the box), the feasible projection of field.quad_minimizer
// when present, and the feasible projections of any field-suggested extra
// starts. The center start makes staying put a candidate, so
// report.value <= field.eval(region.center) always. Ties across starts break
// toward the lowest start index.
inline SolveReport minimize(const ObjectiveField& field, const DiskBoxRegion& region,
                            const KernelSettings& settings = {}) {
  region.validate();
  settings.validate();
  if (!field.eval || !field.grad) throw std::invalid_argument("objective field is incomplete");

  std::vector<PlanarPoint> starts;
  starts.reserve(settings.ring_starts + 2);
  starts.push_back(region.center);
  for (int k = 0; k < settings.ring_starts; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / settings.ring_starts;
    const PlanarPoint on_ring =
        region.center + region.radius * PlanarPoint{std::cos(theta), std::sin(theta)};
    starts.push_back(project_feasible(on_ring, region));
  }
  if (field.quad_minimizer) starts.push_back(project_feasible(*field.quad_minimizer, region));
  if (field.extra_starts)
    for (const PlanarPoint& q : field.extra_starts(region))
      starts.push_back(project_feasible(q, region));

  SolveReport report;
  report.starts_tried = static_cast<int>(starts.size());
  bool have_best = false;
  for (const PlanarPoint& s : starts) {
    const auto res = detail::descend(field, region, settings, s);
    report.iterations += res.iterations;
    if (!have_best || res.value < report.value) {
      report.argmin = res.x;
      report.value = res.value;
      report.converged = res.converged;
      have_best = true;
    }
  }
  return report;
}

// Relative disagreement between the analytic gradient and central finite
// differences with step h.
inline double gradient_check(const ObjectiveField& field, PlanarPoint p, double h) {
  const PlanarPoint g = field.grad(p);
  const double fd_x = (field.eval({p.x + h, p.y}) - field.eval({p.x - h, p.y})) / (2.0 * h);
  const double fd_y = (field.eval({p.x, p.y + h}) - field.eval({p.x, p.y - h})) / (2.0 * h);
  const PlanarPoint diff = g - PlanarPoint{fd_x, fd_y};
  return norm(diff) / std::max(1.0, norm(g));
}

}  // namespace scoutplan
