#include "scoutplan/optim_kernel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "scoutplan/grid_generators.hpp"
#include "scoutplan/occupancy_grid.hpp"
#include "scoutplan/planner2d.hpp"

namespace sp = scoutplan;

namespace {

// 100x100 polar grid: exactly 10^4 area-uniform candidates in the disk.
std::vector<sp::PlanarPoint> dense_disk_sample(sp::PlanarPoint center, double radius) {
  std::vector<sp::PlanarPoint> pts;
  pts.reserve(10000);
  for (int ir = 0; ir < 100; ++ir) {
    const double r = radius * std::sqrt((ir + 0.5) / 100.0);
    for (int it = 0; it < 100; ++it) {
      const double theta = 2.0 * std::numbers::pi * (it + 0.5) / 100.0;
      pts.push_back(center + r * sp::PlanarPoint{std::cos(theta), std::sin(theta)});
    }
  }
  return pts;
}

sp::ObjectiveField quadratic_bowl(sp::PlanarPoint t) {
  sp::ObjectiveField f;
  f.eval = [t](sp::PlanarPoint p) { return sp::dot(p - t, p - t); };
  f.grad = [t](sp::PlanarPoint p) { return 2.0 * (p - t); };
  f.quad_minimizer = t;
  return f;
}

}  // namespace

TEST(ProjectFeasible, FeasiblePointIsUnchanged) {
  const sp::DiskBoxRegion region{{1.0, 1.0}, 2.0, {-10, 10, -10, 10}};
  const sp::PlanarPoint p{1.5, 0.25};
  const auto q = sp::project_feasible(p, region);
  EXPECT_EQ(q.x, p.x);
  EXPECT_EQ(q.y, p.y);
  const auto c = sp::project_feasible(region.center, region);
  EXPECT_EQ(c.x, region.center.x);
  EXPECT_EQ(c.y, region.center.y);
}

TEST(ProjectFeasible, RadialProjectionWhenBoxNotBinding) {
  const sp::DiskBoxRegion region{{2.0, 3.0}, 1.5, {-100, 100, -100, 100}};
  const auto q = sp::project_feasible({2.0 + 3.0, 3.0}, region);
  EXPECT_NEAR(q.x, 2.0 + 1.5, 1e-12);
  EXPECT_NEAR(q.y, 3.0, 1e-12);
}

TEST(ProjectFeasible, CornerCaseMatchesAnalyticProjection) {
  // box cuts the disk; the nearest feasible point to (5,-5) sits where the
  // arc meets the y = -0.5 edge, not where plain alternating projection stops
  const sp::DiskBoxRegion region{{0.0, 0.0}, 1.0, {-10.0, 10.0, -0.5, 10.0}};
  const auto q = sp::project_feasible({5.0, -5.0}, region);
  EXPECT_NEAR(q.x, std::sqrt(3.0) / 2.0, 1e-6);
  EXPECT_NEAR(q.y, -0.5, 1e-9);
}

TEST(ProjectFeasible, DominatesDenseSamplingOracle) {
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> ur(0.3, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const sp::PlanarPoint center{u(rng), u(rng)};
    const double radius = ur(rng);
    const sp::Box2 box{center.x - ur(rng), center.x + ur(rng), center.y - ur(rng),
                       center.y + ur(rng)};
    const sp::DiskBoxRegion region{center, radius, box};
    const sp::PlanarPoint p{u(rng) * 2, u(rng) * 2};

    const auto q = sp::project_feasible(p, region);
    EXPECT_TRUE(region.contains(q, 1e-9)) << "trial " << trial;

    double best = sp::distance(p, region.box.clamp(center));
    for (const auto& cand : dense_disk_sample(center, radius)) {
      if (!box.contains(cand)) continue;
      best = std::min(best, sp::distance(p, cand));
    }
    EXPECT_LE(sp::distance(p, q), best + 1e-9) << "trial " << trial;
  }
}

TEST(Minimize, ExternalTargetLandsOnDiskBoundary) {
  const sp::PlanarPoint center{1.0, 2.0};
  const sp::PlanarPoint target{10.0, 2.0};
  const sp::DiskBoxRegion region{center, 2.0, {-100, 100, -100, 100}};
  const auto report =
      sp::minimize(quadratic_bowl(target), region, sp::KernelSettings::for_radius(region.radius));
  EXPECT_NEAR(report.argmin.x, 3.0, 1e-6);
  EXPECT_NEAR(report.argmin.y, 2.0, 1e-6);
  EXPECT_TRUE(region.contains(report.argmin, 1e-9));
}

TEST(Minimize, InteriorTargetIsReachedExactly) {
  const sp::PlanarPoint center{0.0, 0.0};
  const sp::PlanarPoint target{0.4, -0.3};
  const sp::DiskBoxRegion region{center, 1.0, {-10, 10, -10, 10}};
  const auto report =
      sp::minimize(quadratic_bowl(target), region, sp::KernelSettings::for_radius(region.radius));
  EXPECT_NEAR(report.argmin.x, target.x, 1e-6);
  EXPECT_NEAR(report.argmin.y, target.y, 1e-6);
  EXPECT_NEAR(report.value, 0.0, 1e-10);
}

TEST(Minimize, CenterIsAlwaysACandidate) {
  // objective grows away from the center: staying put is optimal
  const sp::PlanarPoint center{2.0, 2.0};
  const sp::DiskBoxRegion region{center, 1.0, {0, 4, 0, 4}};
  const auto report =
      sp::minimize(quadratic_bowl(center), region, sp::KernelSettings::for_radius(region.radius));
  EXPECT_LE(report.value, 1e-15);
}

TEST(Minimize, BeatsDenseDiskSampleOnPaperObjective) {
  const sp::KernelSettings settings = sp::KernelSettings::for_radius(std::sqrt(2.0));
  int solved = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto raw = sp::gen_random(30, 30, 0.15, 5000 + trial);
    const auto grid = sp::inflate(raw, 1.0, 0.5);
    std::mt19937_64 rng(900 + trial);
    std::uniform_real_distribution<double> upos(1.0, 29.0);
    std::uniform_real_distribution<double> uw1(0.5, 2.0), uw2(1.0, 8.0);
    const sp::PlanarPoint center{upos(rng), upos(rng)};
    const sp::PlanarPoint target{upos(rng), upos(rng)};
    const double d0 = sp::distance(center, target);
    if (d0 < 0.5) continue;
    const sp::Weights w{uw1(rng), uw2(rng)};
    const auto field = sp::step_objective(grid, target, w, d0);
    const sp::DiskBoxRegion region{center, std::sqrt(2.0), grid.world_box()};

    const auto report = sp::minimize(field, region, settings);
    EXPECT_TRUE(region.contains(report.argmin, 1e-9));

    double best = field.eval(region.center);
    for (const auto& cand : dense_disk_sample(center, region.radius)) {
      if (!region.box.contains(cand)) continue;
      best = std::min(best, field.eval(cand));
    }
    EXPECT_LE(report.value, best + 1e-3) << "trial " << trial;
    ++solved;
  }
  EXPECT_GE(solved, 45);
}

TEST(Minimize, DescentFromCenterAlwaysHolds) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto raw = sp::gen_random(20, 20, 0.25, 7100 + trial);
    const auto grid = sp::inflate(raw, 1.0, 0.5);
    std::mt19937_64 rng(31 + trial);
    std::uniform_real_distribution<double> upos(0.5, 19.5);
    const sp::PlanarPoint center{upos(rng), upos(rng)};
    const sp::PlanarPoint target{upos(rng), upos(rng)};
    const double d0 = std::max(sp::distance(center, target), 0.5);
    const auto field = sp::step_objective(grid, target, {1.0, 5.0}, d0);
    const sp::DiskBoxRegion region{center, std::sqrt(2.0), grid.world_box()};
    const auto report = sp::minimize(field, region, sp::KernelSettings::for_radius(region.radius));
    EXPECT_LE(report.value, field.eval(center));
  }
}

TEST(Minimize, DeterministicAcrossCalls) {
  const auto raw = sp::gen_random(25, 25, 0.2, 4321);
  const auto grid = sp::inflate(raw, 1.0, 0.5);
  const sp::PlanarPoint center{10.2, 11.7}, target{20.1, 3.3};
  const auto field = sp::step_objective(grid, target, {1.0, 5.0}, sp::distance(center, target));
  const sp::DiskBoxRegion region{center, std::sqrt(2.0), grid.world_box()};
  const auto a = sp::minimize(field, region, sp::KernelSettings::for_radius(region.radius));
  const auto b = sp::minimize(field, region, sp::KernelSettings::for_radius(region.radius));
  EXPECT_EQ(a.argmin.x, b.argmin.x);
  EXPECT_EQ(a.argmin.y, b.argmin.y);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.starts_tried, b.starts_tried);
}

TEST(Minimize, ReportsNonFiniteObjective) {
  sp::ObjectiveField bad;
  bad.eval = [](sp::PlanarPoint p) {
    return p.x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
  };
  bad.grad = [](sp::PlanarPoint) { return sp::PlanarPoint{1.0, 0.0}; };
  const sp::DiskBoxRegion region{{0.6, 0.0}, 1.0, {-5, 5, -5, 5}};
  try {
    sp::minimize(bad, region, {});
    FAIL() << "expected NonFiniteObjective";
  } catch (const sp::Error& e) {
    EXPECT_EQ(e.code(), sp::ErrorCode::NonFiniteObjective);
  }
}

TEST(GradientCheck, ExactForLinearField) {
  sp::ObjectiveField f;
  f.eval = [](sp::PlanarPoint p) { return 3.0 * p.x - 2.0 * p.y; };
  f.grad = [](sp::PlanarPoint) { return sp::PlanarPoint{3.0, -2.0}; };
  // h small enough to be "any h" in spirit but large enough that the
  // difference quotient's last-bit rounding stays under the bound
  for (double h : {1e-4, 1e-2, 1.0, 10.0})
    EXPECT_LE(sp::gradient_check(f, {0.3, -1.2}, h), 1e-10) << "h = " << h;
}

TEST(GradientCheck, NearExactForQuadraticField) {
  sp::ObjectiveField f;
  f.eval = [](sp::PlanarPoint p) {
    return (p.x - 1.0) * (p.x - 1.0) + 2.0 * (p.y + 0.5) * (p.y + 0.5);
  };
  f.grad = [](sp::PlanarPoint p) { return sp::PlanarPoint{2.0 * (p.x - 1.0), 4.0 * (p.y + 0.5)}; };
  EXPECT_LE(sp::gradient_check(f, {0.7, 2.2}, 1e-5), 1e-8);
}

TEST(GradientCheck, PaperObjectiveWithinTolerance) {
  const auto raw = sp::gen_random(15, 15, 0.3, 246);
  const auto grid = sp::inflate(raw, 1.0, 0.5);
  const sp::PlanarPoint target{12.0, 13.0};
  const auto field = sp::step_objective(grid, target, {1.0, 5.0}, 10.0);
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> cell(1, 13);
  std::uniform_real_distribution<double> frac(0.15, 0.85);
  for (int trial = 0; trial < 100; ++trial) {
    const sp::PlanarPoint p{cell(rng) + frac(rng) + 0.5, cell(rng) + frac(rng) + 0.5};
    EXPECT_LE(sp::gradient_check(field, p, 1e-5), 1e-5);
  }
}

TEST(KernelSettings, ValidatesRanges) {
  sp::KernelSettings s;
  s.armijo_c = 1.5;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.max_iterations = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  EXPECT_NO_THROW(s.validate());
}

TEST(DiskBoxRegion, ValidatesGeometry) {
  sp::DiskBoxRegion r{{0, 0}, 1.0, {-1, 1, -1, 1}};
  EXPECT_NO_THROW(r.validate());
  r.center = {5, 0};
  EXPECT_THROW(r.validate(), std::invalid_argument);
  r.center = {0, 0};
  r.radius = 0.0;
  EXPECT_THROW(r.validate(), std::invalid_argument);
}
