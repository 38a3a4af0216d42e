// Acceptance suite: runs every shipping criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the number of
// failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scoutplan/cli.hpp"
#include "scoutplan/grid_generators.hpp"
#include "scoutplan/mission.hpp"
#include "scoutplan/planner2d.hpp"
#include "scoutplan/trajectory_io.hpp"

namespace sp = scoutplan;
namespace fs = std::filesystem;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s criterion-%d %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(), secs,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

// ---- shared oracles ----

std::vector<std::pair<int, int>> largest_free_component(const sp::OccupancyGrid2D& g, double thr) {
  std::vector<int> comp(g.values.size(), -1);
  std::vector<std::vector<std::pair<int, int>>> comps;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (g.at(i, j) >= thr || comp[g.index(i, j)] >= 0) continue;
      const int id = static_cast<int>(comps.size());
      comps.emplace_back();
      std::queue<std::pair<int, int>> q;
      q.push({i, j});
      comp[g.index(i, j)] = id;
      while (!q.empty()) {
        auto [a, b] = q.front();
        q.pop();
        comps[id].push_back({a, b});
        const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int ii = a + di[d], jj = b + dj[d];
          if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) continue;
          if (comp[g.index(ii, jj)] >= 0 || g.at(ii, jj) >= thr) continue;
          comp[g.index(ii, jj)] = id;
          q.push({ii, jj});
        }
      }
    }
  std::size_t best = 0;
  for (std::size_t k = 1; k < comps.size(); ++k)
    if (comps[k].size() > comps[best].size()) best = k;
  return comps.empty() ? std::vector<std::pair<int, int>>{} : comps[best];
}

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

double dp_grid_search_objective(int n, const sp::AltitudeConfig& cfg, double pitch) {
  const int m = static_cast<int>(std::llround(cfg.z_max / pitch)) + 1;
  const int win = static_cast<int>(std::floor(cfg.c_z / pitch + 1e-9));
  const double inf = 1e100;
  auto idx_of = [&](double z) { return static_cast<int>(std::llround(z / pitch)); };
  auto sq = [](double x) { return x * x; };
  std::vector<double> prev(m, inf), cur(m);
  prev[idx_of(cfg.z_start)] = sq(cfg.z_start - cfg.h);
  for (int t = 1; t < n; ++t) {
    std::deque<int> window;
    int appended = 0;
    for (int z = 0; z < m; ++z) {
      const int hi = std::min(m - 1, z + win);
      while (appended <= hi) {
        while (!window.empty() && prev[window.back()] >= prev[appended]) window.pop_back();
        window.push_back(appended);
        ++appended;
      }
      while (window.front() < z - win) window.pop_front();
      cur[z] = prev[window.front()] + sq(z * pitch - cfg.h);
    }
    std::swap(prev, cur);
  }
  return prev[idx_of(cfg.z_end)];
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli_quiet(std::vector<std::string> args, std::string* err_out = nullptr) {
  std::ostringstream out, err;
  const int code = sp::run_cli(std::move(args), out, err);
  if (err_out) *err_out = err.str();
  return code;
}

// planned paths (complete or partial) across the 100 seeded maps, shared by
// criteria 1 and 5
struct PlannedCorpus {
  std::vector<sp::Path2D> paths;
  int successes = 0;
  int stalls = 0;
  bool ready = false;
};
PlannedCorpus g_corpus;

void build_corpus() {
  if (g_corpus.ready) return;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto raw = sp::gen_random(50, 50, 0.15, seed);
    const auto grid = sp::inflate(raw, 1.0, 0.5);
    const auto cfg = sp::PlannerConfig::defaults_for(grid);
    const auto cells = largest_free_component(grid, cfg.occupancy_threshold);
    if (cells.size() < 2) continue;
    std::mt19937_64 rng(seed * 7 + 1);
    sp::PlanarPoint s = grid.cell_center(cells[0].first, cells[0].second), t = s;
    double best_d = -1.0;
    for (int tries = 0; tries < 400; ++tries) {
      const auto& a = cells[rng() % cells.size()];
      const auto& b = cells[rng() % cells.size()];
      const sp::PlanarPoint pa = grid.cell_center(a.first, a.second);
      const sp::PlanarPoint pb = grid.cell_center(b.first, b.second);
      if (!grid.world_box().contains_strict(pa) || !grid.world_box().contains_strict(pb)) continue;
      const double d = sp::distance(pa, pb);
      if (d > best_d) {
        best_d = d;
        s = pa;
        t = pb;
      }
    }
    if (best_d <= 0.0) continue;
    if (!sp::feasibility_oracle(grid, s, t, cfg.occupancy_threshold)) continue;
    try {
      g_corpus.paths.push_back(sp::plan_path(grid, s, t, cfg));
      ++g_corpus.successes;
    } catch (const sp::PlanError& e) {
      g_corpus.paths.push_back(e.partial_path());
      ++g_corpus.stalls;
    }
  }
  g_corpus.ready = true;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "scoutplan_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto at = [&](const std::string& name) { return (dir / name).string(); };

  criterion(1, "step-cap invariant over 100 seeded random maps", [&](std::string& detail) {
    build_corpus();
    std::size_t steps = 0;
    int violations = 0;
    for (const auto& path : g_corpus.paths)
      for (std::size_t t = 0; t + 1 < path.waypoints.size(); ++t) {
        ++steps;
        if (sp::distance(path.waypoints[t], path.waypoints[t + 1]) > kSqrt2 + 1e-9) ++violations;
      }
    detail = std::to_string(g_corpus.paths.size()) + " feasible missions (" +
             std::to_string(g_corpus.successes) + " complete, " +
             std::to_string(g_corpus.stalls) + " partial), " + std::to_string(steps) +
             " displacements, " + std::to_string(violations) + " over sqrt(2)+1e-9";
    return !g_corpus.paths.empty() && g_corpus.successes > 0 && violations == 0;
  });

  criterion(2, "altitude profile at n=200 paper parameters", [&](std::string& detail) {
    sp::AltitudeConfig cfg;
    cfg.h = 35.0;
    cfg.c_z = 1.0;
    cfg.z_start = 5.0;
    cfg.z_end = 5.0;
    cfg.z_max = 100.0;
    const int n = 200;
    const auto closed = sp::solve_heights(n, cfg);
    const auto iter = sp::solve_heights_iterative(n, cfg);
    const auto& z = closed.heights;
    bool ok = z.size() == 200;
    for (int t = 0; t < 30 && ok; ++t) ok = (z[t + 1] - z[t] == 1.0);
    for (int t = 30; t <= 169 && ok; ++t) ok = (z[t] == 35.0);
    for (int t = 0; t < n && ok; ++t) ok = (z[t] == z[n - 1 - t]);
    double worst = 0.0;
    for (int t = 0; t < n; ++t) worst = std::max(worst, std::abs(z[t] - iter.heights[t]));
    detail = "solver disagreement " + std::to_string(worst);
    return ok && worst <= 1e-6;
  });

  criterion(3, "closed-form vs dense grid search and iterative QP, 200 instances",
            [&](std::string& detail) {
              std::mt19937_64 rng(33000);
              std::uniform_real_distribution<double> u(0.0, 1.0);
              const double pitch = 1e-3;
              int checked = 0;
              double worst_gap = -1e300, worst_coord = 0.0;
              for (int inst = 0; inst < 200; ++inst) {
                const int n = 2 + static_cast<int>(rng() % 19);
                sp::AltitudeConfig cfg;
                cfg.z_max = std::round((2.0 + 18.0 * u(rng)) / pitch) * pitch;
                cfg.c_z = 0.05 + 1.95 * u(rng);
                cfg.h = cfg.z_max * u(rng);
                bool feasible = false;
                for (int tries = 0; tries < 1000 && !feasible; ++tries) {
                  cfg.z_start = std::round(cfg.z_max * u(rng) / pitch) * pitch;
                  cfg.z_end = std::round(cfg.z_max * u(rng) / pitch) * pitch;
                  feasible = std::abs(cfg.z_end - cfg.z_start) <= 0.8 * cfg.c_z * (n - 1);
                }
                if (!feasible) continue;
                const auto closed = sp::solve_heights(n, cfg);
                const auto iter = sp::solve_heights_iterative(n, cfg);
                double closed_obj = 0.0;
                for (double v : closed.heights) closed_obj += (v - cfg.h) * (v - cfg.h);
                const double dp_obj = dp_grid_search_objective(n, cfg, pitch);
                worst_gap = std::max(worst_gap, closed_obj - dp_obj);
                for (int t = 0; t < n; ++t)
                  worst_coord =
                      std::max(worst_coord, std::abs(closed.heights[t] - iter.heights[t]));
                ++checked;
              }
              detail = std::to_string(checked) + " instances, objective gap " +
                       std::to_string(worst_gap) + ", coord diff " + std::to_string(worst_coord);
              return checked == 200 && worst_gap <= 1e-6 && worst_coord <= 1e-6;
            });

  criterion(4, "objective gradient vs central differences, 1000 points", [&](std::string& detail) {
    std::mt19937_64 rng(44000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int points = 0;
    for (int g = 0; g < 10; ++g) {
      const auto raw = sp::gen_random(30, 30, 0.1 + 0.03 * g, 600 + g);
      const auto grid = sp::inflate(raw, 1.0, 0.5);
      const sp::PlanarPoint target{1.0 + 28.0 * u(rng), 1.0 + 28.0 * u(rng)};
      const sp::Weights w{0.5 + 2.0 * u(rng), 1.0 + 6.0 * u(rng)};
      const auto field = sp::step_objective(grid, target, w, 10.0 + 20.0 * u(rng));
      for (int k = 0; k < 100; ++k) {
        // interior points at least 0.1 cell from every bilinear seam
        const int ci = 1 + static_cast<int>(rng() % 27);
        const int cj = 1 + static_cast<int>(rng() % 27);
        const double fx = 0.1 + 0.8 * u(rng), fy = 0.1 + 0.8 * u(rng);
        const sp::PlanarPoint p{ci + fx + 0.5, cj + fy + 0.5};
        worst = std::max(worst, sp::gradient_check(field, p, 1e-5));
        ++points;
      }
    }
    detail = std::to_string(points) + " points, worst relative error " + std::to_string(worst);
    return points == 1000 && worst <= 1e-5;
  });

  criterion(5, "per-step descent across all planned steps", [&](std::string& detail) {
    build_corpus();
    std::size_t steps = 0;
    int violations = 0;
    for (const auto& path : g_corpus.paths)
      for (const auto& rec : path.steps) {
        ++steps;
        if (rec.objective_after > rec.objective_before) ++violations;
      }
    detail = std::to_string(steps) + " optimization steps, " + std::to_string(violations) +
             " descent violations";
    return steps > 0 && violations == 0;
  });

  criterion(6, "one-step minimize vs 10^4-point dense disk sample, 50 instances",
            [&](std::string& detail) {
              const auto settings = sp::KernelSettings::for_radius(kSqrt2);
              int checked = 0;
              double worst = -1e300;
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
                const sp::DiskBoxRegion region{center, kSqrt2, grid.world_box()};
                const auto report = sp::minimize(field, region, settings);
                double best = field.eval(region.center);
                for (const auto& cand : dense_disk_sample(center, region.radius)) {
                  if (!region.box.contains(cand)) continue;
                  best = std::min(best, field.eval(cand));
                }
                worst = std::max(worst, report.value - best);
                ++checked;
              }
              detail = std::to_string(checked) + " instances, worst value gap " +
                       std::to_string(worst);
              return checked >= 45 && worst <= 1e-3;
            });

  criterion(7, "end-to-end city-block mission via the CLI", [&](std::string& detail) {
    std::string err;
    if (run_cli_quiet({"gen-city", "--size", "100", "100", "50", "--blocks", "12", "--seed", "1",
                       "--out", at("city.json")},
                      &err) != 0) {
      detail = "gen-city failed: " + err;
      return false;
    }
    std::ofstream(at("cfg.json")) << R"({"intermediate_waypoints": [[20.5, 80.5]]})";
    if (run_cli_quiet({"plan", "--map", at("city.json"), "--start", "50.5", "5.5", "5",
                       "--target", "50.5", "95.5", "5", "--config", at("cfg.json"), "--out",
                       at("traj.json"), "--svg", at("mission.svg")},
                      &err) != 0) {
      detail = "plan failed: " + err;
      return false;
    }
    if (run_cli_quiet({"check", "--traj", at("traj.json"), "--map", at("city.json"), "--config",
                       at("cfg.json")},
                      &err) != 0) {
      detail = "check failed: " + err;
      return false;
    }
    const auto traj = sp::load_trajectory(at("traj.json"));
    double plateau = 0.0;
    for (const auto& p : traj.trajectory.points) plateau = std::max(plateau, p.z);
    detail = "clearance " + std::to_string(traj.metrics.min_clearance_value) + ", plateau " +
             std::to_string(plateau);
    return traj.metrics.min_clearance_value < 0.5 && plateau == 35.0;
  });

  criterion(8, "byte-identical trajectory and SVG on rerun", [&](std::string& detail) {
    std::string err;
    if (run_cli_quiet({"plan", "--map", at("city.json"), "--start", "50.5", "5.5", "5",
                       "--target", "50.5", "95.5", "5", "--config", at("cfg.json"), "--out",
                       at("traj2.json"), "--svg", at("mission2.svg")},
                      &err) != 0) {
      detail = "rerun failed: " + err;
      return false;
    }
    const bool traj_same = read_file(at("traj.json")) == read_file(at("traj2.json"));
    const bool svg_same = read_file(at("mission.svg")) == read_file(at("mission2.svg"));
    detail = std::string("trajectory ") + (traj_same ? "identical" : "differs") + ", svg " +
             (svg_same ? "identical" : "differs");
    return traj_same && svg_same;
  });

  fs::remove_all(dir);
  if (g_failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures;
}
