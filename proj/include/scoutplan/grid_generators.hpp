#pragma once

#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "scoutplan/error.hpp"
#include "scoutplan/occupancy_grid.hpp"

namespace scoutplan {

namespace detail {

// mt19937_64 output mapped to [0,1) without uniform_real_distribution, whose
// exact output is implementation-defined; this keeps generated maps identical
// across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

}  // namespace detail

// Each cell independently 1.0 with probability `density`, else 0.0. Pure
// function of (size, density, seed).
inline OccupancyGrid2D gen_random(int nx, int ny, double density, std::uint64_t seed,
                                  double resolution = 1.0) {
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("density must lie in [0,1]");
  OccupancyGrid2D g = OccupancyGrid2D::zeros(nx, ny, resolution);
  std::mt19937_64 rng(seed);
  for (double& v : g.values) v = detail::unit_uniform(rng) < density ? 1.0 : 0.0;
  return g;
}

namespace detail {

struct Footprint {
  int i0, j0, i1, j1;  // inclusive cell range

  bool intersects(const Footprint& o) const {
    return i0 <= o.i1 && o.i0 <= i1 && j0 <= o.j1 && o.j0 <= j1;
  }

  Footprint grown(int m, int nx, int ny) const {
    return {std::max(0, i0 - m), std::max(0, j0 - m), std::min(nx - 1, i1 + m),
            std::min(ny - 1, j1 + m)};
  }
};

// Every raw-map free cell must be reachable from the border ring, which the
// placement margins keep free.
inline bool free_space_connected(const OccupancyGrid2D& g) {
  std::vector<char> seen(g.values.size(), 0);
  std::queue<std::pair<int, int>> frontier;
  frontier.push({0, 0});
  seen[g.index(0, 0)] = 1;
  std::size_t reached = 0;
  while (!frontier.empty()) {
    auto [i, j] = frontier.front();
    frontier.pop();
    ++reached;
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      const int ii = i + di[d], jj = j + dj[d];
      if (!g.in_grid(ii, jj) || seen[g.index(ii, jj)] || g.at(ii, jj) != 0.0) continue;
      seen[g.index(ii, jj)] = 1;
      frontier.push({ii, jj});
    }
  }
  std::size_t free_cells = 0;
  for (double v : g.values)
    if (v == 0.0) ++free_cells;
  return reached == free_cells;
}

}  // namespace detail

// Synthetic city map: block_count axis-aligned prisms of varied footprints
// and heights on an otherwise free grid. Footprints stay 2 cells off the
// border and keep a Chebyshev gap of at least 3 cells from each other, so the
// raw map always has free corridors between adjacent prisms.
inline OccupancyGrid3D gen_city_block(int nx, int ny, int nz, int block_count, std::uint64_t seed,
                                      double resolution = 1.0) {
  if (block_count < 1) throw std::invalid_argument("block_count must be >= 1");
  OccupancyGrid3D g = OccupancyGrid3D::zeros(nx, ny, nz, resolution);
  const int margin = 2;
  const int w_min = 2;
  const int w_max = std::max(w_min, std::min(nx, ny) / 5);
  if (nx < 2 * margin + w_min || ny < 2 * margin + w_min)
    throw Error(ErrorCode::PlacementFailed,
                "grid too small for any block: " + std::to_string(nx) + "x" + std::to_string(ny));

  std::mt19937_64 rng(seed);
  std::vector<detail::Footprint> placed;
  placed.reserve(block_count);
  const int attempts_per_block = 1000;
  for (int b = 0; b < block_count; ++b) {
    bool ok = false;
    for (int attempt = 0; attempt < attempts_per_block && !ok; ++attempt) {
      const int w = w_min + static_cast<int>(detail::uniform_below(rng, w_max - w_min + 1));
      const int d = w_min + static_cast<int>(detail::uniform_below(rng, w_max - w_min + 1));
      const int i_span = nx - 2 * margin - w + 1;
      const int j_span = ny - 2 * margin - d + 1;
      if (i_span <= 0 || j_span <= 0) continue;
      const int i0 = margin + static_cast<int>(detail::uniform_below(rng, i_span));
      const int j0 = margin + static_cast<int>(detail::uniform_below(rng, j_span));
      detail::Footprint fp{i0, j0, i0 + w - 1, j0 + d - 1};
      const detail::Footprint probe = fp.grown(2, nx, ny);
      bool clear = true;
      for (const auto& other : placed)
        if (probe.intersects(other)) {
          clear = false;
          break;
        }
      if (!clear) continue;
      const int h_min = std::max(1, nz / 4);
      const int h = h_min + static_cast<int>(detail::uniform_below(rng, nz - h_min + 1));
      for (int k = 0; k < h; ++k)
        for (int j = fp.j0; j <= fp.j1; ++j)
          for (int i = fp.i0; i <= fp.i1; ++i) g.at(i, j, k) = 1.0;
      placed.push_back(fp);
      ok = true;
    }
    if (!ok)
      throw Error(ErrorCode::PlacementFailed,
                  "could not place block " + std::to_string(b + 1) + " of " +
                      std::to_string(block_count) + " while preserving corridors");
  }

  if (!detail::free_space_connected(project_to_plane(g)))
    throw Error(ErrorCode::PlacementFailed, "free space disconnected after placement");
  return g;
}

}  // namespace scoutplan
