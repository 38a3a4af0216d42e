#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "scoutplan/error.hpp"
#include "scoutplan/geometry.hpp"

namespace scoutplan {

// Probabilistic occupancy field on a regular planar lattice. Values live in
// [0,1] (0 = free, 1 = occupied). The value array is flat and x-fastest:
// values[i + nx*j]. Cell (i,j) has its center at origin + (i+0.5, j+0.5)*resolution.
struct OccupancyGrid2D {
  int nx = 0;
  int ny = 0;
  double resolution = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  std::vector<double> values;

  static OccupancyGrid2D zeros(int nx, int ny, double resolution = 1.0, double origin_x = 0.0,
                               double origin_y = 0.0) {
    OccupancyGrid2D g;
    g.nx = nx;
    g.ny = ny;
    g.resolution = resolution;
    g.origin_x = origin_x;
    g.origin_y = origin_y;
    g.values.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0.0);
    g.check_invariants();
    return g;
  }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * static_cast<std::size_t>(j);
  }

  double at(int i, int j) const { return values[index(i, j)]; }
  double& at(int i, int j) { return values[index(i, j)]; }

  bool in_grid(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }

  PlanarPoint cell_center(int i, int j) const {
    return {origin_x + (i + 0.5) * resolution, origin_y + (j + 0.5) * resolution};
  }

  Box2 world_box() const {
    return {origin_x, origin_x + nx * resolution, origin_y, origin_y + ny * resolution};
  }

  bool contains_world(PlanarPoint p) const { return world_box().contains(p); }

  // Cell containing a world point; coordinates clamped onto the lattice.
  void cell_of(PlanarPoint p, int& i, int& j) const {
    i = std::clamp(static_cast<int>(std::floor((p.x - origin_x) / resolution)), 0, nx - 1);
    j = std::clamp(static_cast<int>(std::floor((p.y - origin_y) / resolution)), 0, ny - 1);
  }

  void check_invariants() const {
    if (nx <= 0 || ny <= 0) throw std::invalid_argument("grid size must be positive");
    if (!(resolution > 0.0) || !std::isfinite(resolution))
      throw std::invalid_argument("resolution must be > 0");
    if (!std::isfinite(origin_x) || !std::isfinite(origin_y))
      throw std::invalid_argument("origin must be finite");
    if (values.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny))
      throw std::invalid_argument("value count must equal nx*ny");
    for (double v : values)
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("values must lie in [0,1]");
  }
};

// 3D variant; x-fastest flat storage: values[i + nx*(j + ny*k)].
struct OccupancyGrid3D {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  double resolution = 1.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  double origin_z = 0.0;
  std::vector<double> values;

  static OccupancyGrid3D zeros(int nx, int ny, int nz, double resolution = 1.0,
                               double origin_x = 0.0, double origin_y = 0.0,
                               double origin_z = 0.0) {
    OccupancyGrid3D g;
    g.nx = nx;
    g.ny = ny;
    g.nz = nz;
    g.resolution = resolution;
    g.origin_x = origin_x;
    g.origin_y = origin_y;
    g.origin_z = origin_z;
    g.values.assign(
        static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz),
        0.0);
    g.check_invariants();
    return g;
  }

  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(nx) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(ny) * static_cast<std::size_t>(k));
  }

  double at(int i, int j, int k) const { return values[index(i, j, k)]; }
  double& at(int i, int j, int k) { return values[index(i, j, k)]; }

  bool contains_world(const Point3& p) const {
    return p.x >= origin_x && p.x <= origin_x + nx * resolution && p.y >= origin_y &&
           p.y <= origin_y + ny * resolution && p.z >= origin_z && p.z <= origin_z + nz * resolution;
  }

  void check_invariants() const {
    if (nx <= 0 || ny <= 0 || nz <= 0) throw std::invalid_argument("grid size must be positive");
    if (!(resolution > 0.0) || !std::isfinite(resolution))
      throw std::invalid_argument("resolution must be > 0");
    const std::size_t n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
                          static_cast<std::size_t>(nz);
    if (values.size() != n) throw std::invalid_argument("value count must equal nx*ny*nz");
    for (double v : values)
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("values must lie in [0,1]");
  }
};

// Collapse a 3D grid onto the ground plane by per-column maximum. Obstacles
// whose cross section varies with height are covered by the footprint of
// their widest slice, so planning against the projection is conservative.
inline OccupancyGrid2D project_to_plane(const OccupancyGrid3D& g3) {
  OccupancyGrid2D g2 = OccupancyGrid2D::zeros(g3.nx, g3.ny, g3.resolution, g3.origin_x, g3.origin_y);
  for (int k = 0; k < g3.nz; ++k)
    for (int j = 0; j < g3.ny; ++j)
      for (int i = 0; i < g3.nx; ++i)
        g2.at(i, j) = std::max(g2.at(i, j), g3.at(i, j, k));
  return g2;
}

// Dilate cells with value >= threshold by a Euclidean disk of the given
// radius (measured between cell centers, in meters). Dilated cells are set to
// exactly 1.0; every other cell keeps its original probability.
inline OccupancyGrid2D inflate(const OccupancyGrid2D& g, double radius, double threshold) {
  if (!(radius >= 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("inflation radius must be >= 0");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("threshold must lie in (0,1)");

  OccupancyGrid2D out = g;
  const int reach = static_cast<int>(std::ceil(radius / g.resolution)) + 1;
  const double r2 = radius * radius;
  const double res2 = g.resolution * g.resolution;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (g.at(i, j) < threshold) continue;
      const int i_lo = std::max(0, i - reach), i_hi = std::min(g.nx - 1, i + reach);
      const int j_lo = std::max(0, j - reach), j_hi = std::min(g.ny - 1, j + reach);
      for (int jj = j_lo; jj <= j_hi; ++jj) {
        for (int ii = i_lo; ii <= i_hi; ++ii) {
          const double di = ii - i, dj = jj - j;
          if ((di * di + dj * dj) * res2 <= r2) out.at(ii, jj) = 1.0;
        }
      }
    }
  }
  return out;
}

namespace detail {

struct BilinearPatch {
  int i0, j0, i1, j1;
  double fx, fy;          // fractional position within the patch, in [0,1]
  bool clamped_x, clamped_y;  // true when p fell in the border band outside the cell-center hull
};

inline BilinearPatch locate_patch(const OccupancyGrid2D& g, PlanarPoint p) {
  if (!g.contains_world(p))
    throw Error(ErrorCode::OutOfBounds, "point (" + std::to_string(p.x) + ", " +
                                            std::to_string(p.y) + ") outside grid extent");
  // Continuous coordinates on the cell-center lattice.
  double gx = (p.x - g.origin_x) / g.resolution - 0.5;
  double gy = (p.y - g.origin_y) / g.resolution - 0.5;
  BilinearPatch patch{};
  patch.clamped_x = gx < 0.0 || gx > g.nx - 1.0;
  patch.clamped_y = gy < 0.0 || gy > g.ny - 1.0;
  gx = std::clamp(gx, 0.0, static_cast<double>(g.nx - 1));
  gy = std::clamp(gy, 0.0, static_cast<double>(g.ny - 1));
  patch.i0 = std::max(std::min(static_cast<int>(std::floor(gx)), g.nx - 2), 0);
  patch.j0 = std::max(std::min(static_cast<int>(std::floor(gy)), g.ny - 2), 0);
  patch.i1 = std::min(patch.i0 + 1, g.nx - 1);
  patch.j1 = std::min(patch.j0 + 1, g.ny - 1);
  patch.fx = gx - patch.i0;
  patch.fy = gy - patch.j0;
  return patch;
}

}  // namespace detail

// Occupancy at a continuous point: bilinear interpolation over the four
// surrounding cell-center values. Points between the grid edge and the
// outermost cell centers clamp onto the cell-center hull. Throws OutOfBounds
// outside the grid's world extent.
inline double occupancy_at(const OccupancyGrid2D& g, PlanarPoint p) {
  const auto q = detail::locate_patch(g, p);
  const double v00 = g.at(q.i0, q.j0), v10 = g.at(q.i1, q.j0);
  const double v01 = g.at(q.i0, q.j1), v11 = g.at(q.i1, q.j1);
  return (1.0 - q.fx) * (1.0 - q.fy) * v00 + q.fx * (1.0 - q.fy) * v10 +
         (1.0 - q.fx) * q.fy * v01 + q.fx * q.fy * v11;
}

// Analytic gradient (per meter) of the bilinear patch containing p. Inside a
// border clamp band the field is constant along the clamped axis, so that
// component is zero.
inline PlanarPoint occupancy_gradient(const OccupancyGrid2D& g, PlanarPoint p) {
  const auto q = detail::locate_patch(g, p);
  const double v00 = g.at(q.i0, q.j0), v10 = g.at(q.i1, q.j0);
  const double v01 = g.at(q.i0, q.j1), v11 = g.at(q.i1, q.j1);
  PlanarPoint grad{};
  if (!q.clamped_x)
    grad.x = ((v10 - v00) * (1.0 - q.fy) + (v11 - v01) * q.fy) / g.resolution;
  if (!q.clamped_y)
    grad.y = ((v01 - v00) * (1.0 - q.fx) + (v11 - v10) * q.fx) / g.resolution;
  return grad;
}

}  // namespace scoutplan
