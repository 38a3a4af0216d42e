#pragma once

#include <algorithm>
#include <cmath>

namespace scoutplan {

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

inline PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.x + b.x, a.y + b.y}; }
inline PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.x - b.x, a.y - b.y}; }
inline PlanarPoint operator*(double s, PlanarPoint p) { return {s * p.x, s * p.y}; }
inline bool operator==(PlanarPoint a, PlanarPoint b) { return a.x == b.x && a.y == b.y; }

inline double dot(PlanarPoint a, PlanarPoint b) { return a.x * b.x + a.y * b.y; }
inline double norm(PlanarPoint p) { return std::sqrt(p.x * p.x + p.y * p.y); }
inline double distance(PlanarPoint a, PlanarPoint b) { return norm(a - b); }

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  PlanarPoint xy() const { return {x, y}; }
};

inline bool operator==(const Point3& a, const Point3& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z;
}

inline double distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Axis-aligned box in the plane, used both as the environment boundary and
// as the box part of step-feasibility regions.
struct Box2 {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool valid() const {
    return std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
           std::isfinite(y_max) && x_min < x_max && y_min < y_max;
  }

  bool contains(PlanarPoint p, double tol = 0.0) const {
    return p.x >= x_min - tol && p.x <= x_max + tol && p.y >= y_min - tol && p.y <= y_max + tol;
  }

  bool contains_strict(PlanarPoint p) const {
    return p.x > x_min && p.x < x_max && p.y > y_min && p.y < y_max;
  }

  PlanarPoint clamp(PlanarPoint p) const {
    return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)};
  }
};

}  // namespace scoutplan
