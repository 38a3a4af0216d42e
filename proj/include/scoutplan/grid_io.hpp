#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "scoutplan/error.hpp"
#include "scoutplan/occupancy_grid.hpp"

namespace scoutplan {

using GridVariant = std::variant<OccupancyGrid2D, OccupancyGrid3D>;

namespace detail {

inline double json_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::MalformedFile, std::string("missing field '") + key + "'");
  if (!j[key].is_number()) throw Error(ErrorCode::MalformedFile, std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

inline void check_grid_values(const nlohmann::json& values, std::size_t expected) {
  if (!values.is_array()) throw Error(ErrorCode::MalformedFile, "'values' must be an array");
  if (values.size() != expected)
    throw Error(ErrorCode::MalformedFile, "value count " + std::to_string(values.size()) +
                                              " does not match size product " + std::to_string(expected));
  for (const auto& v : values) {
    if (!v.is_number()) throw Error(ErrorCode::MalformedFile, "'values' entries must be numbers");
    const double x = v.get<double>();
    if (!(x >= 0.0 && x <= 1.0))
      throw Error(ErrorCode::MalformedFile, "value " + std::to_string(x) + " outside [0,1]");
  }
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedFile, path.string() + ": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace detail

inline nlohmann::json grid_to_json(const OccupancyGrid2D& g) {
  g.check_invariants();
  return {{"kind", "grid2"},
          {"size", {g.nx, g.ny}},
          {"resolution", g.resolution},
          {"origin", {g.origin_x, g.origin_y}},
          {"order", "x-fastest"},
          {"values", g.values}};
}

inline nlohmann::json grid_to_json(const OccupancyGrid3D& g) {
  g.check_invariants();
  return {{"kind", "grid3"},
          {"size", {g.nx, g.ny, g.nz}},
          {"resolution", g.resolution},
          {"origin", {g.origin_x, g.origin_y, g.origin_z}},
          {"order", "x-fastest"},
          {"values", g.values}};
}

inline GridVariant grid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedFile, "grid document must be a JSON object");
  for (const char* key : {"kind", "size", "resolution", "origin", "order", "values"})
    if (!j.contains(key))
      throw Error(ErrorCode::MalformedFile, std::string("missing field '") + key + "'");
  if (!j["kind"].is_string())
    throw Error(ErrorCode::MalformedFile, "'kind' must be a string");
  const std::string kind = j["kind"].get<std::string>();
  if (j["order"] != "x-fastest")
    throw Error(ErrorCode::MalformedFile, "'order' must be \"x-fastest\"");
  const auto& size = j["size"];
  const auto& origin = j["origin"];
  const double resolution = detail::json_number(j, "resolution");
  if (!(resolution > 0.0)) throw Error(ErrorCode::MalformedFile, "'resolution' must be > 0");

  if (kind == "grid2") {
    if (!size.is_array() || size.size() != 2 || !origin.is_array() || origin.size() != 2)
      throw Error(ErrorCode::MalformedFile, "grid2 needs size [nx,ny] and origin [x,y]");
    OccupancyGrid2D g;
    g.nx = size[0].get<int>();
    g.ny = size[1].get<int>();
    g.resolution = resolution;
    g.origin_x = origin[0].get<double>();
    g.origin_y = origin[1].get<double>();
    if (g.nx <= 0 || g.ny <= 0) throw Error(ErrorCode::MalformedFile, "'size' must be positive");
    detail::check_grid_values(j["values"], static_cast<std::size_t>(g.nx) * g.ny);
    g.values = j["values"].get<std::vector<double>>();
    return g;
  }
  if (kind == "grid3") {
    if (!size.is_array() || size.size() != 3 || !origin.is_array() || origin.size() != 3)
      throw Error(ErrorCode::MalformedFile, "grid3 needs size [nx,ny,nz] and origin [x,y,z]");
    OccupancyGrid3D g;
    g.nx = size[0].get<int>();
    g.ny = size[1].get<int>();
    g.nz = size[2].get<int>();
    g.resolution = resolution;
    g.origin_x = origin[0].get<double>();
    g.origin_y = origin[1].get<double>();
    g.origin_z = origin[2].get<double>();
    if (g.nx <= 0 || g.ny <= 0 || g.nz <= 0)
      throw Error(ErrorCode::MalformedFile, "'size' must be positive");
    detail::check_grid_values(j["values"], static_cast<std::size_t>(g.nx) * g.ny * g.nz);
    g.values = j["values"].get<std::vector<double>>();
    return g;
  }
  throw Error(ErrorCode::MalformedFile, "unknown kind '" + kind + "'");
}

inline void save_grid(const OccupancyGrid2D& g, const std::filesystem::path& path) {
  detail::write_text_file(path, grid_to_json(g).dump());
}

inline void save_grid(const OccupancyGrid3D& g, const std::filesystem::path& path) {
  detail::write_text_file(path, grid_to_json(g).dump());
}

inline GridVariant load_grid(const std::filesystem::path& path) {
  return grid_from_json(detail::read_json_file(path));
}

// Loads either kind and projects grid3 down to the plane.
inline OccupancyGrid2D load_grid_as_2d(const std::filesystem::path& path) {
  GridVariant v = load_grid(path);
  if (std::holds_alternative<OccupancyGrid2D>(v)) return std::get<OccupancyGrid2D>(v);
  return project_to_plane(std::get<OccupancyGrid3D>(v));
}

}  // namespace scoutplan
