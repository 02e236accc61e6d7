#include "tmscat/common.hpp"

#include <cmath>

namespace tmscat {

void SceneConfig::validate() const {
  if (!(doi_side_m > 0.0))
    throw Error("SceneConfig: doi_side_m must be > 0");
  if (!(freq_hz > 0.0))
    throw Error("SceneConfig: freq_hz must be > 0");
  if (n_tx < 1 || n_rx < 1)
    throw Error("SceneConfig: need at least one transmitter and one receiver");
  if (forward_grid < 1 || inversion_grid < 1)
    throw Error("SceneConfig: grids must be >= 1");
  // The antenna ring must enclose the DOI so no antenna falls inside the grid.
  const double doi_circumradius = doi_side_m * std::sqrt(2.0) / 2.0;
  if (!(antenna_radius_m > doi_circumradius))
    throw Error("SceneConfig: antenna ring (radius " +
                std::to_string(antenna_radius_m) +
                " m) must enclose the DOI (circumradius " +
                std::to_string(doi_circumradius) + " m)");
}

std::vector<double> axis_coords(double doi_side_m, int grid) {
  const double dx = doi_side_m / grid;
  std::vector<double> coords(grid);
  for (int i = 0; i < grid; ++i)
    coords[i] = -doi_side_m / 2.0 + (i + 0.5) * dx;
  return coords;
}

std::vector<Eigen::Vector2d> ring_positions(double radius_m, int n) {
  std::vector<Eigen::Vector2d> pos(n);
  for (int q = 0; q < n; ++q) {
    const double angle = 2.0 * 3.14159265358979323846 * q / n;
    pos[q] = radius_m * Eigen::Vector2d(std::cos(angle), std::sin(angle));
  }
  return pos;
}

void ContrastMap::validate() const {
  if (grid < 1 || values.size() != static_cast<Eigen::Index>(grid) * grid)
    throw Error("ContrastMap: values size " + std::to_string(values.size()) +
                " does not match grid " + std::to_string(grid));
  for (Eigen::Index n = 0; n < values.size(); ++n) {
    if (values[n].real() < 0.0 || values[n].imag() < 0.0)
      throw Error("ContrastMap: negative contrast at cell " +
                  std::to_string(n));
  }
}

bool ContrastMap::has_imaginary(double tol) const {
  for (Eigen::Index n = 0; n < values.size(); ++n)
    if (std::abs(values[n].imag()) > tol) return true;
  return false;
}

ContrastMap clamp_nonnegative(ContrastMap map) {
  for (Eigen::Index n = 0; n < map.values.size(); ++n)
    map.values[n] = {std::max(0.0, map.values[n].real()),
                     std::max(0.0, map.values[n].imag())};
  return map;
}

const char* field_kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::incident: return "incident";
    case FieldKind::total: return "total";
    case FieldKind::scattered: return "scattered";
  }
  return "unknown";
}

}  // namespace tmscat
