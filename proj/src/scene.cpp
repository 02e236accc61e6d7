#include "tmscat/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <random>

#include <json.hpp>

#include "tmscat/io.hpp"

namespace tmscat {
namespace {

void check_contrast(const std::complex<double>& c) {
  if (c.real() < 0.0 || c.imag() < 0.0)
    throw Error("scene: contrast must have nonnegative real and imaginary "
                "parts, got (" + std::to_string(c.real()) + ", " +
                std::to_string(c.imag()) + ")");
}

// A shape must intersect the DOI box; shapes entirely outside are rejected.
// (Shapes may extend past the box, e.g. a disk circumscribing the DOI.)
void check_inside_doi(const ShapeSpec& s, double doi) {
  if (s.kind == ShapeKind::raster) return;  // spans the DOI by definition
  const double half = doi / 2.0;
  // Distance from the shape center to the nearest/farthest point of the box.
  const double gx = std::max(std::abs(s.center.x()) - half, 0.0);
  const double gy = std::max(std::abs(s.center.y()) - half, 0.0);
  const double nearest = std::hypot(gx, gy);
  const double farthest = std::hypot(std::abs(s.center.x()) + half,
                                     std::abs(s.center.y()) + half);
  const double outer =
      s.kind == ShapeKind::disk ? s.radius : s.outer_radius;
  bool outside = nearest > outer;
  if (s.kind == ShapeKind::annulus && farthest < s.inner_radius)
    outside = true;  // the whole DOI sits inside the hole
  if (outside)
    throw Error("scene: shape centered at (" + std::to_string(s.center.x()) +
                ", " + std::to_string(s.center.y()) +
                ") does not intersect the DOI (side " + std::to_string(doi) +
                " m)");
}

// Contrast contributed by a shape at a point, or nullopt when uncovered.
std::optional<std::complex<double>> value_at(const ShapeSpec& s, double x,
                                             double y, double doi) {
  switch (s.kind) {
    case ShapeKind::disk: {
      const double dx = x - s.center.x(), dy = y - s.center.y();
      if (dx * dx + dy * dy <= s.radius * s.radius) return s.contrast;
      return std::nullopt;
    }
    case ShapeKind::annulus: {
      const double dx = x - s.center.x(), dy = y - s.center.y();
      const double d2 = dx * dx + dy * dy;
      if (d2 >= s.inner_radius * s.inner_radius &&
          d2 <= s.outer_radius * s.outer_radius)
        return s.contrast;
      return std::nullopt;
    }
    case ShapeKind::raster: {
      const auto& img = *s.raster;
      const double u = (x + doi / 2.0) / doi;        // 0 at left
      const double v = (doi / 2.0 - y) / doi;        // 0 at top (max y)
      const int col = std::clamp(static_cast<int>(u * img.width), 0,
                                 img.width - 1);
      const int row = std::clamp(static_cast<int>(v * img.height), 0,
                                 img.height - 1);
      return img.at(row, col) * s.contrast;
    }
  }
  return std::nullopt;
}

}  // namespace

ShapeSpec make_disk(Eigen::Vector2d center, double radius,
                    std::complex<double> contrast) {
  if (!(radius > 0.0)) throw Error("scene: disk radius must be > 0");
  check_contrast(contrast);
  ShapeSpec s;
  s.kind = ShapeKind::disk;
  s.center = center;
  s.radius = radius;
  s.contrast = contrast;
  return s;
}

ShapeSpec make_annulus(Eigen::Vector2d center, double inner_radius,
                       double outer_radius, std::complex<double> contrast) {
  if (!(inner_radius >= 0.0) || !(outer_radius > inner_radius))
    throw Error("scene: annulus needs 0 <= inner < outer radius");
  check_contrast(contrast);
  ShapeSpec s;
  s.kind = ShapeKind::annulus;
  s.center = center;
  s.inner_radius = inner_radius;
  s.outer_radius = outer_radius;
  s.contrast = contrast;
  return s;
}

ShapeSpec import_raster(RasterImage image, std::complex<double> max_contrast,
                        std::string source_path) {
  if (image.width < 1 || image.height < 1 ||
      image.pixels.size() !=
          static_cast<size_t>(image.width) * image.height)
    throw Error("scene: raster image has inconsistent dimensions");
  for (double p : image.pixels)
    if (!(p >= 0.0 && p <= 1.0))
      throw Error("scene: raster intensities must lie in [0, 1]");
  check_contrast(max_contrast);
  ShapeSpec s;
  s.kind = ShapeKind::raster;
  s.contrast = max_contrast;
  s.raster = std::make_shared<RasterImage>(std::move(image));
  s.raster_path = std::move(source_path);
  return s;
}

ContrastMap rasterize(const std::vector<ShapeSpec>& shapes,
                      const SceneConfig& config, int grid) {
  config.validate();
  if (grid < 2) throw Error("rasterize: grid must be >= 2");
  const double doi = config.doi_side_m;
  for (const auto& s : shapes) {
    check_contrast(s.contrast);
    check_inside_doi(s, doi);
    if (s.kind == ShapeKind::raster && !s.raster)
      throw Error("rasterize: raster shape without image payload");
  }

  const double dx = doi / grid;
  constexpr int kSub = 4;  // 4x4 subsamples per cell
  ContrastMap map;
  map.grid = grid;
  map.values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid) * grid);

  for (int row = 0; row < grid; ++row) {
    const double y0 = -doi / 2.0 + row * dx;
    for (int col = 0; col < grid; ++col) {
      const double x0 = -doi / 2.0 + col * dx;
      std::complex<double> acc = 0.0;
      for (int sv = 0; sv < kSub; ++sv) {
        const double y = y0 + (sv + 0.5) * dx / kSub;
        for (int su = 0; su < kSub; ++su) {
          const double x = x0 + (su + 0.5) * dx / kSub;
          // Last shape covering the sample wins.
          for (auto it = shapes.rbegin(); it != shapes.rend(); ++it) {
            if (auto v = value_at(*it, x, y, doi)) {
              acc += *v;
              break;
            }
          }
        }
      }
      map.values[cell_index(row, col, grid)] = acc / double(kSub * kSub);
    }
  }
  return map;
}

std::vector<ShapeSpec> austria_profile(std::complex<double> contrast,
                                       const SceneConfig& config) {
  config.validate();
  std::vector<ShapeSpec> shapes = {
      make_disk({-0.03, 0.06}, 0.02, contrast),
      make_disk({0.03, 0.06}, 0.02, contrast),
      make_annulus({0.0, -0.02}, 0.03, 0.06, contrast),
  };
  for (const auto& s : shapes) check_inside_doi(s, config.doi_side_m);
  return shapes;
}

std::vector<ShapeSpec> sample_cylinder_scene(std::uint64_t seed, bool lossy,
                                             const SceneConfig& config) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count_dist(1, 3);
  std::uniform_real_distribution<double> radius_dist(0.01, 0.05);
  std::uniform_real_distribution<double> re_dist(0.2, 2.2);
  std::uniform_real_distribution<double> im_dist(0.0, 1.0);

  const int count = count_dist(rng);
  std::vector<ShapeSpec> shapes;
  shapes.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double r = radius_dist(rng);
    // Center bounds keep the disk fully inside the DOI.
    const double bound = config.doi_side_m / 2.0 - r;
    std::uniform_real_distribution<double> center_dist(-bound, bound);
    const double cx = center_dist(rng);
    const double cy = center_dist(rng);
    const double re = re_dist(rng);
    const double im = lossy ? im_dist(rng) : 0.0;
    shapes.push_back(make_disk({cx, cy}, r, {re, im}));
  }
  return shapes;
}

std::vector<ShapeSpec> load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_scene: cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("load_scene: invalid JSON in " + path.string() + ": " +
                e.what());
  }
  if (!j.contains("shapes") || !j["shapes"].is_array())
    throw Error("load_scene: " + path.string() + " lacks a \"shapes\" array");

  auto parse_complex = [](const nlohmann::json& v) -> std::complex<double> {
    if (!v.is_array() || v.size() != 2)
      throw Error("load_scene: contrast must be [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
  };

  std::vector<ShapeSpec> shapes;
  for (const auto& js : j["shapes"]) {
    const std::string kind = js.at("kind").get<std::string>();
    if (kind == "disk") {
      const auto c = js.at("center_m");
      shapes.push_back(make_disk({c[0].get<double>(), c[1].get<double>()},
                                 js.at("radius_m").get<double>(),
                                 parse_complex(js.at("contrast"))));
    } else if (kind == "annulus") {
      const auto c = js.at("center_m");
      shapes.push_back(make_annulus({c[0].get<double>(), c[1].get<double>()},
                                    js.at("inner_radius_m").get<double>(),
                                    js.at("outer_radius_m").get<double>(),
                                    parse_complex(js.at("contrast"))));
    } else if (kind == "raster") {
      const std::string rel = js.at("path").get<std::string>();
      const auto img_path = path.parent_path() / rel;
      shapes.push_back(import_raster(read_pgm(img_path),
                                     parse_complex(js.at("max_contrast")),
                                     rel));
    } else {
      throw Error("load_scene: unknown shape kind \"" + kind + "\"");
    }
  }
  return shapes;
}

void save_scene(const std::filesystem::path& path,
                const std::vector<ShapeSpec>& shapes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : shapes) {
    nlohmann::json js;
    switch (s.kind) {
      case ShapeKind::disk:
        js["kind"] = "disk";
        js["center_m"] = {s.center.x(), s.center.y()};
        js["radius_m"] = s.radius;
        js["contrast"] = {s.contrast.real(), s.contrast.imag()};
        break;
      case ShapeKind::annulus:
        js["kind"] = "annulus";
        js["center_m"] = {s.center.x(), s.center.y()};
        js["inner_radius_m"] = s.inner_radius;
        js["outer_radius_m"] = s.outer_radius;
        js["contrast"] = {s.contrast.real(), s.contrast.imag()};
        break;
      case ShapeKind::raster:
        if (s.raster_path.empty())
          throw Error("save_scene: raster shape has no source path");
        js["kind"] = "raster";
        js["path"] = s.raster_path;
        js["max_contrast"] = {s.contrast.real(), s.contrast.imag()};
        break;
    }
    arr.push_back(std::move(js));
  }
  std::ofstream out(path);
  if (!out) throw Error("save_scene: cannot write " + path.string());
  out << nlohmann::json{{"shapes", std::move(arr)}}.dump(2) << "\n";
}

}  // namespace tmscat
