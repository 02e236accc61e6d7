#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "tmscat/common.hpp"

namespace tmscat {

/// Grayscale intensity image, values in [0, 1], row-major with row 0 at the
/// top of the image (max y when mapped onto the DOI).
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;  // size width*height

  double at(int row, int col) const { return pixels[row * width + col]; }
};

enum class ShapeKind { disk, annulus, raster };

/// One scene primitive. Disks and annuli carry a uniform complex contrast;
/// a raster shape spans the whole DOI and maps pixel intensity p to
/// p * max_contrast by nearest-neighbor lookup (stored in `contrast`).
/// Later shapes overwrite earlier ones where they overlap.
struct ShapeSpec {
  ShapeKind kind = ShapeKind::disk;
  Eigen::Vector2d center{0.0, 0.0};
  double radius = 0.0;                       // disk
  double inner_radius = 0.0;                 // annulus
  double outer_radius = 0.0;                 // annulus
  std::complex<double> contrast{0.0, 0.0};   // uniform value / raster max
  std::shared_ptr<const RasterImage> raster; // raster payload
  std::string raster_path;                   // as written in the scene file
};

ShapeSpec make_disk(Eigen::Vector2d center, double radius,
                    std::complex<double> contrast);
ShapeSpec make_annulus(Eigen::Vector2d center, double inner_radius,
                       double outer_radius, std::complex<double> contrast);

/// Wraps an intensity image as a DOI-filling raster shape. Intensities must
/// lie in [0, 1]; max_contrast must have nonnegative real and imaginary parts.
ShapeSpec import_raster(RasterImage image, std::complex<double> max_contrast,
                        std::string source_path = {});

/// Rasterizes shapes onto the M x M cell grid with 4x4 subsampling per cell:
/// each subsample takes the contrast of the last shape covering it (0 if
/// none), and the cell value is the mean over the 16 samples. Shapes must lie
/// inside the DOI and carry nonnegative contrast; violations throw Error.
ContrastMap rasterize(const std::vector<ShapeSpec>& shapes,
                      const SceneConfig& config, int grid);

/// The two-disk + annulus benchmark profile: disks of radius 0.02 m at
/// (+-0.03, 0.06), annulus with radii 0.03/0.06 m at (0, -0.02), all at the
/// given contrast. Throws if the profile does not fit the config's DOI.
std::vector<ShapeSpec> austria_profile(std::complex<double> contrast,
                                       const SceneConfig& config);

/// Draws 1-3 random disks fully inside the DOI: radius U[0.01, 0.05] m,
/// Re(chi) U[0.2, 2.2], Im(chi) U[0, 1] when lossy (else 0). Deterministic
/// for a fixed seed.
std::vector<ShapeSpec> sample_cylinder_scene(std::uint64_t seed, bool lossy,
                                             const SceneConfig& config);

/// Scene file round trip (JSON: {"shapes": [...]}). Raster shapes reference a
/// PGM file by path relative to the scene file; load resolves and reads it.
std::vector<ShapeSpec> load_scene(const std::filesystem::path& path);
void save_scene(const std::filesystem::path& path,
                const std::vector<ShapeSpec>& shapes);

}  // namespace tmscat
