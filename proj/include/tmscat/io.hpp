#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tmscat/common.hpp"
#include "tmscat/scene.hpp"

namespace tmscat {

/// Field dump ("CFLD") and contrast dump ("CMAP") share one binary layout:
/// 4-byte magic, u32 version (= 1), u32 rows, u32 cols, then rows*cols
/// little-endian f64 (re, im) pairs in row-major order. Contrast maps are
/// written as their M x M grid.
void write_field_dump(const std::filesystem::path& path,
                      const Eigen::MatrixXcd& values);
Eigen::MatrixXcd read_field_dump(const std::filesystem::path& path);

void write_contrast_dump(const std::filesystem::path& path,
                         const ContrastMap& map);
ContrastMap read_contrast_dump(const std::filesystem::path& path);

/// 8-bit binary PGM (P5). `image` holds values in [0, 1] (clamped on write),
/// row 0 = top row of the picture.
void write_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& image);
RasterImage read_pgm(const std::filesystem::path& path);

/// Renders a contrast channel to a [0, 1] image for PGM previews: value /
/// display_max, clamped. Grid row 0 (min y) lands on the bottom image row.
Eigen::MatrixXd contrast_preview(const ContrastMap& map, double display_max,
                                 bool imag_channel = false);

/// Appends rows to a CSV file, writing the header only when the file starts
/// empty. Fields containing commas or quotes are quoted. Floating-point
/// fields should be formatted with format_double (17 significant digits).
class CsvWriter {
 public:
  CsvWriter(std::filesystem::path path, std::vector<std::string> columns);
  void append_row(const std::vector<std::string>& fields);
  static std::string format_double(double value);

 private:
  std::filesystem::path path_;
  std::vector<std::string> columns_;
};

}  // namespace tmscat
