#include "tmscat/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace tmscat {

static_assert(std::endian::native == std::endian::little,
              "dump format is little-endian; big-endian hosts unsupported");

namespace {

constexpr std::uint32_t kDumpVersion = 1;

void write_dump(const std::filesystem::path& path, const char magic[4],
                const Eigen::MatrixXcd& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write dump: cannot open " + path.string());
  const std::uint32_t header[3] = {kDumpVersion,
                                   static_cast<std::uint32_t>(values.rows()),
                                   static_cast<std::uint32_t>(values.cols())};
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const double pair[2] = {values(r, c).real(), values(r, c).imag()};
      out.write(reinterpret_cast<const char*>(pair), sizeof(pair));
    }
  }
  if (!out) throw Error("write dump: short write to " + path.string());
}

Eigen::MatrixXcd read_dump(const std::filesystem::path& path,
                           const char magic[4]) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("read dump: cannot open " + path.string());
  char got_magic[4];
  std::uint32_t header[3];
  in.read(got_magic, 4);
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!in || std::memcmp(got_magic, magic, 4) != 0)
    throw Error("read dump: " + path.string() + " is not a " +
                std::string(magic, 4) + " file");
  if (header[0] != kDumpVersion)
    throw Error("read dump: unsupported version " +
                std::to_string(header[0]) + " in " + path.string());
  const Eigen::Index rows = header[1], cols = header[2];
  if (rows < 1 || cols < 1)
    throw Error("read dump: empty dimensions in " + path.string());
  Eigen::MatrixXcd values(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double pair[2];
      in.read(reinterpret_cast<char*>(pair), sizeof(pair));
      values(r, c) = {pair[0], pair[1]};
    }
  }
  if (!in) throw Error("read dump: truncated file " + path.string());
  return values;
}

}  // namespace

void write_field_dump(const std::filesystem::path& path,
                      const Eigen::MatrixXcd& values) {
  write_dump(path, "CFLD", values);
}

Eigen::MatrixXcd read_field_dump(const std::filesystem::path& path) {
  return read_dump(path, "CFLD");
}

void write_contrast_dump(const std::filesystem::path& path,
                         const ContrastMap& map) {
  if (map.grid < 1 ||
      map.values.size() != static_cast<Eigen::Index>(map.grid) * map.grid)
    throw Error("write_contrast_dump: inconsistent map");
  // Row-major M x M; the values vector is already in row-major cell order.
  Eigen::MatrixXcd grid_view(map.grid, map.grid);
  for (int r = 0; r < map.grid; ++r)
    for (int c = 0; c < map.grid; ++c)
      grid_view(r, c) = map.values[cell_index(r, c, map.grid)];
  write_dump(path, "CMAP", grid_view);
}

ContrastMap read_contrast_dump(const std::filesystem::path& path) {
  const Eigen::MatrixXcd grid_view = read_dump(path, "CMAP");
  if (grid_view.rows() != grid_view.cols())
    throw Error("read_contrast_dump: non-square map in " + path.string());
  ContrastMap map;
  map.grid = static_cast<int>(grid_view.rows());
  map.values.resize(grid_view.size());
  for (int r = 0; r < map.grid; ++r)
    for (int c = 0; c < map.grid; ++c)
      map.values[cell_index(r, c, map.grid)] = grid_view(r, c);
  return map;
}

void write_pgm(const std::filesystem::path& path,
               const Eigen::MatrixXd& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("write_pgm: cannot open " + path.string());
  out << "P5\n" << image.cols() << " " << image.rows() << "\n255\n";
  for (Eigen::Index r = 0; r < image.rows(); ++r) {
    for (Eigen::Index c = 0; c < image.cols(); ++c) {
      const double v = std::min(1.0, std::max(0.0, image(r, c)));
      const unsigned char byte = static_cast<unsigned char>(v * 255.0 + 0.5);
      out.put(static_cast<char>(byte));
    }
  }
  if (!out) throw Error("write_pgm: short write to " + path.string());
}

RasterImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("read_pgm: cannot open " + path.string());

  auto next_token = [&in, &path]() -> std::string {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
      if (ch == '#') {  // comment to end of line
        while ((ch = in.get()) != EOF && ch != '\n') {}
        continue;
      }
      if (std::isspace(ch)) {
        if (!tok.empty()) return tok;
        continue;
      }
      tok.push_back(static_cast<char>(ch));
    }
    if (tok.empty())
      throw Error("read_pgm: truncated header in " + path.string());
    return tok;
  };

  if (next_token() != "P5")
    throw Error("read_pgm: " + path.string() + " is not binary PGM (P5)");
  const int width = std::stoi(next_token());
  const int height = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (width < 1 || height < 1)
    throw Error("read_pgm: bad dimensions in " + path.string());
  if (maxval < 1 || maxval > 255)
    throw Error("read_pgm: only 8-bit PGM supported, maxval " +
                std::to_string(maxval) + " in " + path.string());
  // The header ends with exactly one whitespace byte, already consumed by
  // next_token's terminating isspace read.
  RasterImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<size_t>(width) * height);
  std::vector<unsigned char> raw(img.pixels.size());
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (!in) throw Error("read_pgm: truncated pixel data in " + path.string());
  for (size_t i = 0; i < raw.size(); ++i)
    img.pixels[i] = static_cast<double>(raw[i]) / maxval;
  return img;
}

Eigen::MatrixXd contrast_preview(const ContrastMap& map, double display_max,
                                 bool imag_channel) {
  if (!(display_max > 0.0))
    throw Error("contrast_preview: display_max must be > 0");
  Eigen::MatrixXd image(map.grid, map.grid);
  for (int r = 0; r < map.grid; ++r) {
    for (int c = 0; c < map.grid; ++c) {
      const auto v = map.values[cell_index(map.grid - 1 - r, c, map.grid)];
      image(r, c) = (imag_channel ? v.imag() : v.real()) / display_max;
    }
  }
  return image;
}

CsvWriter::CsvWriter(std::filesystem::path path,
                     std::vector<std::string> columns)
    : path_(std::move(path)), columns_(std::move(columns)) {}

void CsvWriter::append_row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_.size())
    throw Error("CsvWriter: got " + std::to_string(fields.size()) +
                " fields, expected " + std::to_string(columns_.size()));
  const bool need_header =
      !std::filesystem::exists(path_) || std::filesystem::file_size(path_) == 0;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("CsvWriter: cannot open " + path_.string());

  auto emit = [&out](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::string f = row[i];
      if (f.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : f) {
          if (ch == '"') quoted += '"';
          quoted += ch;
        }
        quoted += '"';
        f = std::move(quoted);
      }
      out << f;
      if (i + 1 < row.size()) out << ",";
    }
    out << "\n";
  };

  if (need_header) emit(columns_);
  emit(fields);
  if (!out) throw Error("CsvWriter: short write to " + path_.string());
}

std::string CsvWriter::format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace tmscat
