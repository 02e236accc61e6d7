#include "tmscat/greens.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "fft2.hpp"
#include "tmscat/bessel.hpp"

namespace tmscat {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CellBasis {
  double dx;
  double area;
  double equiv_radius;
  double k0;
  cdouble coupling;   // (j k0 pi a / 2) J1(k0 a), scales every H0 kernel
  cdouble self_term;  // (j k0 pi a / 2) H1(k0 a) - 1
};

CellBasis make_basis(const SceneConfig& config, int grid) {
  CellBasis b{};
  b.dx = config.doi_side_m / grid;
  b.area = b.dx * b.dx;
  b.equiv_radius = std::sqrt(b.area / kPi);
  b.k0 = config.wavenumber();
  const double ka = b.k0 * b.equiv_radius;
  const cdouble front = cdouble(0.0, 1.0) * (b.k0 * kPi * b.equiv_radius / 2.0);
  b.coupling = front * bessel_j(1, ka);
  b.self_term = front * hankel1(1, ka) - 1.0;
  return b;
}

void check_grid(int grid) {
  if (grid < 2) {
    throw Error("operator assembly requires a grid of at least 2 cells per side");
  }
}

/// Kernel values on canonical displacements (lo, hi) with 0 <= lo <= hi < M;
/// the (0, 0) slot is zero so the convolution carries no self contribution.
std::vector<cdouble> canonical_stencil(const CellBasis& basis, int grid) {
  std::vector<cdouble> values(static_cast<std::size_t>(grid) * grid,
                              cdouble(0.0, 0.0));
  for (int hi = 0; hi < grid; ++hi) {
    for (int lo = 0; lo <= hi; ++lo) {
      if (hi == 0) continue;
      const double dist = basis.dx * std::hypot(double(lo), double(hi));
      values[static_cast<std::size_t>(lo) * grid + hi] =
          basis.coupling * hankel1(0, basis.k0 * dist);
    }
  }
  return values;
}

cdouble stencil_at(const std::vector<cdouble>& stencil, int grid, int dr,
                   int dc) {
  const int lo = std::min(std::abs(dr), std::abs(dc));
  const int hi = std::max(std::abs(dr), std::abs(dc));
  return stencil[static_cast<std::size_t>(lo) * grid + hi];
}

}  // namespace

const Eigen::MatrixXcd& GreensVolume::dense() const {
  if (!has_dense()) {
    throw Error("volume operator was assembled without dense storage");
  }
  return dense_;
}

GreensVolume assemble_gd(const SceneConfig& config, int grid,
                         DenseStorage storage) {
  config.validate();
  check_grid(grid);
  const CellBasis basis = make_basis(config, grid);
  const std::vector<cdouble> stencil = canonical_stencil(basis, grid);

  GreensVolume op;
  op.grid_ = grid;
  op.cell_area_ = basis.area;
  op.equiv_radius_ = basis.equiv_radius;
  op.k0_ = basis.k0;
  op.self_term_ = basis.self_term;

  const int ext = 2 * grid;
  op.fft_ = std::make_shared<internal::Fft2>(ext, ext);
  auto buffer = op.fft_->make_buffer();
  for (int p = 0; p < ext; ++p) {
    if (p == grid) continue;  // displacement -M row/column is never used
    const int dr = (p < grid) ? p : p - ext;
    for (int q = 0; q < ext; ++q) {
      if (q == grid) continue;
      const int dc = (q < grid) ? q : q - ext;
      buffer[static_cast<std::size_t>(p) * ext + q] =
          stencil_at(stencil, grid, dr, dc);
    }
  }
  op.fft_->forward(buffer.get());
  op.spectrum_ = Eigen::Map<const Eigen::VectorXcd>(
      buffer.get(), static_cast<Eigen::Index>(ext) * ext);

  const bool want_dense = storage == DenseStorage::always ||
                          (storage == DenseStorage::automatic && grid <= 64);
  if (want_dense) {
    const int n = grid * grid;
    op.dense_.resize(n, n);
    for (int row = 0; row < n; ++row) {
      const int rr = row / grid;
      const int rc = row % grid;
      for (int col = 0; col < n; ++col) {
        const int cr = col / grid;
        const int cc = col % grid;
        op.dense_(row, col) = (row == col)
                                  ? basis.self_term
                                  : stencil_at(stencil, grid, rr - cr, rc - cc);
      }
    }
  }
  return op;
}

Eigen::VectorXcd GreensVolume::apply_fft(const Eigen::VectorXcd& v) const {
  const int ext = 2 * grid_;
  auto buffer = fft_->make_buffer();
  for (int r = 0; r < grid_; ++r) {
    for (int c = 0; c < grid_; ++c) {
      buffer[static_cast<std::size_t>(r) * ext + c] =
          v[static_cast<Eigen::Index>(r) * grid_ + c];
    }
  }
  fft_->forward(buffer.get());
  const std::size_t total = static_cast<std::size_t>(ext) * ext;
  for (std::size_t i = 0; i < total; ++i) buffer[i] *= spectrum_[i];
  fft_->inverse(buffer.get());

  const double scale = 1.0 / static_cast<double>(total);
  Eigen::VectorXcd out(v.size());
  for (int r = 0; r < grid_; ++r) {
    for (int c = 0; c < grid_; ++c) {
      const Eigen::Index n = static_cast<Eigen::Index>(r) * grid_ + c;
      out[n] = buffer[static_cast<std::size_t>(r) * ext + c] * scale +
               self_term_ * v[n];
    }
  }
  return out;
}

Eigen::VectorXcd detail::gd_apply_vec(const GreensVolume& op,
                                      const Eigen::VectorXcd& v, GdPath path) {
  const Eigen::Index n = static_cast<Eigen::Index>(op.grid()) * op.grid();
  if (v.size() != n) {
    throw Error("gd_apply: vector length does not match the operator grid");
  }
  if (path == GdPath::dense) {
    return op.dense() * v;
  }
  return op.apply_fft(v);
}

Eigen::MatrixXcd detail::gd_apply_mat(const GreensVolume& op,
                                      const Eigen::MatrixXcd& fields,
                                      GdPath path) {
  const Eigen::Index n = static_cast<Eigen::Index>(op.grid()) * op.grid();
  if (fields.rows() != n) {
    throw Error("gd_apply: field rows do not match the operator grid");
  }
  if (path == GdPath::dense) {
    return op.dense() * fields;
  }
  Eigen::MatrixXcd out(fields.rows(), fields.cols());
  for (Eigen::Index j = 0; j < fields.cols(); ++j) {
    out.col(j) = detail::gd_apply_vec(op, fields.col(j), path);
  }
  return out;
}

GreensSurface assemble_gs(const SceneConfig& config, int grid) {
  config.validate();
  check_grid(grid);
  const CellBasis basis = make_basis(config, grid);
  const std::vector<Eigen::Vector2d> receivers =
      ring_positions(config.antenna_radius_m, config.n_rx);
  const double half = config.doi_side_m / 2.0;
  for (const Eigen::Vector2d& rx : receivers) {
    if (std::abs(rx.x()) <= half && std::abs(rx.y()) <= half) {
      throw Error("assemble_gs: receiver lies inside the imaging domain");
    }
  }

  const std::vector<double> coords = axis_coords(config.doi_side_m, grid);
  GreensSurface op;
  op.grid_ = grid;
  op.matrix_.resize(static_cast<Eigen::Index>(receivers.size()),
                    static_cast<Eigen::Index>(grid) * grid);
  for (std::size_t q = 0; q < receivers.size(); ++q) {
    for (int r = 0; r < grid; ++r) {
      for (int c = 0; c < grid; ++c) {
        const double dist = std::hypot(receivers[q].x() - coords[c],
                                       receivers[q].y() - coords[r]);
        op.matrix_(static_cast<Eigen::Index>(q), cell_index(r, c, grid)) =
            basis.coupling * hankel1(0, basis.k0 * dist);
      }
    }
  }
  return op;
}

Eigen::VectorXcd detail::gs_apply_vec(const GreensSurface& op,
                                      const Eigen::VectorXcd& v) {
  if (v.size() != op.dense().cols()) {
    throw Error("gs_apply: vector length does not match the operator grid");
  }
  return op.dense() * v;
}

Eigen::MatrixXcd detail::gs_apply_mat(const GreensSurface& op,
                                      const Eigen::MatrixXcd& fields) {
  if (fields.rows() != op.dense().cols()) {
    throw Error("gs_apply: field rows do not match the operator grid");
  }
  return op.dense() * fields;
}

Eigen::VectorXcd detail::gs_adjoint_vec(const GreensSurface& op,
                                        const Eigen::VectorXcd& w) {
  if (w.size() != op.dense().rows()) {
    throw Error(
        "gs_adjoint_apply: vector length does not match the receiver count");
  }
  return op.dense().adjoint() * w;
}

Eigen::MatrixXcd detail::gs_adjoint_mat(const GreensSurface& op,
                                        const Eigen::MatrixXcd& w) {
  if (w.rows() != op.dense().rows()) {
    throw Error("gs_adjoint_apply: field rows do not match the receiver count");
  }
  return op.dense().adjoint() * w;
}

}  // namespace tmscat
