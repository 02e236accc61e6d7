#pragma once

#include <Eigen/Dense>

#include <memory>

#include "tmscat/common.hpp"

namespace tmscat {

namespace internal {
class Fft2;
}

/// Which representation gd_apply uses.
enum class GdPath { dense, fft };

/// Whether assemble_gd materializes the dense matrix alongside the FFT
/// representation. `automatic` stores it only for grids up to 64.
enum class DenseStorage { automatic, always, never };

class GreensVolume;

namespace detail {
Eigen::VectorXcd gd_apply_vec(const GreensVolume& op, const Eigen::VectorXcd& v,
                              GdPath path);
}

/// Volume (state-equation) Green's operator over the imaging domain,
/// discretized on a grid x grid mesh of square cells. Immutable after
/// assembly; applies are const and safe to run concurrently.
class GreensVolume {
 public:
  int grid() const { return grid_; }
  double cell_area() const { return cell_area_; }
  double equivalent_radius() const { return equiv_radius_; }
  double wavenumber() const { return k0_; }
  cdouble self_term() const { return self_term_; }
  bool has_dense() const { return dense_.size() > 0; }

  /// Dense matrix view; throws Error when assembled without dense storage.
  const Eigen::MatrixXcd& dense() const;

 private:
  friend GreensVolume assemble_gd(const SceneConfig&, int, DenseStorage);
  friend Eigen::VectorXcd detail::gd_apply_vec(const GreensVolume&,
                                               const Eigen::VectorXcd&, GdPath);

  Eigen::VectorXcd apply_fft(const Eigen::VectorXcd& v) const;

  int grid_ = 0;
  double cell_area_ = 0.0;
  double equiv_radius_ = 0.0;
  double k0_ = 0.0;
  cdouble self_term_{0.0, 0.0};
  Eigen::VectorXcd spectrum_;  // (2*grid)^2 transform of the embedded kernel
  std::shared_ptr<const internal::Fft2> fft_;
  Eigen::MatrixXcd dense_;  // empty when not stored
};

/// Surface (data-equation) Green's operator mapping contrast sources on the
/// grid to scattered fields at the receiver ring. Always dense (n_rx x M^2).
class GreensSurface {
 public:
  int grid() const { return grid_; }
  int receivers() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& dense() const { return matrix_; }

 private:
  friend GreensSurface assemble_gs(const SceneConfig&, int);
  int grid_ = 0;
  Eigen::MatrixXcd matrix_;
};

/// Builds the volume operator for `grid` cells per side. The diagonal
/// (self) term is held separately from the convolutional part so the FFT
/// path stays an exact circulant embedding.
GreensVolume assemble_gd(const SceneConfig& config, int grid,
                         DenseStorage storage = DenseStorage::automatic);

/// Builds the surface operator for `grid` cells per side and the receiver
/// ring described by `config`. Throws Error when any receiver falls inside
/// the imaging domain.
GreensSurface assemble_gs(const SceneConfig& config, int grid);

namespace detail {
Eigen::MatrixXcd gd_apply_mat(const GreensVolume& op, const Eigen::MatrixXcd& f,
                              GdPath path);
Eigen::VectorXcd gs_apply_vec(const GreensSurface& op,
                              const Eigen::VectorXcd& v);
Eigen::MatrixXcd gs_apply_mat(const GreensSurface& op,
                              const Eigen::MatrixXcd& f);
Eigen::VectorXcd gs_adjoint_vec(const GreensSurface& op,
                                const Eigen::VectorXcd& w);
Eigen::MatrixXcd gs_adjoint_mat(const GreensSurface& op,
                                const Eigen::MatrixXcd& w);
}  // namespace detail

/// y = G_D v. `path == GdPath::dense` requires dense storage. Vector inputs
/// yield a vector; multi-column inputs are applied column by column.
template <typename Derived>
auto gd_apply(const GreensVolume& op, const Eigen::MatrixBase<Derived>& v,
              GdPath path = GdPath::fft) {
  if constexpr (Derived::ColsAtCompileTime == 1) {
    return detail::gd_apply_vec(op, v.derived(), path);
  } else {
    return detail::gd_apply_mat(op, v.derived(), path);
  }
}

/// y = G_S v (receiver samples of the field radiated by sources v).
template <typename Derived>
auto gs_apply(const GreensSurface& op, const Eigen::MatrixBase<Derived>& v) {
  if constexpr (Derived::ColsAtCompileTime == 1) {
    return detail::gs_apply_vec(op, v.derived());
  } else {
    return detail::gs_apply_mat(op, v.derived());
  }
}

/// x = G_S^H w (conjugate-transpose apply).
template <typename Derived>
auto gs_adjoint_apply(const GreensSurface& op,
                      const Eigen::MatrixBase<Derived>& w) {
  if constexpr (Derived::ColsAtCompileTime == 1) {
    return detail::gs_adjoint_vec(op, w.derived());
  } else {
    return detail::gs_adjoint_mat(op, w.derived());
  }
}

}  // namespace tmscat
