#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tmscat {

using cdouble = std::complex<double>;

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

/// Base error for all toolkit failures caused by bad inputs or broken
/// invariants. CLI maps these to exit code 2 unless they are usage errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an iterative or direct solve cannot reach its tolerance.
/// Carries the last relative residual and the iteration count.
class SolverError : public Error {
 public:
  SolverError(const std::string& msg, double residual, int iterations)
      : Error(msg), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// Measurement/imaging geometry and discretization parameters.
///
/// The domain of interest (DOI) is the square [-doi_side_m/2, doi_side_m/2]^2
/// centered at the origin. Transmitters and receivers sit on a circle of
/// radius antenna_radius_m around the origin; antenna q of a ring with N
/// elements is at angle 2*pi*q/N from the +x axis (q = 0..N-1).
struct SceneConfig {
  double doi_side_m = 0.2;
  double antenna_radius_m = 1.67;
  double freq_hz = 3.0e9;
  int n_tx = 16;
  int n_rx = 32;
  int forward_grid = 100;    // M for data simulation
  int inversion_grid = 64;   // M for reconstruction
  bool lossy = false;        // scenes may carry a conductivity channel

  double wavenumber() const {
    return 2.0 * 3.14159265358979323846 * freq_hz / kSpeedOfLight;
  }

  /// Throws Error on violated geometric invariants. Equal forward and
  /// inversion grids are legal here (the harness warns about the inverse
  /// crime instead of rejecting).
  void validate() const;
};

/// Coordinate of the 1-D cell-center axis: grid cells cover the DOI side with
/// M equal intervals, centers at -side/2 + (i + 0.5)*dx.
std::vector<double> axis_coords(double doi_side_m, int grid);

/// Cells are indexed row-major: n = row*M + col, x = coord[col], y = coord[row].
inline int cell_index(int row, int col, int grid) { return row * grid + col; }

/// Antenna positions for a ring with n elements (see SceneConfig docs).
std::vector<Eigen::Vector2d> ring_positions(double radius_m, int n);

/// Complex contrast profile chi on an M x M grid, stored row-major
/// (see cell_index). Physical maps have Re >= 0 and Im >= 0.
struct ContrastMap {
  int grid = 0;
  Eigen::VectorXcd values;  // size grid*grid

  void validate() const;                     // shape + nonnegativity
  bool has_imaginary(double tol = 0.0) const;
  int channels() const { return has_imaginary() ? 2 : 1; }
};

/// Clamps real and imaginary parts to be >= 0 (entrywise ReLU).
ContrastMap clamp_nonnegative(ContrastMap map);

enum class FieldKind { incident, total, scattered };

/// A set of complex fields, one column per transmitter. Incident/total fields
/// have M*M rows (grid cells); scattered fields have N_rx rows (receivers).
struct FieldSet {
  FieldKind kind = FieldKind::incident;
  Eigen::MatrixXcd values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

const char* field_kind_name(FieldKind kind);

}  // namespace tmscat
