#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmscat/common.hpp"
#include "tmscat/forward.hpp"
#include "tmscat/greens.hpp"

namespace tmscat {

/// Column-major flattening of a receivers x incidences matrix, the vector
/// layout used for stacked data (incidence p occupies rows [p*N_r, (p+1)*N_r)).
inline Eigen::VectorXcd vec_columns(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

inline Eigen::MatrixXcd unvec_columns(const Eigen::VectorXcd& v,
                                      Eigen::Index rows) {
  if (rows < 1 || v.size() % rows != 0) {
    throw Error("unvec_columns: vector length is not a multiple of the rows");
  }
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), rows, v.size() / rows);
}

/// The linearized data operator A: contrast-shaped vectors to stacked
/// receiver data, A x = [G_S diag(E^t_p) x]_p. Applied implicitly; never
/// materialized. The surface operator must outlive this object.
class StackedOperator {
 public:
  StackedOperator(const GreensSurface& gs, Eigen::MatrixXcd etot);

  Eigen::Index rows() const {
    return gs_->dense().rows() * etot_.cols();
  }
  Eigen::Index cols() const { return etot_.rows(); }
  Eigen::Index incidences() const { return etot_.cols(); }
  const Eigen::MatrixXcd& fields() const { return etot_; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::VectorXcd adjoint_apply(const Eigen::VectorXcd& y) const;

 private:
  const GreensSurface* gs_;
  Eigen::MatrixXcd etot_;  // M^2 x N_i
};

/// min_x ||A x - b||^2 + lambda ||x||^2, solved through the normal equations.
struct RegularizedLsProblem {
  const StackedOperator* op = nullptr;
  Eigen::VectorXcd rhs;
  double lambda = 5e-4;
};

/// Conjugate-gradient solve of (A^H A + lambda I) x = A^H b. Converged when
/// the relative normal-equation residual reaches tol; throws SolverError
/// otherwise.
Eigen::VectorXcd tikhonov_solve(const RegularizedLsProblem& problem,
                                double tol = 1e-8, int max_iter = 500);

/// Back-propagation scheme: closed-form initial contrast and total field.
struct BpsResult {
  ContrastMap chi;
  FieldSet etot;
};

BpsResult bps(const FieldSet& es, const FieldSet& einc, const GreensVolume& gd,
              const GreensSurface& gs);

struct InversionOptions {
  double lambda = 5e-4;
  int iterations = 20;
  /// Stop once |r_k - r_{k-1}| / r_{k-1} of the data residual falls below
  /// this; 0 disables and always runs the full iteration budget.
  double early_stop_rel_change = 1e-4;
  double cg_tol = 1e-8;
  int cg_max_iter = 500;
  ForwardMethod forward_method = ForwardMethod::iterative;
  SolveOptions forward_options{};
};

struct IterateRecord {
  ContrastMap chi;
  double data_residual = 0.0;  // ||E^s - G_S diag(chi_k) E^t_k|| / ||E^s||
  double wall_ms = 0.0;
};

/// Reconstruction history: one record per completed iteration. stop_reason
/// is "completed", "early_stop", or "solver_error (iteration k): ..." when a
/// state solve or least-squares solve aborted the loop.
struct IterateTrace {
  std::string method;
  std::string init;  // "zero", "bps", or "custom"
  std::map<std::string, double> hyperparams;
  std::vector<IterateRecord> iterates;
  FieldSet final_etot;  // total field solved in the last completed iteration
  std::string stop_reason;
  int requested_iterations = 0;
};

/// Born iterative method: alternate state solves with full-data Tikhonov
/// contrast solves. init defaults to the BPS estimate.
IterateTrace bim(const FieldSet& es, const FieldSet& einc,
                 const GreensVolume& gd, const GreensSurface& gs,
                 const InversionOptions& options = {},
                 const std::optional<ContrastMap>& init = std::nullopt);

/// Variational BIM: solves for the contrast update against the scattered
/// residual instead of refitting the full data each iteration.
IterateTrace vbim(const FieldSet& es, const FieldSet& einc,
                  const GreensVolume& gd, const GreensSurface& gs,
                  const InversionOptions& options = {},
                  const std::optional<ContrastMap>& init = std::nullopt);

}  // namespace tmscat
