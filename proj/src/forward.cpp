#include "tmscat/forward.hpp"

#include <Eigen/LU>

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "tmscat/bessel.hpp"

namespace tmscat {

namespace {

void check_field_shape(const FieldSet& field, Eigen::Index rows,
                       const char* what) {
  if (field.rows() != rows) {
    throw Error(std::string(what) + ": field shape does not match the operator");
  }
  if (field.cols() < 1) {
    throw Error(std::string(what) + ": field has no incidence columns");
  }
}

void check_contrast_shape(const ContrastMap& chi, int grid, const char* what) {
  if (chi.grid != grid ||
      chi.values.size() != static_cast<Eigen::Index>(grid) * grid) {
    throw Error(std::string(what) +
                ": contrast grid does not match the operator");
  }
  if (!chi.values.allFinite()) {
    throw Error(std::string(what) + ": contrast has non-finite entries");
  }
}

using ApplyFn = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

/// BiCGStab on an unsymmetric complex system, started from x0. Returns the
/// iterate whose recursive residual satisfies ||r|| <= tol*||b||; the caller
/// verifies the true residual. rho-breakdowns restart with a fresh shadow
/// residual; unrecoverable breakdowns and iteration exhaustion throw.
Eigen::VectorXcd bicgstab(const ApplyFn& apply, const Eigen::VectorXcd& b,
                          const Eigen::VectorXcd& x0, double tol,
                          int max_iter) {
  const double target = tol * b.norm();
  Eigen::VectorXcd x = x0;
  Eigen::VectorXcd r = b - apply(x);
  if (r.norm() <= target) return x;

  Eigen::VectorXcd rhat = r;
  Eigen::VectorXcd p = Eigen::VectorXcd::Zero(b.size());
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(b.size());
  cdouble rho(1.0, 0.0), alpha(1.0, 0.0), omega(1.0, 0.0);
  double rhat_norm = rhat.norm();

  for (int it = 1; it <= max_iter; ++it) {
    cdouble rho_next = rhat.dot(r);
    if (std::abs(rho_next) < 1e-28 * rhat_norm * r.norm()) {
      // Shadow residual became orthogonal to r; restart keeps progress.
      rhat = r;
      rhat_norm = rhat.norm();
      rho_next = cdouble(rhat_norm * rhat_norm, 0.0);
      p.setZero();
      v.setZero();
      rho = alpha = omega = cdouble(1.0, 0.0);
    }
    const cdouble beta = (rho_next / rho) * (alpha / omega);
    rho = rho_next;
    p = r + beta * (p - omega * v);
    v = apply(p);
    const cdouble denom = rhat.dot(v);
    if (denom == cdouble(0.0, 0.0)) {
      throw SolverError("total-field solve: BiCGStab breakdown (rhat.v = 0)",
                        r.norm() / std::max(b.norm(), 1e-300), it);
    }
    alpha = rho / denom;
    const Eigen::VectorXcd s = r - alpha * v;
    if (s.norm() <= target) {
      x += alpha * p;
      return x;
    }
    const Eigen::VectorXcd t = apply(s);
    const double tt = t.squaredNorm();
    if (tt == 0.0) {
      throw SolverError("total-field solve: BiCGStab breakdown (t = 0)",
                        s.norm() / std::max(b.norm(), 1e-300), it);
    }
    omega = t.dot(s) / tt;
    x += alpha * p + omega * s;
    r = s - omega * t;
    if (r.norm() <= target) return x;
    if (omega == cdouble(0.0, 0.0)) {
      throw SolverError("total-field solve: BiCGStab stagnated (omega = 0)",
                        r.norm() / std::max(b.norm(), 1e-300), it);
    }
  }
  throw SolverError("total-field solve: BiCGStab did not converge within " +
                        std::to_string(max_iter) + " iterations",
                    r.norm() / std::max(b.norm(), 1e-300), max_iter);
}

}  // namespace

FieldSet incident_fields(const SceneConfig& config, int grid) {
  config.validate();
  if (grid < 2) {
    throw Error("incident_fields: grid must be at least 2 cells per side");
  }
  const auto tx = ring_positions(config.antenna_radius_m, config.n_tx);
  const double half = config.doi_side_m / 2.0;
  for (const Eigen::Vector2d& t : tx) {
    if (std::abs(t.x()) <= half && std::abs(t.y()) <= half) {
      throw Error("incident_fields: transmitter lies inside the imaging domain");
    }
  }

  const double k0 = config.wavenumber();
  const auto coords = axis_coords(config.doi_side_m, grid);
  FieldSet out;
  out.kind = FieldKind::incident;
  out.values.resize(static_cast<Eigen::Index>(grid) * grid,
                    static_cast<Eigen::Index>(tx.size()));
  for (std::size_t p = 0; p < tx.size(); ++p) {
    for (int r = 0; r < grid; ++r) {
      for (int c = 0; c < grid; ++c) {
        const double dist =
            std::hypot(coords[c] - tx[p].x(), coords[r] - tx[p].y());
        out.values(cell_index(r, c, grid), static_cast<Eigen::Index>(p)) =
            cdouble(0.0, 0.25) * hankel1(0, k0 * dist);
      }
    }
  }
  return out;
}

FieldSet solve_total_field(const ContrastMap& chi, const FieldSet& einc,
                           const GreensVolume& gd, ForwardMethod method,
                           const SolveOptions& options) {
  const Eigen::Index n = static_cast<Eigen::Index>(gd.grid()) * gd.grid();
  check_contrast_shape(chi, gd.grid(), "solve_total_field");
  check_field_shape(einc, n, "solve_total_field");
  if (einc.kind != FieldKind::incident) {
    throw Error("solve_total_field: right-hand side must be an incident field");
  }
  if (!(options.tol > 0.0) || options.max_iter < 1) {
    throw Error("solve_total_field: invalid solver options");
  }

  FieldSet out;
  out.kind = FieldKind::total;

  if (method == ForwardMethod::dense_lu) {
    Eigen::MatrixXcd system = -(gd.dense() * chi.values.asDiagonal());
    system.diagonal().array() += 1.0;
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
    out.values = lu.solve(einc.values);
    const double rel = (system * out.values - einc.values).norm() /
                       einc.values.norm();
    if (!(rel <= 1e-9)) {
      throw SolverError(
          "total-field solve: dense factorization left a large residual "
          "(singular or resonant system?)",
          rel, 0);
    }
    return out;
  }

  const auto apply = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return v - gd_apply(gd, (chi.values.array() * v.array()).matrix().eval());
  };
  out.values.resize(einc.rows(), einc.cols());
  for (Eigen::Index pcol = 0; pcol < einc.cols(); ++pcol) {
    const Eigen::VectorXcd b = einc.values.col(pcol);
    const Eigen::VectorXcd x =
        bicgstab(apply, b, b, options.tol, options.max_iter);
    const double resid = (b - apply(x)).norm();
    if (!(resid <= 1e-9 * b.norm())) {
      throw SolverError(
          "total-field solve: converged iterate fails the residual check",
          resid / std::max(b.norm(), 1e-300), options.max_iter);
    }
    out.values.col(pcol) = x;
  }
  return out;
}

FieldSet scattered_field(const ContrastMap& chi, const FieldSet& etot,
                         const GreensSurface& gs) {
  const Eigen::Index n = static_cast<Eigen::Index>(gs.grid()) * gs.grid();
  check_contrast_shape(chi, gs.grid(), "scattered_field");
  check_field_shape(etot, n, "scattered_field");
  if (etot.kind != FieldKind::total) {
    throw Error("scattered_field: expected a total field");
  }
  FieldSet out;
  out.kind = FieldKind::scattered;
  out.values = gs_apply(gs, (chi.values.asDiagonal() * etot.values).eval());
  return out;
}

FieldSet add_noise(const FieldSet& es, const NoiseSpec& spec) {
  if (es.kind != FieldKind::scattered) {
    throw Error("add_noise: expected a scattered field");
  }
  if (!(spec.level >= 0.0)) {
    throw Error("add_noise: noise level must be >= 0");
  }
  if (spec.level == 0.0) return es;

  const double signal = es.values.norm();
  if (signal == 0.0) {
    throw Error("add_noise: zero field has no defined noise ratio");
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd noise(es.rows(), es.cols());
  cdouble* data = noise.data();
  for (Eigen::Index i = 0; i < noise.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    data[i] = cdouble(re, im);
  }
  const double draw_norm = noise.norm();
  if (draw_norm == 0.0) {
    throw Error("add_noise: degenerate noise draw");
  }

  FieldSet out;
  out.kind = FieldKind::scattered;
  out.values = es.values + (spec.level * signal / draw_norm) * noise;
  return out;
}

}  // namespace tmscat
