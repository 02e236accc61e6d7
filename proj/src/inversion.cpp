#include "tmscat/inversion.hpp"

#include <chrono>
#include <cmath>
#include <utility>

namespace tmscat {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

void check_data_pair(const FieldSet& es, const FieldSet& einc,
                     const GreensVolume& gd, const GreensSurface& gs,
                     const char* what) {
  if (gd.grid() != gs.grid()) {
    throw Error(std::string(what) + ": operator grids differ");
  }
  const Eigen::Index cells = static_cast<Eigen::Index>(gd.grid()) * gd.grid();
  if (es.kind != FieldKind::scattered || es.rows() != gs.dense().rows()) {
    throw Error(std::string(what) + ": expected scattered data at the receivers");
  }
  if (einc.kind != FieldKind::incident || einc.rows() != cells) {
    throw Error(std::string(what) + ": expected incident fields on the grid");
  }
  if (es.cols() != einc.cols()) {
    throw Error(std::string(what) + ": incidence counts differ");
  }
}

}  // namespace

StackedOperator::StackedOperator(const GreensSurface& gs, Eigen::MatrixXcd etot)
    : gs_(&gs), etot_(std::move(etot)) {
  const Eigen::Index cells =
      static_cast<Eigen::Index>(gs.grid()) * gs.grid();
  if (etot_.rows() != cells || etot_.cols() < 1) {
    throw Error("StackedOperator: total-field shape does not match the grid");
  }
}

Eigen::VectorXcd StackedOperator::apply(const Eigen::VectorXcd& x) const {
  if (x.size() != cols()) {
    throw Error("StackedOperator::apply: wrong vector length");
  }
  const Eigen::Index nr = gs_->dense().rows();
  Eigen::VectorXcd out(rows());
  for (Eigen::Index p = 0; p < etot_.cols(); ++p) {
    out.segment(p * nr, nr) =
        gs_apply(*gs_, (x.array() * etot_.col(p).array()).matrix().eval());
  }
  return out;
}

Eigen::VectorXcd StackedOperator::adjoint_apply(const Eigen::VectorXcd& y) const {
  if (y.size() != rows()) {
    throw Error("StackedOperator::adjoint_apply: wrong vector length");
  }
  const Eigen::Index nr = gs_->dense().rows();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(cols());
  for (Eigen::Index p = 0; p < etot_.cols(); ++p) {
    out.array() += etot_.col(p).array().conjugate() *
                   gs_adjoint_apply(*gs_, y.segment(p * nr, nr).eval()).array();
  }
  return out;
}

Eigen::VectorXcd tikhonov_solve(const RegularizedLsProblem& problem, double tol,
                                int max_iter) {
  if (problem.op == nullptr) {
    throw Error("tikhonov_solve: problem has no operator");
  }
  if (!(problem.lambda >= 0.0)) {
    throw Error("tikhonov_solve: lambda must be >= 0");
  }
  if (problem.rhs.size() != problem.op->rows()) {
    throw Error("tikhonov_solve: rhs length does not match the operator");
  }
  if (!(tol > 0.0) || max_iter < 1) {
    throw Error("tikhonov_solve: invalid solver controls");
  }

  const StackedOperator& A = *problem.op;
  const double lambda = problem.lambda;
  const Eigen::VectorXcd z = A.adjoint_apply(problem.rhs);
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(A.cols());
  const double z_norm = z.norm();
  if (z_norm == 0.0) return x;

  Eigen::VectorXcd r = z;
  Eigen::VectorXcd p = r;
  double rr = r.squaredNorm();
  const double target = tol * z_norm;

  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXcd q = A.adjoint_apply(A.apply(p)) + lambda * p;
    const cdouble pq = p.dot(q);
    if (pq == cdouble(0.0, 0.0)) {
      throw SolverError("tikhonov_solve: conjugate-gradient breakdown",
                        std::sqrt(rr) / z_norm, it);
    }
    const cdouble alpha = rr / pq;
    x += alpha * p;
    r -= alpha * q;
    const double rr_next = r.squaredNorm();
    if (std::sqrt(rr_next) <= target) return x;
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  throw SolverError("tikhonov_solve: no convergence within " +
                        std::to_string(max_iter) + " iterations",
                    std::sqrt(rr) / z_norm, max_iter);
}

BpsResult bps(const FieldSet& es, const FieldSet& einc, const GreensVolume& gd,
              const GreensSurface& gs) {
  check_data_pair(es, einc, gd, gs, "bps");
  const Eigen::Index cells = einc.rows();
  const Eigen::Index incidences = einc.cols();

  Eigen::MatrixXcd currents(cells, incidences);
  Eigen::MatrixXcd etot(cells, incidences);
  for (Eigen::Index p = 0; p < incidences; ++p) {
    const Eigen::VectorXcd e = es.values.col(p);
    const Eigen::VectorXcd back = gs_adjoint_apply(gs, e);
    const Eigen::VectorXcd w = gs_apply(gs, back);
    const double wsq = w.squaredNorm();
    const cdouble gamma = (wsq == 0.0) ? cdouble(0.0, 0.0) : w.dot(e) / wsq;
    currents.col(p) = gamma * back;
    etot.col(p) = einc.values.col(p) + gd_apply(gd, currents.col(p).eval());
  }

  ContrastMap chi;
  chi.grid = gd.grid();
  chi.values.resize(cells);
  for (Eigen::Index n = 0; n < cells; ++n) {
    const cdouble num = (etot.row(n).conjugate().array() *
                         currents.row(n).array()).sum();
    const double den = etot.row(n).squaredNorm();
    chi.values[n] = (den == 0.0) ? cdouble(0.0, 0.0) : num / den;
  }

  BpsResult out;
  out.chi = clamp_nonnegative(std::move(chi));
  out.etot.kind = FieldKind::total;
  out.etot.values = std::move(etot);
  return out;
}

namespace {

enum class ClassicMethod { bim, vbim };

IterateTrace run_classic(ClassicMethod method, const FieldSet& es,
                         const FieldSet& einc, const GreensVolume& gd,
                         const GreensSurface& gs,
                         const InversionOptions& options,
                         const std::optional<ContrastMap>& init) {
  const char* name = method == ClassicMethod::bim ? "bim" : "vbim";
  check_data_pair(es, einc, gd, gs, name);
  if (options.iterations < 1) {
    throw Error(std::string(name) + ": iteration count must be >= 1");
  }
  if (!(options.lambda >= 0.0)) {
    throw Error(std::string(name) + ": lambda must be >= 0");
  }
  if (!(options.early_stop_rel_change >= 0.0)) {
    throw Error(std::string(name) + ": early-stop threshold must be >= 0");
  }

  IterateTrace trace;
  trace.method = name;
  trace.requested_iterations = options.iterations;
  trace.hyperparams = {
      {"lambda", options.lambda},
      {"iterations", static_cast<double>(options.iterations)},
      {"early_stop_rel_change", options.early_stop_rel_change},
      {"cg_tol", options.cg_tol},
      {"cg_max_iter", static_cast<double>(options.cg_max_iter)},
  };

  ContrastMap chi;
  if (init.has_value()) {
    chi = *init;
    if (chi.grid != gd.grid()) {
      throw Error(std::string(name) + ": init grid does not match the operators");
    }
    chi.validate();
    trace.init = chi.values.isZero(0.0) ? "zero" : "custom";
  } else {
    chi = bps(es, einc, gd, gs).chi;
    trace.init = "bps";
  }

  const double data_norm = es.values.norm();
  trace.stop_reason = "completed";

  for (int k = 1; k <= options.iterations; ++k) {
    const auto started = std::chrono::steady_clock::now();

    FieldSet etot;
    try {
      etot = solve_total_field(chi, einc, gd, options.forward_method,
                               options.forward_options);
    } catch (const SolverError& err) {
      trace.stop_reason = "solver_error (iteration " + std::to_string(k) +
                          "): " + err.what();
      break;
    }
    trace.final_etot = etot;

    const StackedOperator A(gs, etot.values);
    Eigen::VectorXcd delta;
    try {
      if (method == ClassicMethod::bim) {
        const RegularizedLsProblem problem{&A, vec_columns(es.values),
                                           options.lambda};
        delta = tikhonov_solve(problem, options.cg_tol, options.cg_max_iter);
        chi.values = delta;
      } else {
        const Eigen::MatrixXcd predicted =
            gs_apply(gs, (chi.values.asDiagonal() * etot.values).eval());
        const RegularizedLsProblem problem{
            &A, vec_columns((es.values - predicted).eval()), options.lambda};
        delta = tikhonov_solve(problem, options.cg_tol, options.cg_max_iter);
        chi.values += delta;
      }
    } catch (const SolverError& err) {
      trace.stop_reason = "solver_error (iteration " + std::to_string(k) +
                          "): " + err.what();
      break;
    }
    chi = clamp_nonnegative(std::move(chi));

    IterateRecord record;
    record.chi = chi;
    const Eigen::MatrixXcd fit =
        gs_apply(gs, (chi.values.asDiagonal() * etot.values).eval());
    const double misfit = (es.values - fit).norm();
    record.data_residual = data_norm == 0.0 ? misfit : misfit / data_norm;
    record.wall_ms = elapsed_ms(started);
    trace.iterates.push_back(std::move(record));

    if (options.early_stop_rel_change > 0.0 && trace.iterates.size() >= 2) {
      const double prev =
          trace.iterates[trace.iterates.size() - 2].data_residual;
      const double curr = trace.iterates.back().data_residual;
      if (std::abs(curr - prev) <=
          options.early_stop_rel_change * std::max(prev, 1e-300)) {
        trace.stop_reason = "early_stop";
        break;
      }
    }
  }
  return trace;
}

}  // namespace

IterateTrace bim(const FieldSet& es, const FieldSet& einc,
                 const GreensVolume& gd, const GreensSurface& gs,
                 const InversionOptions& options,
                 const std::optional<ContrastMap>& init) {
  return run_classic(ClassicMethod::bim, es, einc, gd, gs, options, init);
}

IterateTrace vbim(const FieldSet& es, const FieldSet& einc,
                  const GreensVolume& gd, const GreensSurface& gs,
                  const InversionOptions& options,
                  const std::optional<ContrastMap>& init) {
  return run_classic(ClassicMethod::vbim, es, einc, gd, gs, options, init);
}

}  // namespace tmscat
