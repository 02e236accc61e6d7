#include "tmscat/unrolled.hpp"

#include <bit>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <limits>

namespace tmscat {
namespace {

static_assert(std::endian::native == std::endian::little &&
                  std::numeric_limits<double>::is_iec559,
              "refiner tapes assume little-endian IEEE-754 doubles");

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(message);
}

void check_field(const FieldSet& field, FieldKind kind, Eigen::Index rows,
                 const char* what) {
  require(field.kind == kind, std::string(what) + ": expected a " +
                                  field_kind_name(kind) + " field, got " +
                                  field_kind_name(field.kind));
  require(field.values.rows() == rows,
          std::string(what) + ": field has " +
              std::to_string(field.values.rows()) + " rows, expected " +
              std::to_string(rows));
}

Eigen::MatrixXcd scatter_product(const ContrastMap& chi, const FieldSet& etot,
                                 const GreensSurface& gs) {
  return gs_apply(gs, (chi.values.asDiagonal() * etot.values).eval());
}

void check_refiner_output(const Eigen::MatrixXcd& out, Eigen::Index rows,
                          Eigen::Index cols, const char* mapping,
                          const std::string& refiner_name) {
  require(out.rows() == rows && out.cols() == cols,
          std::string(mapping) + " (refiner \"" + refiner_name +
              "\") returned shape " + std::to_string(out.rows()) + "x" +
              std::to_string(out.cols()) + ", expected " +
              std::to_string(rows) + "x" + std::to_string(cols));
  require(out.allFinite(), std::string(mapping) + " (refiner \"" +
                               refiner_name +
                               "\") returned non-finite values");
}

void write_u32(std::ostream& out, std::uint32_t value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t value = 0;
  in.read(reinterpret_cast<char*>(&value), sizeof value);
  require(in.good(), "refiner tape: truncated file");
  return value;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXcd& m) {
  write_u32(out, static_cast<std::uint32_t>(m.rows()));
  write_u32(out, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double parts[2] = {m(i, j).real(), m(i, j).imag()};
      out.write(reinterpret_cast<const char*>(parts), sizeof parts);
    }
  }
}

Eigen::MatrixXcd read_matrix(std::istream& in) {
  const std::uint32_t rows = read_u32(in);
  const std::uint32_t cols = read_u32(in);
  require(static_cast<std::uint64_t>(rows) * cols <= (1u << 28),
          "refiner tape: implausible matrix size");
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double parts[2];
      in.read(reinterpret_cast<char*>(parts), sizeof parts);
      m(i, j) = cdouble(parts[0], parts[1]);
    }
  }
  require(in.good(), "refiner tape: truncated file");
  return m;
}

void check_replay_input(const Eigen::MatrixXcd& seen,
                        const Eigen::MatrixXcd& recorded, const char* mapping,
                        std::size_t index) {
  const std::string where =
      std::string("tabulated refiner: ") + mapping + " input at tape index " +
      std::to_string(index);
  require(seen.rows() == recorded.rows() && seen.cols() == recorded.cols(),
          where + " has a different shape than the recording");
  const double scale = std::max(1.0, recorded.norm());
  require((seen - recorded).norm() <= 1e-12 * scale,
          where + " differs from the recording");
}

constexpr char kTapeMagic[4] = {'T', 'R', 'F', '1'};

}  // namespace

Eigen::MatrixXcd incident_residual(const ContrastMap& chi, const FieldSet& etot,
                                   const FieldSet& einc,
                                   const GreensVolume& gd) {
  chi.validate();
  require(chi.grid == gd.grid(), "incident_residual: contrast grid " +
                                     std::to_string(chi.grid) +
                                     " does not match operator grid " +
                                     std::to_string(gd.grid()));
  const Eigen::Index cells =
      static_cast<Eigen::Index>(chi.grid) * chi.grid;
  check_field(etot, FieldKind::total, cells, "incident_residual");
  check_field(einc, FieldKind::incident, cells, "incident_residual");
  require(etot.cols() == einc.cols(),
          "incident_residual: total and incident fields disagree on the "
          "number of incidences");
  return einc.values - etot.values +
         gd_apply(gd, (chi.values.asDiagonal() * etot.values).eval());
}

Eigen::MatrixXcd scattered_residual(const FieldSet& es_meas,
                                    const ContrastMap& chi,
                                    const FieldSet& etot,
                                    const GreensSurface& gs) {
  require(chi.grid == gs.grid(), "scattered_residual: contrast grid " +
                                     std::to_string(chi.grid) +
                                     " does not match operator grid " +
                                     std::to_string(gs.grid()));
  const Eigen::Index cells =
      static_cast<Eigen::Index>(chi.grid) * chi.grid;
  check_field(etot, FieldKind::total, cells, "scattered_residual");
  check_field(es_meas, FieldKind::scattered,
              static_cast<Eigen::Index>(gs.receivers()),
              "scattered_residual");
  require(es_meas.cols() == etot.cols(),
          "scattered_residual: measured data and total field disagree on the "
          "number of incidences");
  return es_meas.values - scatter_product(chi, etot, gs);
}

StackedOperator stack_operator(const FieldSet& etot, const GreensSurface& gs) {
  require(etot.kind == FieldKind::total,
          "stack_operator: expected a total field, got " +
              std::string(field_kind_name(etot.kind)));
  return StackedOperator(gs, etot.values);
}

MatchedFilterResult matched_filter_dchi(const StackedOperator& A,
                                        const Eigen::VectorXcd& y) {
  require(y.size() == A.rows(), "matched_filter_dchi: residual length " +
                                    std::to_string(y.size()) +
                                    " does not match operator rows " +
                                    std::to_string(A.rows()));
  MatchedFilterResult result;
  result.approx_dchi = Eigen::VectorXcd::Zero(A.cols());
  if (y.isZero(0.0)) return result;
  const Eigen::VectorXcd back = A.adjoint_apply(y);
  const Eigen::VectorXcd w = A.apply(back);
  const double denom = w.squaredNorm();
  if (denom == 0.0) return result;
  result.gamma = w.dot(y) / denom;
  result.approx_dchi = result.gamma * back;
  return result;
}

Eigen::VectorXcd ls_dchi(const StackedOperator& A, const Eigen::VectorXcd& y,
                         double lambda, double tol, int max_iter) {
  RegularizedLsProblem problem;
  problem.op = &A;
  problem.rhs = y;
  problem.lambda = lambda;
  return tikhonov_solve(problem, tol, max_iter);
}

LayerState layer_step(const LayerState& state, const FieldSet& es_meas,
                      const FieldSet& einc, const GreensVolume& gd,
                      const GreensSurface& gs, Refiner& refiner, bool clamp) {
  require(gd.grid() == gs.grid(),
          "layer_step: volume and surface operators use different grids");

  const Eigen::MatrixXcd einc_res =
      incident_residual(state.chi, state.etot, einc, gd);

  Eigen::MatrixXcd detot = refiner.field_refine(einc_res, state.etot.values);
  check_refiner_output(detot, einc_res.rows(), einc_res.cols(), "field_refine",
                       refiner.name());

  LayerState next;
  next.layer = state.layer + 1;
  next.einc_residual = einc_res;
  next.etot = FieldSet{FieldKind::total, state.etot.values + detot};
  next.es_residual = scattered_residual(es_meas, state.chi, next.etot, gs);

  const StackedOperator A = stack_operator(next.etot, gs);
  MatchedFilterResult filtered =
      matched_filter_dchi(A, vec_columns(next.es_residual));
  next.approx_dchi = std::move(filtered.approx_dchi);
  next.gamma = filtered.gamma;

  Eigen::VectorXcd dchi = refiner.contrast_refine(next.approx_dchi, state.chi);
  check_refiner_output(dchi, next.approx_dchi.size(), 1, "contrast_refine",
                       refiner.name());

  next.chi = ContrastMap{state.chi.grid, state.chi.values + dchi};
  if (clamp) next.chi = clamp_nonnegative(std::move(next.chi));
  return next;
}

IterateTrace run_pipeline(const PipelineConfig& config, const FieldSet& es_meas,
                          const FieldSet& einc, const GreensVolume& gd,
                          const GreensSurface& gs,
                          const std::optional<ContrastMap>& chi0) {
  require(config.n_layers >= 1, "run_pipeline: need at least one layer");
  require(gd.grid() == gs.grid(),
          "run_pipeline: volume and surface operators use different grids");
  const Eigen::Index cells =
      static_cast<Eigen::Index>(gd.grid()) * gd.grid();
  check_field(einc, FieldKind::incident, cells, "run_pipeline");
  check_field(es_meas, FieldKind::scattered,
              static_cast<Eigen::Index>(gs.receivers()), "run_pipeline");
  require(es_meas.cols() == einc.cols(),
          "run_pipeline: measured data and incident field disagree on the "
          "number of incidences");

  IdentityRefiner identity;
  Refiner& refiner = config.refiner != nullptr ? *config.refiner : identity;

  IterateTrace trace;
  trace.method = "unrolled";
  trace.requested_iterations = config.n_layers;
  trace.hyperparams["layers"] = static_cast<double>(config.n_layers);
  trace.hyperparams["clamp"] = config.clamp ? 1.0 : 0.0;
  trace.stop_reason = "completed";

  auto started = std::chrono::steady_clock::now();
  LayerState state;
  state.layer = 0;
  if (chi0.has_value()) {
    chi0->validate();
    require(chi0->grid == gd.grid(),
            "run_pipeline: initial contrast grid does not match operators");
    state.chi = *chi0;
    trace.init = state.chi.values.isZero(0.0) ? "zero" : "custom";
  } else {
    state.chi = bps(es_meas, einc, gd, gs).chi;
    trace.init = "bps";
  }
  state.etot = FieldSet{FieldKind::total, einc.values};

  const double data_norm = es_meas.values.norm();
  auto record_state = [&](const LayerState& s,
                          std::chrono::steady_clock::time_point since) {
    IterateRecord record;
    record.chi = s.chi;
    const double misfit =
        scattered_residual(es_meas, s.chi, s.etot, gs).norm();
    record.data_residual = data_norm == 0.0 ? misfit : misfit / data_norm;
    record.wall_ms = elapsed_ms(since);
    trace.iterates.push_back(std::move(record));
  };
  record_state(state, started);

  for (int k = 1; k <= config.n_layers; ++k) {
    started = std::chrono::steady_clock::now();
    state = layer_step(state, es_meas, einc, gd, gs, refiner, config.clamp);
    record_state(state, started);
  }
  trace.final_etot = state.etot;
  return trace;
}

Eigen::MatrixXcd predict_scattered(const ContrastMap& chi, const FieldSet& etot,
                                   const GreensSurface& gs) {
  require(chi.grid == gs.grid(),
          "predict_scattered: contrast grid does not match operator grid");
  const Eigen::Index cells =
      static_cast<Eigen::Index>(chi.grid) * chi.grid;
  check_field(etot, FieldKind::total, cells, "predict_scattered");
  return scatter_product(chi, etot, gs);
}

Eigen::MatrixXcd predict_current(const ContrastMap& chi, const FieldSet& etot) {
  const Eigen::Index cells =
      static_cast<Eigen::Index>(chi.grid) * chi.grid;
  check_field(etot, FieldKind::total, cells, "predict_current");
  return chi.values.asDiagonal() * etot.values;
}

Eigen::MatrixXcd RecordingRefiner::field_refine(
    const Eigen::MatrixXcd& einc_residual, const Eigen::MatrixXcd& etot_prev) {
  Eigen::MatrixXcd out = inner_->field_refine(einc_residual, etot_prev);
  records_.push_back(Record{0, einc_residual, etot_prev, out});
  return out;
}

Eigen::VectorXcd RecordingRefiner::contrast_refine(
    const Eigen::VectorXcd& approx_dchi, const ContrastMap& chi_prev) {
  Eigen::VectorXcd out = inner_->contrast_refine(approx_dchi, chi_prev);
  records_.push_back(Record{1, approx_dchi, chi_prev.values, out});
  return out;
}

void RecordingRefiner::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  require(out.good(),
          "refiner tape: cannot open " + path.string() + " for writing");
  out.write(kTapeMagic, sizeof kTapeMagic);
  write_u32(out, static_cast<std::uint32_t>(records_.size()));
  for (const Record& record : records_) {
    out.put(static_cast<char>(record.kind));
    write_matrix(out, record.in_a);
    write_matrix(out, record.in_b);
    write_matrix(out, record.out);
  }
  out.flush();
  require(out.good(), "refiner tape: short write to " + path.string());
}

TabulatedRefiner::TabulatedRefiner(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "refiner tape: cannot open " + path.string());
  char magic[4] = {};
  in.read(magic, sizeof magic);
  require(in.good() && std::equal(magic, magic + 4, kTapeMagic),
          "refiner tape: " + path.string() + " is not a refiner tape");
  const std::uint32_t count = read_u32(in);
  records_.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    RecordingRefiner::Record record;
    const int kind = in.get();
    require(kind == 0 || kind == 1, "refiner tape: corrupt record kind");
    record.kind = static_cast<std::uint8_t>(kind);
    record.in_a = read_matrix(in);
    record.in_b = read_matrix(in);
    record.out = read_matrix(in);
    records_.push_back(std::move(record));
  }
}

Eigen::MatrixXcd TabulatedRefiner::field_refine(
    const Eigen::MatrixXcd& einc_residual, const Eigen::MatrixXcd& etot_prev) {
  require(next_ < records_.size(), "tabulated refiner: tape exhausted");
  const auto& record = records_[next_];
  require(record.kind == 0,
          "tabulated refiner: tape index " + std::to_string(next_) +
              " recorded a contrast_refine call, got field_refine");
  check_replay_input(einc_residual, record.in_a, "field_refine", next_);
  check_replay_input(etot_prev, record.in_b, "field_refine", next_);
  ++next_;
  return record.out;
}

Eigen::VectorXcd TabulatedRefiner::contrast_refine(
    const Eigen::VectorXcd& approx_dchi, const ContrastMap& chi_prev) {
  require(next_ < records_.size(), "tabulated refiner: tape exhausted");
  const auto& record = records_[next_];
  require(record.kind == 1,
          "tabulated refiner: tape index " + std::to_string(next_) +
              " recorded a field_refine call, got contrast_refine");
  check_replay_input(approx_dchi, record.in_a, "contrast_refine", next_);
  check_replay_input(chi_prev.values, record.in_b, "contrast_refine", next_);
  ++next_;
  return record.out.col(0);
}

}  // namespace tmscat
