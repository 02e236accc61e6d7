#include "tmscat/unrolled.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "doctest.h"
#include "test_helpers.hpp"
#include "tmscat/forward.hpp"
#include "tmscat/scene.hpp"

using tmscat::cdouble;
using tmscat::ContrastMap;
using tmscat::FieldKind;
using tmscat::FieldSet;
using tmscat::SceneConfig;

namespace {

struct Setup {
  SceneConfig cfg;
  int grid;
  tmscat::GreensVolume gd;
  tmscat::GreensSurface gs;
  FieldSet einc;
};

Setup make_setup(SceneConfig cfg, int grid) {
  Setup s{cfg, grid, tmscat::assemble_gd(cfg, grid), tmscat::assemble_gs(cfg, grid),
          tmscat::incident_fields(cfg, grid)};
  return s;
}

FieldSet simulate_data(const SceneConfig& cfg, int data_grid,
                       const std::vector<tmscat::ShapeSpec>& scene) {
  const ContrastMap truth = tmscat::rasterize(scene, cfg, data_grid);
  const auto gd = tmscat::assemble_gd(cfg, data_grid, tmscat::DenseStorage::never);
  const auto gs = tmscat::assemble_gs(cfg, data_grid);
  const auto einc = tmscat::incident_fields(cfg, data_grid);
  const auto etot = tmscat::solve_total_field(truth, einc, gd);
  return tmscat::scattered_field(truth, etot, gs);
}

ContrastMap zero_map(int grid) {
  ContrastMap chi;
  chi.grid = grid;
  chi.values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid) * grid);
  return chi;
}

Eigen::MatrixXcd random_fields(Eigen::Index rows, Eigen::Index cols,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = cdouble(re, im);
    }
  }
  return m;
}

/// Ground-truth state on the reconstruction grid plus the matching data.
struct TruthCase {
  Setup setup;
  ContrastMap chi;
  FieldSet etot;
  FieldSet es;
};

TruthCase make_truth_case(SceneConfig cfg, int grid, cdouble contrast,
                          double radius) {
  TruthCase t{make_setup(cfg, grid),
              tmscat::rasterize({tmscat::make_disk({0.0, 0.0}, radius, contrast)},
                                cfg, grid),
              FieldSet{}, FieldSet{}};
  t.etot = tmscat::solve_total_field(t.chi, t.setup.einc, t.setup.gd);
  t.es = tmscat::scattered_field(t.chi, t.etot, t.setup.gs);
  return t;
}

class ZeroFieldNegativeContrastRefiner final : public tmscat::Refiner {
 public:
  std::string name() const override { return "adversarial"; }
  Eigen::MatrixXcd field_refine(const Eigen::MatrixXcd& einc_residual,
                                const Eigen::MatrixXcd&) override {
    return Eigen::MatrixXcd::Zero(einc_residual.rows(), einc_residual.cols());
  }
  Eigen::VectorXcd contrast_refine(const Eigen::VectorXcd& approx_dchi,
                                   const ContrastMap& chi_prev) override {
    return -(chi_prev.values +
             Eigen::VectorXcd::Constant(approx_dchi.size(), cdouble(1.0, 1.0)));
  }
};

class WrongShapeFieldRefiner final : public tmscat::Refiner {
 public:
  std::string name() const override { return "bad-field"; }
  Eigen::MatrixXcd field_refine(const Eigen::MatrixXcd& einc_residual,
                                const Eigen::MatrixXcd&) override {
    return einc_residual.topRows(einc_residual.rows() - 1);
  }
  Eigen::VectorXcd contrast_refine(const Eigen::VectorXcd& approx_dchi,
                                   const ContrastMap&) override {
    return approx_dchi;
  }
};

class WrongShapeContrastRefiner final : public tmscat::Refiner {
 public:
  std::string name() const override { return "bad-contrast"; }
  Eigen::MatrixXcd field_refine(const Eigen::MatrixXcd& einc_residual,
                                const Eigen::MatrixXcd&) override {
    return einc_residual;
  }
  Eigen::VectorXcd contrast_refine(const Eigen::VectorXcd& approx_dchi,
                                   const ContrastMap&) override {
    return approx_dchi.head(approx_dchi.size() / 2);
  }
};

std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const tmscat::Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("unrolled") {

TEST_CASE("column stacking round-trips exactly") {
  const Eigen::MatrixXcd m = random_fields(6, 4, 101);
  const Eigen::MatrixXcd back = tmscat::unvec_columns(tmscat::vec_columns(m), 6);
  CHECK(back.rows() == 6);
  CHECK(back.cols() == 4);
  CHECK((back - m).norm() == 0.0);
  CHECK_THROWS_AS(tmscat::unvec_columns(tmscat::vec_columns(m), 5),
                  tmscat::Error);
}

TEST_CASE("incident residual vanishes for a consistent solve") {
  SceneConfig cfg;
  cfg.n_tx = 8;
  const auto t = make_truth_case(cfg, 16, cdouble(0.5, 0.1), 0.03);

  const Eigen::MatrixXcd r =
      tmscat::incident_residual(t.chi, t.etot, t.setup.einc, t.setup.gd);
  CHECK(r.norm() <= 1e-9 * t.setup.einc.values.norm());

  SUBCASE("no scatterer and the incident field give the zero residual") {
    const FieldSet etot{FieldKind::total, t.setup.einc.values};
    const Eigen::MatrixXcd r0 = tmscat::incident_residual(
        zero_map(t.setup.grid), etot, t.setup.einc, t.setup.gd);
    CHECK(r0.isZero(0.0));
  }

  SUBCASE("residual responds linearly to total-field perturbations") {
    const Eigen::MatrixXcd delta =
        random_fields(t.etot.rows(), t.etot.cols(), 33);
    const FieldSet bumped{FieldKind::total, t.etot.values + delta};
    const Eigen::MatrixXcd shifted =
        tmscat::incident_residual(t.chi, bumped, t.setup.einc, t.setup.gd);
    const Eigen::MatrixXcd expected =
        -delta + tmscat::gd_apply(t.setup.gd,
                                  (t.chi.values.asDiagonal() * delta).eval());
    CHECK((shifted - r - expected).norm() <=
          1e-12 * (t.etot.values.norm() + delta.norm()));
  }
}

TEST_CASE("scattered residual and physical predictions are consistent") {
  SceneConfig cfg;
  cfg.n_tx = 8;
  const auto t = make_truth_case(cfg, 12, cdouble(0.8, 0.2), 0.04);

  CHECK(tmscat::scattered_residual(t.es, t.chi, t.etot, t.setup.gs).isZero(0.0));
  CHECK((tmscat::predict_scattered(t.chi, t.etot, t.setup.gs) - t.es.values)
            .isZero(0.0));
  CHECK((tmscat::predict_current(t.chi, t.etot) -
         t.chi.values.asDiagonal() * t.etot.values)
            .isZero(0.0));

  SUBCASE("zero contrast leaves the measurement untouched") {
    const Eigen::MatrixXcd r = tmscat::scattered_residual(
        t.es, zero_map(t.setup.grid), t.etot, t.setup.gs);
    CHECK((r - t.es.values).isZero(0.0));
  }
}

TEST_CASE("stack operator matches the blockwise data equation at grid 8") {
  SceneConfig cfg;
  const auto t = make_truth_case(cfg, 8, cdouble(1.0, 0.3), 0.05);
  const tmscat::StackedOperator A = tmscat::stack_operator(t.etot, t.setup.gs);
  REQUIRE(A.rows() == cfg.n_rx * cfg.n_tx);
  REQUIRE(A.cols() == 64);

  Eigen::MatrixXcd expected(A.rows(), A.cols());
  for (int p = 0; p < cfg.n_tx; ++p) {
    expected.middleRows(static_cast<Eigen::Index>(p) * cfg.n_rx, cfg.n_rx) =
        t.setup.gs.dense() * t.etot.values.col(p).asDiagonal();
  }
  Eigen::MatrixXcd dense(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(A.cols());
    e[j] = 1.0;
    dense.col(j) = A.apply(e);
  }
  CHECK((dense - expected).norm() <= 1e-13 * expected.norm());

  CHECK(A.apply(Eigen::VectorXcd::Zero(A.cols())).isZero(0.0));

  const Eigen::VectorXcd x = random_fields(A.cols(), 1, 21);
  const Eigen::VectorXcd y = random_fields(A.rows(), 1, 22);
  const cdouble lhs = A.apply(x).dot(y);
  const cdouble rhs = x.dot(A.adjoint_apply(y));
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));

  CHECK_THROWS_AS(
      tmscat::stack_operator(FieldSet{FieldKind::incident, t.etot.values},
                             t.setup.gs),
      tmscat::Error);
}

TEST_CASE("matched filter picks the residual-minimizing scale") {
  SceneConfig cfg;
  const auto setup = make_setup(cfg, 8);
  const FieldSet etot{FieldKind::total, random_fields(64, cfg.n_tx, 51)};
  const tmscat::StackedOperator A = tmscat::stack_operator(etot, setup.gs);

  SUBCASE("zero residual maps to the zero update") {
    const auto out =
        tmscat::matched_filter_dchi(A, Eigen::VectorXcd::Zero(A.rows()));
    CHECK(out.approx_dchi.isZero(0.0));
    CHECK(out.gamma == cdouble(0.0, 0.0));
  }

  SUBCASE("scale and phase perturbations strictly increase the misfit") {
    const Eigen::VectorXcd y = random_fields(A.rows(), 1, 52);
    const auto out = tmscat::matched_filter_dchi(A, y);
    const Eigen::VectorXcd w = A.apply(A.adjoint_apply(y));
    const double best = (y - out.gamma * w).norm();
    for (const cdouble factor :
         {cdouble(1.01, 0.0), cdouble(0.99, 0.0), std::exp(cdouble(0.0, 0.01)),
          std::exp(cdouble(0.0, -0.01))}) {
      CHECK((y - out.gamma * factor * w).norm() > best);
    }
  }

  SUBCASE("a planted update is recovered up to the matched-filter scale") {
    Eigen::VectorXcd planted = random_fields(A.cols(), 1, 53);
    planted *= 0.01 / planted.norm();
    const Eigen::VectorXcd y = A.apply(planted);

    Eigen::MatrixXcd dense(A.rows(), A.cols());
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(A.cols());
      e[j] = 1.0;
      dense.col(j) = A.apply(e);
    }
    const Eigen::VectorXcd exact =
        (dense.adjoint() * dense).ldlt().solve(dense.adjoint() * y);
    CHECK((exact - planted).norm() <= 1e-8 * planted.norm());

    const auto out = tmscat::matched_filter_dchi(A, y);
    CHECK(out.approx_dchi.dot(planted).real() > 0.0);
  }
}

TEST_CASE("least-squares update matches a dense oracle and shrinks") {
  SceneConfig cfg;
  const auto setup = make_setup(cfg, 8);
  const FieldSet etot{FieldKind::total, random_fields(64, cfg.n_tx, 61)};
  const tmscat::StackedOperator A = tmscat::stack_operator(etot, setup.gs);
  const Eigen::VectorXcd y = random_fields(A.rows(), 1, 62);

  CHECK(tmscat::ls_dchi(A, Eigen::VectorXcd::Zero(A.rows()), 0.0).norm() == 0.0);

  Eigen::MatrixXcd dense(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(A.cols());
    e[j] = 1.0;
    dense.col(j) = A.apply(e);
  }
  const Eigen::VectorXcd oracle =
      (dense.adjoint() * dense).ldlt().solve(dense.adjoint() * y);
  const Eigen::VectorXcd x = tmscat::ls_dchi(A, y, 0.0, 1e-12, 3000);
  CHECK((x - oracle).norm() <= 1e-8 * oracle.norm());

  const double lambda = 1e12 * dense.squaredNorm();
  const Eigen::VectorXcd damped = tmscat::ls_dchi(A, y, lambda);
  CHECK(damped.norm() <=
        (1.0 + 1e-6) * A.adjoint_apply(y).norm() / lambda);
}

TEST_CASE("layer step holds the ground truth fixed") {
  SceneConfig cfg;
  cfg.n_tx = 8;
  const auto t = make_truth_case(cfg, 12, cdouble(0.5, 0.0), 0.03);

  tmscat::IdentityRefiner identity;
  tmscat::LayerState state;
  state.layer = 0;
  state.chi = t.chi;
  state.etot = t.etot;

  for (int k = 1; k <= 7; ++k) {
    state = tmscat::layer_step(state, t.es, t.setup.einc, t.setup.gd,
                               t.setup.gs, identity);
    CHECK(state.layer == k);
    CHECK((state.chi.values - t.chi.values).norm() <= 1e-8);
    CHECK(std::isfinite(std::abs(state.gamma)));
    CHECK(state.einc_residual.norm() <= 1e-8 * t.setup.einc.values.norm());
  }
}

TEST_CASE("first layer from zero equals its hand-built composition") {
  SceneConfig cfg;
  cfg.n_tx = 8;
  const auto t = make_truth_case(cfg, 10, cdouble(0.7, 0.1), 0.04);

  tmscat::IdentityRefiner identity;
  tmscat::LayerState state;
  state.layer = 0;
  state.chi = zero_map(t.setup.grid);
  state.etot = FieldSet{FieldKind::total, t.setup.einc.values};
  const tmscat::LayerState out = tmscat::layer_step(
      state, t.es, t.setup.einc, t.setup.gd, t.setup.gs, identity);

  // With chi_0 = 0 and E^t_0 = E^i the field stage is inert and the whole
  // layer reduces to one matched-filter update driven by the raw data.
  CHECK((out.etot.values - t.setup.einc.values).isZero(0.0));
  CHECK((out.es_residual - t.es.values).isZero(0.0));

  const tmscat::StackedOperator A =
      tmscat::stack_operator(out.etot, t.setup.gs);
  const auto filtered =
      tmscat::matched_filter_dchi(A, tmscat::vec_columns(t.es.values));
  CHECK(out.gamma == filtered.gamma);
  CHECK((out.approx_dchi - filtered.approx_dchi).isZero(0.0));

  ContrastMap expected{t.setup.grid, filtered.approx_dchi};
  expected = tmscat::clamp_nonnegative(std::move(expected));
  CHECK((out.chi.values - expected.values).isZero(0.0));
  out.chi.validate();
}

TEST_CASE("single-layer pipeline is exactly one matched-filter step") {
  SceneConfig cfg;
  cfg.n_tx = 8;
  const auto t = make_truth_case(cfg, 10, cdouble(0.7, 0.1), 0.04);

  tmscat::PipelineConfig config;
  config.n_layers = 1;
  const auto trace = tmscat::run_pipeline(config, t.es, t.setup.einc,
                                          t.setup.gd, t.setup.gs,
                                          zero_map(t.setup.grid));
  REQUIRE(trace.iterates.size() == 2);
  CHECK(trace.method == "unrolled");
  CHECK(trace.init == "zero");
  CHECK(trace.requested_iterations == 1);
  CHECK(trace.stop_reason == "completed");
  CHECK(trace.hyperparams.at("layers") == 1.0);
  CHECK(trace.hyperparams.at("clamp") == 1.0);
  CHECK(trace.iterates.front().data_residual == 1.0);

  tmscat::IdentityRefiner identity;
  tmscat::LayerState state;
  state.layer = 0;
  state.chi = zero_map(t.setup.grid);
  state.etot = FieldSet{FieldKind::total, t.setup.einc.values};
  const tmscat::LayerState manual = tmscat::layer_step(
      state, t.es, t.setup.einc, t.setup.gd, t.setup.gs, identity);
  CHECK((trace.iterates.back().chi.values - manual.chi.values).isZero(0.0));
  CHECK((trace.final_etot.values - manual.etot.values).isZero(0.0));
}

TEST_CASE("zero measurements keep the reconstruction at zero") {
  SceneConfig cfg;
  cfg.n_tx = 8;
  const auto setup = make_setup(cfg, 10);
  const FieldSet es{FieldKind::scattered,
                    Eigen::MatrixXcd::Zero(cfg.n_rx, cfg.n_tx)};

  tmscat::PipelineConfig config;
  config.n_layers = 3;
  const auto trace =
      tmscat::run_pipeline(config, es, setup.einc, setup.gd, setup.gs);
  CHECK(trace.init == "bps");
  REQUIRE(trace.iterates.size() == 4);
  for (const auto& it : trace.iterates) {
    CHECK(it.chi.values.isZero(0.0));
    CHECK(it.data_residual == 0.0);
  }
}

TEST_CASE("pipeline residual is non-increasing on a weak scatterer") {
  SceneConfig cfg;
  const FieldSet es = simulate_data(
      cfg, 32, {tmscat::make_disk({0.0, 0.0}, 0.03, cdouble(0.3, 0.0))});
  const auto setup = make_setup(cfg, 16);

  tmscat::PipelineConfig config;
  const auto trace =
      tmscat::run_pipeline(config, es, setup.einc, setup.gd, setup.gs);
  CHECK(trace.init == "bps");
  REQUIRE(trace.iterates.size() == 8);
  for (std::size_t k = 1; k < trace.iterates.size(); ++k) {
    CHECK(trace.iterates[k].data_residual <=
          trace.iterates[k - 1].data_residual + 1e-6);
    trace.iterates[k].chi.validate();
  }
  CHECK(trace.iterates.back().data_residual <
        trace.iterates.front().data_residual);
}

TEST_CASE("clamping keeps adversarial updates nonnegative") {
  SceneConfig cfg;
  cfg.n_tx = 4;
  const auto t = make_truth_case(cfg, 8, cdouble(0.5, 0.0), 0.04);

  ZeroFieldNegativeContrastRefiner hostile;
  tmscat::LayerState state;
  state.layer = 0;
  state.chi = t.chi;
  state.etot = t.etot;

  const auto clamped = tmscat::layer_step(state, t.es, t.setup.einc,
                                          t.setup.gd, t.setup.gs, hostile,
                                          /*clamp=*/true);
  clamped.chi.validate();
  CHECK(clamped.chi.values.real().minCoeff() >= 0.0);
  CHECK(clamped.chi.values.imag().minCoeff() >= 0.0);

  const auto raw = tmscat::layer_step(state, t.es, t.setup.einc, t.setup.gd,
                                      t.setup.gs, hostile, /*clamp=*/false);
  CHECK(raw.chi.values.real().minCoeff() < 0.0);
}

TEST_CASE("refiner contract violations name the offending mapping") {
  SceneConfig cfg;
  cfg.n_tx = 4;
  const auto t = make_truth_case(cfg, 8, cdouble(0.5, 0.0), 0.04);

  tmscat::LayerState state;
  state.layer = 0;
  state.chi = t.chi;
  state.etot = t.etot;

  WrongShapeFieldRefiner bad_field;
  const std::string field_msg = error_message([&] {
    tmscat::layer_step(state, t.es, t.setup.einc, t.setup.gd, t.setup.gs,
                       bad_field);
  });
  CHECK(field_msg.find("field_refine") != std::string::npos);
  CHECK(field_msg.find("bad-field") != std::string::npos);

  WrongShapeContrastRefiner bad_contrast;
  const std::string contrast_msg = error_message([&] {
    tmscat::layer_step(state, t.es, t.setup.einc, t.setup.gd, t.setup.gs,
                       bad_contrast);
  });
  CHECK(contrast_msg.find("contrast_refine") != std::string::npos);
}

TEST_CASE("recorded refiner tapes replay bit-identically") {
  SceneConfig cfg;
  cfg.n_tx = 4;
  const auto t = make_truth_case(cfg, 8, cdouble(0.6, 0.2), 0.04);
  testutil::TempDir dir("refiner-tape");
  const auto tape = dir.path() / "identity.tape";

  tmscat::IdentityRefiner identity;
  tmscat::RecordingRefiner recorder(identity);
  tmscat::PipelineConfig config;
  config.n_layers = 2;
  config.refiner = &recorder;
  const auto recorded = tmscat::run_pipeline(config, t.es, t.setup.einc,
                                             t.setup.gd, t.setup.gs,
                                             zero_map(t.setup.grid));
  CHECK(recorder.calls() == 4);
  recorder.save(tape);

  tmscat::TabulatedRefiner replayed(tape);
  config.refiner = &replayed;
  const auto replay = tmscat::run_pipeline(config, t.es, t.setup.einc,
                                           t.setup.gd, t.setup.gs,
                                           zero_map(t.setup.grid));
  REQUIRE(replay.iterates.size() == recorded.iterates.size());
  for (std::size_t k = 0; k < replay.iterates.size(); ++k) {
    CHECK((replay.iterates[k].chi.values - recorded.iterates[k].chi.values)
              .isZero(0.0));
    CHECK(replay.iterates[k].data_residual ==
          recorded.iterates[k].data_residual);
  }
  CHECK((replay.final_etot.values - recorded.final_etot.values).isZero(0.0));

  SUBCASE("replaying against different data is rejected") {
    tmscat::TabulatedRefiner fresh(tape);
    config.refiner = &fresh;
    FieldSet doubled = t.es;
    doubled.values *= 2.0;
    CHECK_THROWS_AS(tmscat::run_pipeline(config, doubled, t.setup.einc,
                                         t.setup.gd, t.setup.gs,
                                         zero_map(t.setup.grid)),
                    tmscat::Error);
  }

  SUBCASE("an exhausted tape is rejected") {
    tmscat::TabulatedRefiner fresh(tape);
    config.refiner = &fresh;
    config.n_layers = 3;
    const std::string msg = error_message([&] {
      tmscat::run_pipeline(config, t.es, t.setup.einc, t.setup.gd, t.setup.gs,
                           zero_map(t.setup.grid));
    });
    CHECK(msg.find("exhausted") != std::string::npos);
  }
}

TEST_CASE("pipeline runs are deterministic") {
  SceneConfig cfg;
  cfg.n_tx = 8;
  FieldSet es = simulate_data(
      cfg, 24, {tmscat::make_disk({0.01, -0.02}, 0.04, cdouble(0.8, 0.3))});
  es = tmscat::add_noise(es, {0.1, 77});
  const auto setup = make_setup(cfg, 12);

  tmscat::PipelineConfig config;
  config.n_layers = 3;
  const auto a = tmscat::run_pipeline(config, es, setup.einc, setup.gd, setup.gs);
  const auto b = tmscat::run_pipeline(config, es, setup.einc, setup.gd, setup.gs);
  REQUIRE(a.iterates.size() == b.iterates.size());
  for (std::size_t k = 0; k < a.iterates.size(); ++k) {
    CHECK((a.iterates[k].chi.values - b.iterates[k].chi.values).isZero(0.0));
    CHECK(a.iterates[k].data_residual == b.iterates[k].data_residual);
  }
}

TEST_CASE("invalid pipeline inputs are rejected") {
  SceneConfig cfg;
  cfg.n_tx = 4;
  const auto t = make_truth_case(cfg, 8, cdouble(0.5, 0.0), 0.04);

  tmscat::PipelineConfig config;
  config.n_layers = 0;
  CHECK_THROWS_AS(tmscat::run_pipeline(config, t.es, t.setup.einc, t.setup.gd,
                                       t.setup.gs),
                  tmscat::Error);
  config.n_layers = 1;

  CHECK_THROWS_AS(tmscat::run_pipeline(config, t.setup.einc, t.setup.einc,
                                       t.setup.gd, t.setup.gs),
                  tmscat::Error);
  CHECK_THROWS_AS(tmscat::run_pipeline(config, t.es, t.setup.einc, t.setup.gd,
                                       t.setup.gs, zero_map(7)),
                  tmscat::Error);

  const tmscat::StackedOperator A = tmscat::stack_operator(t.etot, t.setup.gs);
  CHECK_THROWS_AS(
      tmscat::matched_filter_dchi(A, Eigen::VectorXcd::Zero(A.rows() + 1)),
      tmscat::Error);
}

}  // TEST_SUITE
