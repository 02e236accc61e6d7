#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tmscat/common.hpp"
#include "tmscat/forward.hpp"
#include "tmscat/greens.hpp"
#include "tmscat/inversion.hpp"

namespace tmscat {

/// Pluggable refinement stage of the unrolled pipeline. Implementations must
/// be deterministic; the pipeline calls them from a single thread. Complex
/// contrast vectors are cell-row-major; a 2-channel image view of them is
/// real channel first, imaginary second.
class Refiner {
 public:
  virtual ~Refiner() = default;
  virtual std::string name() const = 0;

  /// delta-E^t from the incident residual and the previous total field;
  /// output shape must equal the residual's (M^2 x N_i).
  virtual Eigen::MatrixXcd field_refine(const Eigen::MatrixXcd& einc_residual,
                                        const Eigen::MatrixXcd& etot_prev) = 0;

  /// delta-chi from the matched-filter estimate and the previous contrast;
  /// output length must equal the estimate's (M^2).
  virtual Eigen::VectorXcd contrast_refine(const Eigen::VectorXcd& approx_dchi,
                                           const ContrastMap& chi_prev) = 0;
};

/// Analytic defaults: the one-step stationary field correction
/// (delta-E^t := delta-E^i) and the matched-filter contrast update taken
/// as-is. Together these make the pipeline a self-contained algorithm.
class IdentityRefiner final : public Refiner {
 public:
  std::string name() const override { return "identity"; }
  Eigen::MatrixXcd field_refine(const Eigen::MatrixXcd& einc_residual,
                                const Eigen::MatrixXcd&) override {
    return einc_residual;
  }
  Eigen::VectorXcd contrast_refine(const Eigen::VectorXcd& approx_dchi,
                                   const ContrastMap&) override {
    return approx_dchi;
  }
};

/// Wraps another refiner and records every call (inputs and outputs) so a
/// run can be replayed later through a TabulatedRefiner.
class RecordingRefiner final : public Refiner {
 public:
  explicit RecordingRefiner(Refiner& inner) : inner_(&inner) {}
  std::string name() const override { return "recording(" + inner_->name() + ")"; }
  Eigen::MatrixXcd field_refine(const Eigen::MatrixXcd& einc_residual,
                                const Eigen::MatrixXcd& etot_prev) override;
  Eigen::VectorXcd contrast_refine(const Eigen::VectorXcd& approx_dchi,
                                   const ContrastMap& chi_prev) override;
  void save(const std::filesystem::path& path) const;
  std::size_t calls() const { return records_.size(); }

 private:
  struct Record {
    std::uint8_t kind;  // 0 = field, 1 = contrast
    Eigen::MatrixXcd in_a, in_b, out;
  };
  Refiner* inner_;
  std::vector<Record> records_;
  friend class TabulatedRefiner;
};

/// Replays a recorded refiner from file, verifying at each call that the
/// pipeline presents the same inputs the recording saw.
class TabulatedRefiner final : public Refiner {
 public:
  explicit TabulatedRefiner(const std::filesystem::path& path);
  std::string name() const override { return "tabulated"; }
  Eigen::MatrixXcd field_refine(const Eigen::MatrixXcd& einc_residual,
                                const Eigen::MatrixXcd& etot_prev) override;
  Eigen::VectorXcd contrast_refine(const Eigen::VectorXcd& approx_dchi,
                                   const ContrastMap& chi_prev) override;

 private:
  std::vector<RecordingRefiner::Record> records_;
  std::size_t next_ = 0;
};

/// Everything layer k produces, kept for inspection and loss evaluation.
struct LayerState {
  int layer = 0;
  ContrastMap chi;                 // chi_k
  FieldSet etot;                   // E^t_k
  Eigen::MatrixXcd einc_residual;  // dE^i_k, M^2 x N_i
  Eigen::MatrixXcd es_residual;    // dE^s_k, N_r x N_i
  Eigen::VectorXcd approx_dchi;    // matched-filter estimate, M^2
  cdouble gamma{0.0, 0.0};
};

struct PipelineConfig {
  int n_layers = 7;
  Refiner* refiner = nullptr;  // null -> IdentityRefiner
  bool clamp = true;
};

/// dE^i = E^i - (I - G_D diag(chi)) E^t, columnwise.
Eigen::MatrixXcd incident_residual(const ContrastMap& chi, const FieldSet& etot,
                                   const FieldSet& einc,
                                   const GreensVolume& gd);

/// dE^s = E^s_meas - G_S diag(chi) E^t.
Eigen::MatrixXcd scattered_residual(const FieldSet& es_meas,
                                    const ContrastMap& chi,
                                    const FieldSet& etot,
                                    const GreensSurface& gs);

/// The stacked linearized operator for the current total field; data vectors
/// are stacked column-by-incidence (see vec_columns).
StackedOperator stack_operator(const FieldSet& etot, const GreensSurface& gs);

struct MatchedFilterResult {
  Eigen::VectorXcd approx_dchi;
  cdouble gamma{0.0, 0.0};
};

/// Matched-filter contrast variation: dchi = gamma A^H y with the scalar
/// gamma minimizing ||y - gamma A A^H y||. Returns (0, 0) when y = 0 or
/// A A^H y = 0; A^H y is computed once and reused.
MatchedFilterResult matched_filter_dchi(const StackedOperator& A,
                                        const Eigen::VectorXcd& y);

/// Least-squares contrast variation (the matched filter's oracle), solved
/// with the same regularized CG as the classic methods.
Eigen::VectorXcd ls_dchi(const StackedOperator& A, const Eigen::VectorXcd& y,
                         double lambda, double tol = 1e-8, int max_iter = 500);

/// One unrolled layer: incident residual, field refinement, E^t update,
/// scattered residual, matched filter, contrast refinement, clamped update.
/// Throws Error naming the mapping when a refiner output has the wrong shape
/// or non-finite entries.
LayerState layer_step(const LayerState& state, const FieldSet& es_meas,
                      const FieldSet& einc, const GreensVolume& gd,
                      const GreensSurface& gs, Refiner& refiner,
                      bool clamp = true);

/// Runs K layers from chi_0 (BPS when absent) and E^t_0 = E^i. The trace has
/// K+1 iterates: the init state (index 0) followed by one per layer.
IterateTrace run_pipeline(const PipelineConfig& config, const FieldSet& es_meas,
                          const FieldSet& einc, const GreensVolume& gd,
                          const GreensSurface& gs,
                          const std::optional<ContrastMap>& chi0 = std::nullopt);

/// Physical-consistency products for post-hoc inspection.
Eigen::MatrixXcd predict_scattered(const ContrastMap& chi, const FieldSet& etot,
                                   const GreensSurface& gs);
Eigen::MatrixXcd predict_current(const ContrastMap& chi, const FieldSet& etot);

}  // namespace tmscat
