#pragma once

#include <vector>

#include "tmscat/common.hpp"

namespace tmscat {

/// ||pred - truth||_F^2 / ||truth||_F^2 over complex entries.
/// Throws for shape mismatch or an all-zero truth.
double nmse(const ContrastMap& pred, const ContrastMap& truth);

/// Global-statistics SSIM (population mean/variance/covariance over all
/// cells, no sliding window). Lossy pairs are scored per channel (real,
/// then imaginary) and averaged. The dynamic range L is taken from the
/// truth channel's max-min; a constant channel (L = 0) falls back to L = 1.
/// Symmetric whenever both maps share the same range.
double ssim(const ContrastMap& pred, const ContrastMap& truth,
            double k1 = 0.01, double k2 = 0.03);

/// Anisotropic total variation: sum of |forward difference| along x and y
/// for both channels, with zero-flux boundaries (no wrap-around terms).
double tv_seminorm(const ContrastMap& chi);

/// How per-layer weights decay from the last layer backwards.
/// last_layer_unit: w_k = c^(K-k), so layer K has weight 1 and c = 0
/// supervises only the final output. offset_by_one: w_k = c^(K-1-k), an
/// alternative indexing kept for comparison (its final weight is 1/c).
enum class WeightConvention { last_layer_unit, offset_by_one };

struct LossParams {
  double alpha = 0.5;       // field-loss balance
  double beta = 1e-4;       // TV strength
  double gamma_loss = 0.04; // SNR weighting scale
  double c = 0.8;           // layer-weight decay, in [0, 1)
  int n_layers = 7;         // K
  WeightConvention convention = WeightConvention::last_layer_unit;

  void validate() const;  // alpha, beta >= 0; gamma_loss > 0; 0 <= c < 1; K >= 1
};

/// The K per-layer weights w_1..w_K under params' convention (0^0 = 1).
std::vector<double> layer_weights(const LossParams& params);

/// L_k = L^chi + alpha * L^field, where L^field is the mean squared modulus
/// of the total-field error (per complex entry) and L^chi adds beta * TV of
/// the prediction, both normalized by the real scalar count C * M^2 with
/// C = 2 only when the truth map is lossy.
double layer_loss(const ContrastMap& chi_k, const ContrastMap& chi_truth,
                  const FieldSet& etot_k, const FieldSet& etot_truth,
                  const LossParams& params);

/// Weighted sum over exactly K per-layer losses.
double total_loss(const std::vector<double>& per_layer,
                  const LossParams& params);

/// base * gamma_loss / noise_level^2 (weight 1 at the 20% reference level).
/// Throws when noise_level <= 0.
double snr_weighted_loss(double base, double noise_level,
                         const LossParams& params);

}  // namespace tmscat
