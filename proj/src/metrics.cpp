#include "tmscat/metrics.hpp"

#include <cmath>
#include <string>

namespace tmscat {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(message);
}

void check_same_grid(const ContrastMap& a, const ContrastMap& b,
                     const char* what) {
  require(a.grid == b.grid && a.values.size() == b.values.size(),
          std::string(what) + ": contrast maps have different shapes");
}

double channel_ssim(const Eigen::ArrayXd& pred, const Eigen::ArrayXd& truth,
                    double k1, double k2) {
  const double mu_p = pred.mean();
  const double mu_t = truth.mean();
  const double var_p = (pred - mu_p).square().mean();
  const double var_t = (truth - mu_t).square().mean();
  const double cov = ((pred - mu_p) * (truth - mu_t)).mean();
  double range = truth.maxCoeff() - truth.minCoeff();
  if (range == 0.0) range = 1.0;
  const double c1 = (k1 * range) * (k1 * range);
  const double c2 = (k2 * range) * (k2 * range);
  return (2.0 * mu_p * mu_t + c1) * (2.0 * cov + c2) /
         ((mu_p * mu_p + mu_t * mu_t + c1) * (var_p + var_t + c2));
}

double channel_tv(const Eigen::ArrayXd& v, int grid) {
  double total = 0.0;
  for (int r = 0; r < grid; ++r) {
    for (int c = 0; c + 1 < grid; ++c) {
      total += std::abs(v[cell_index(r, c + 1, grid)] -
                        v[cell_index(r, c, grid)]);
    }
  }
  for (int r = 0; r + 1 < grid; ++r) {
    for (int c = 0; c < grid; ++c) {
      total += std::abs(v[cell_index(r + 1, c, grid)] -
                        v[cell_index(r, c, grid)]);
    }
  }
  return total;
}

}  // namespace

double nmse(const ContrastMap& pred, const ContrastMap& truth) {
  check_same_grid(pred, truth, "nmse");
  const double denom = truth.values.squaredNorm();
  require(denom > 0.0, "nmse: truth map is identically zero");
  return (pred.values - truth.values).squaredNorm() / denom;
}

double ssim(const ContrastMap& pred, const ContrastMap& truth, double k1,
            double k2) {
  check_same_grid(pred, truth, "ssim");
  require(k1 > 0.0 && k2 > 0.0, "ssim: stability constants must be positive");
  const Eigen::ArrayXd pred_re = pred.values.real().array();
  const Eigen::ArrayXd truth_re = truth.values.real().array();
  const double score_re = channel_ssim(pred_re, truth_re, k1, k2);
  if (!pred.has_imaginary() && !truth.has_imaginary()) return score_re;
  const Eigen::ArrayXd pred_im = pred.values.imag().array();
  const Eigen::ArrayXd truth_im = truth.values.imag().array();
  return 0.5 * (score_re + channel_ssim(pred_im, truth_im, k1, k2));
}

double tv_seminorm(const ContrastMap& chi) {
  require(chi.grid >= 1 &&
              chi.values.size() ==
                  static_cast<Eigen::Index>(chi.grid) * chi.grid,
          "tv_seminorm: malformed contrast map");
  return channel_tv(chi.values.real().array(), chi.grid) +
         channel_tv(chi.values.imag().array(), chi.grid);
}

void LossParams::validate() const {
  require(alpha >= 0.0, "loss params: alpha must be nonnegative");
  require(beta >= 0.0, "loss params: beta must be nonnegative");
  require(gamma_loss > 0.0, "loss params: gamma_loss must be positive");
  require(c >= 0.0 && c < 1.0, "loss params: c must lie in [0, 1)");
  require(n_layers >= 1, "loss params: need at least one layer");
}

std::vector<double> layer_weights(const LossParams& params) {
  params.validate();
  std::vector<double> weights(static_cast<std::size_t>(params.n_layers));
  for (int k = 1; k <= params.n_layers; ++k) {
    const int exponent = params.convention == WeightConvention::last_layer_unit
                             ? params.n_layers - k
                             : params.n_layers - 1 - k;
    weights[static_cast<std::size_t>(k - 1)] =
        std::pow(params.c, static_cast<double>(exponent));
  }
  return weights;
}

double layer_loss(const ContrastMap& chi_k, const ContrastMap& chi_truth,
                  const FieldSet& etot_k, const FieldSet& etot_truth,
                  const LossParams& params) {
  params.validate();
  check_same_grid(chi_k, chi_truth, "layer_loss");
  require(etot_k.kind == etot_truth.kind &&
              etot_k.rows() == etot_truth.rows() &&
              etot_k.cols() == etot_truth.cols(),
          "layer_loss: total fields have different shapes or kinds");

  const double field_count =
      static_cast<double>(etot_truth.rows() * etot_truth.cols());
  const double field_mse =
      (etot_k.values - etot_truth.values).squaredNorm() / field_count;

  const double scalar_count =
      static_cast<double>(chi_truth.channels()) *
      static_cast<double>(chi_truth.values.size());
  const double chi_term =
      ((chi_k.values - chi_truth.values).squaredNorm() +
       params.beta * tv_seminorm(chi_k)) /
      scalar_count;
  return chi_term + params.alpha * field_mse;
}

double total_loss(const std::vector<double>& per_layer,
                  const LossParams& params) {
  const std::vector<double> weights = layer_weights(params);
  require(per_layer.size() == weights.size(),
          "total_loss: expected " + std::to_string(weights.size()) +
              " per-layer losses, got " + std::to_string(per_layer.size()));
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    total += weights[k] * per_layer[k];
  }
  return total;
}

double snr_weighted_loss(double base, double noise_level,
                         const LossParams& params) {
  params.validate();
  require(noise_level > 0.0,
          "snr_weighted_loss: noise level must be positive");
  return params.gamma_loss * base / (noise_level * noise_level);
}

}  // namespace tmscat
