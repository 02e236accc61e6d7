#pragma once

#include <cmath>
#include <cstdint>

#include "tmscat/common.hpp"
#include "tmscat/greens.hpp"

namespace tmscat {

enum class ForwardMethod { dense_lu, iterative };

/// Controls for the iterative (stabilized Krylov) state-equation solve.
struct SolveOptions {
  double tol = 1e-10;   // relative residual per incidence
  int max_iter = 2000;  // per incidence
};

/// Additive measurement noise: `level` is the Frobenius-norm ratio
/// ||N||_F / ||E^s||_F, met exactly by post-scaling the Gaussian draw.
struct NoiseSpec {
  double level = 0.0;
  std::uint64_t seed = 0;
};

/// Line-source incident fields: E^i_p(r_n) = (j/4) H0^(1)(k0 |r_n - r^i_p|)
/// for every cell center r_n and transmitter p on the antenna ring.
FieldSet incident_fields(const SceneConfig& config, int grid);

/// Solves (I - G_D diag(chi)) E^t_p = E^i_p per incidence. dense_lu factors
/// the dense system once and reuses it across incidences (requires dense
/// storage on `gd`); iterative runs BiCGStab with the FFT matvec. Throws
/// SolverError when the solve does not reach its tolerance.
FieldSet solve_total_field(const ContrastMap& chi, const FieldSet& einc,
                           const GreensVolume& gd,
                           ForwardMethod method = ForwardMethod::iterative,
                           const SolveOptions& options = {});

/// E^s = G_S diag(chi) E^t, column per incidence.
FieldSet scattered_field(const ContrastMap& chi, const FieldSet& etot,
                         const GreensSurface& gs);

/// Returns E^s + N with N i.i.d. circular complex Gaussian, rescaled so the
/// noise ratio equals spec.level exactly. level 0 returns the input
/// unchanged; a zero field with level > 0 is an error (undefined ratio).
FieldSet add_noise(const FieldSet& es, const NoiseSpec& spec);

/// SNR implied by a noise ratio: SNR = 1/level^2 (0.10 -> 20 dB).
inline double snr_db(double level) {
  if (!(level > 0.0)) {
    throw Error("snr_db: noise level must be positive");
  }
  return -20.0 * std::log10(level);
}

}  // namespace tmscat
