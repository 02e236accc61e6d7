#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tmscat/common.hpp"
#include "tmscat/forward.hpp"
#include "tmscat/inversion.hpp"

namespace tmscat {

/// Environment variable consulted when a command is run without --out.
inline constexpr const char* kOutRootEnv = "TMSCAT_OUT_ROOT";

struct SimulateArgs {
  std::filesystem::path scene;
  SceneConfig config{};
  double noise = 0.0;
  std::uint64_t seed = 0;
  ForwardMethod forward_method = ForwardMethod::iterative;
  std::filesystem::path out;
  std::string run_id;       // empty -> out directory name
  double display_max = 0.0; // 0 -> auto from the truth map
};

struct SimulateOutputs {
  std::filesystem::path manifest;
  std::filesystem::path es_clean;
  std::filesystem::path es_noisy;
  std::filesystem::path einc;
  std::filesystem::path truth_forward;
  std::filesystem::path truth_inversion;
  std::vector<std::string> warnings;
};

/// Rasterizes the scene on the forward grid, solves the forward problem,
/// and writes measurement dumps, ground truth on both grids, previews, and
/// a manifest that fully reconstructs the run.
SimulateOutputs run_simulate(const SimulateArgs& args);

/// Rebuilds the exact arguments of a previous run from its manifest; the
/// output directory may be redirected to rerun side by side.
SimulateArgs simulate_args_from_manifest(const std::filesystem::path& manifest);

struct InvertArgs {
  std::filesystem::path sim;   // simulate output directory or manifest path
  std::string method = "vbim"; // bps | bim | vbim | unrolled
  InversionOptions options{};
  int layers = 7;              // unrolled depth
  bool clamp = true;           // unrolled clamping
  std::filesystem::path refiner_tape; // empty -> identity refiners
  std::filesystem::path out;
  std::string run_id;          // empty -> out directory name
  double display_max = 0.0;    // 0 -> auto from the reconstruction
};

struct InvertOutputs {
  std::filesystem::path manifest;
  std::filesystem::path chi_final;
  std::filesystem::path etot_final;
  std::filesystem::path trace_csv;
  std::vector<std::filesystem::path> iteration_dumps;
  IterateTrace trace;
};

/// Reconstructs on the inversion grid from a simulate run's noisy data and
/// writes the final contrast, every iterate, the residual trace, previews,
/// and a manifest. Mid-run solver failures keep the trace written so far.
InvertOutputs run_invert(const InvertArgs& args);

InvertArgs invert_args_from_manifest(const std::filesystem::path& manifest);

struct EvalArgs {
  std::filesystem::path run;   // invert output directory or manifest path
  std::filesystem::path csv;   // appended; header written once
  std::filesystem::path truth; // empty -> the simulate run's inversion truth
  std::filesystem::path es;    // empty -> the simulate run's noisy data
};

struct EvalRow {
  std::string run_id;
  std::string method;
  double noise_level = 0.0;
  double nmse = 0.0;
  double ssim = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  double es_residual = 0.0;
};

/// Scores a reconstruction against the ground truth and appends one CSV row:
/// run_id, method, noise_level, nmse, ssim, iterations, wall_ms, es_residual.
EvalRow run_eval(const EvalArgs& args);

struct SweepArgs {
  std::vector<double> noise_levels{0.1, 0.2, 0.3};
  std::vector<double> contrasts{1.0};
  std::vector<std::string> methods{"vbim"};
  std::vector<std::uint64_t> seeds{1};
  std::string scene_kind = "austria"; // austria | random
  SceneConfig config{};
  InversionOptions options{};
  int layers = 7;
  int jobs = 1;
  std::filesystem::path out;
};

struct SweepSummary {
  std::filesystem::path csv;
  int cells_ok = 0;
  int cells_failed = 0;
};

/// Runs the noise x contrast x method x seed cross-product, one output
/// subdirectory per cell, then aggregates mean/std per (noise, contrast,
/// method) into a tidy long-format CSV. Cell failures are recorded and the
/// sweep continues.
SweepSummary run_sweep(const SweepArgs& args);

}  // namespace tmscat
