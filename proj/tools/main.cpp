#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmscat/harness.hpp"
#include "tmscat/scene.hpp"

namespace {

void add_config_flags(CLI::App* cmd, tmscat::SceneConfig& config,
                      double& freq_ghz) {
  cmd->add_option("--doi-m", config.doi_side_m, "DOI side length [m]")
      ->capture_default_str();
  cmd->add_option("--ring-m", config.antenna_radius_m,
                  "antenna ring radius [m]")
      ->capture_default_str();
  cmd->add_option("--freq-ghz", freq_ghz, "operating frequency [GHz]")
      ->capture_default_str();
  cmd->add_option("--ni", config.n_tx, "transmitter count")
      ->capture_default_str();
  cmd->add_option("--nr", config.n_rx, "receiver count")
      ->capture_default_str();
  cmd->add_option("--grid", config.forward_grid, "forward simulation grid")
      ->capture_default_str();
  cmd->add_option("--inv-grid", config.inversion_grid, "inversion grid")
      ->capture_default_str();
  cmd->add_flag("--lossy", config.lossy,
                "scenes carry an imaginary (conductivity) channel");
}

std::filesystem::path resolve_out(const std::string& flag,
                                  const std::string& fallback_name) {
  if (!flag.empty()) return flag;
  const char* root = std::getenv(tmscat::kOutRootEnv);
  if (root == nullptr || *root == '\0') {
    throw CLI::ValidationError(
        "--out", std::string("not given and ") + tmscat::kOutRootEnv +
                     " is not set");
  }
  return std::filesystem::path(root) / fallback_name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tmscat: 2-D TM inverse-scattering toolkit"};
  app.require_subcommand(1);

  // --- scene -------------------------------------------------------------
  auto* scene = app.add_subcommand("scene", "Write a scene description file");
  tmscat::SceneConfig scene_cfg;
  double scene_freq_ghz = 3.0;
  std::string scene_kind = "austria";
  double scene_contrast = 1.0;
  double scene_contrast_im = 0.0;
  std::uint64_t scene_seed = 1;
  std::string scene_out;
  scene->add_option("--kind", scene_kind, "profile kind")
      ->check(CLI::IsMember({"austria", "random"}))
      ->capture_default_str();
  scene->add_option("--contrast", scene_contrast,
                    "real contrast of the austria profile")
      ->capture_default_str();
  scene->add_option("--contrast-im", scene_contrast_im,
                    "imaginary contrast of the austria profile")
      ->capture_default_str();
  scene->add_option("--seed", scene_seed, "random-scene seed")
      ->capture_default_str();
  scene->add_option("--out", scene_out, "output scene file")->required();
  add_config_flags(scene, scene_cfg, scene_freq_ghz);
  scene->callback([&] {
    scene_cfg.freq_hz = scene_freq_ghz * 1e9;
    const std::vector<tmscat::ShapeSpec> shapes =
        scene_kind == "austria"
            ? tmscat::austria_profile(
                  tmscat::cdouble(scene_contrast, scene_contrast_im),
                  scene_cfg)
            : tmscat::sample_cylinder_scene(scene_seed, scene_cfg.lossy,
                                            scene_cfg);
    tmscat::save_scene(scene_out, shapes);
    std::printf("wrote %s\n", scene_out.c_str());
  });

  // --- simulate ----------------------------------------------------------
  auto* simulate =
      app.add_subcommand("simulate", "Solve the forward problem for a scene");
  tmscat::SimulateArgs sim_args;
  double sim_freq_ghz = 3.0;
  std::string sim_scene, sim_out, sim_manifest;
  auto* sim_scene_opt =
      simulate->add_option("--scene", sim_scene, "scene file (JSON)");
  simulate->add_option("--noise", sim_args.noise,
                       "relative measurement noise level")
      ->capture_default_str();
  simulate->add_option("--seed", sim_args.seed, "noise seed")
      ->capture_default_str();
  simulate
      ->add_option_function<std::string>(
          "--method",
          [&](const std::string& name) {
            sim_args.forward_method = name == "dense_lu"
                                          ? tmscat::ForwardMethod::dense_lu
                                          : tmscat::ForwardMethod::iterative;
          },
          "forward solver")
      ->check(CLI::IsMember({"iterative", "dense_lu"}));
  simulate->add_option("--run-id", sim_args.run_id,
                       "manifest run id (default: output directory name)");
  simulate->add_option("--display-max", sim_args.display_max,
                       "preview scale (0 = auto)");
  simulate->add_option("--out", sim_out, "output directory");
  auto* sim_manifest_opt = simulate->add_option(
      "--from-manifest", sim_manifest,
      "re-run a previous simulate run; other flags except --out are ignored");
  add_config_flags(simulate, sim_args.config, sim_freq_ghz);
  simulate->callback([&] {
    if (*sim_manifest_opt) {
      sim_args = tmscat::simulate_args_from_manifest(sim_manifest);
      if (!sim_out.empty()) sim_args.out = sim_out;
    } else {
      if (!*sim_scene_opt) throw CLI::RequiredError("--scene");
      sim_args.scene = sim_scene;
      sim_args.config.freq_hz = sim_freq_ghz * 1e9;
      sim_args.out = resolve_out(sim_out, "simulate");
    }
    const tmscat::SimulateOutputs outputs = tmscat::run_simulate(sim_args);
    for (const std::string& warning : outputs.warnings) {
      std::fprintf(stderr, "warning: %s\n", warning.c_str());
    }
    std::printf("wrote %s\n", outputs.manifest.string().c_str());
  });

  // --- invert ------------------------------------------------------------
  auto* invert =
      app.add_subcommand("invert", "Reconstruct the contrast from a data set");
  tmscat::InvertArgs inv_args;
  std::string inv_sim, inv_out, inv_manifest, inv_refiner = "identity";
  std::string inv_tape;
  bool inv_no_clamp = false;
  auto* inv_sim_opt = invert->add_option(
      "--sim", inv_sim, "simulate output directory or manifest");
  invert->add_option("--method", inv_args.method, "reconstruction method")
      ->check(CLI::IsMember({"bps", "bim", "vbim", "unrolled"}))
      ->capture_default_str();
  invert
      ->add_option("--iters", inv_args.options.iterations,
                   "bim/vbim iteration count")
      ->capture_default_str();
  invert
      ->add_option("--lambda", inv_args.options.lambda,
                   "Tikhonov regularization weight")
      ->capture_default_str();
  invert
      ->add_option("--early-stop", inv_args.options.early_stop_rel_change,
                   "stop when the relative residual change drops below this "
                   "(0 disables)")
      ->capture_default_str();
  invert->add_option("--cg-tol", inv_args.options.cg_tol, "inner CG tolerance")
      ->capture_default_str();
  invert
      ->add_option("--cg-iters", inv_args.options.cg_max_iter,
                   "inner CG iteration cap")
      ->capture_default_str();
  invert
      ->add_option_function<std::string>(
          "--forward",
          [&](const std::string& name) {
            inv_args.options.forward_method =
                name == "dense_lu" ? tmscat::ForwardMethod::dense_lu
                                   : tmscat::ForwardMethod::iterative;
          },
          "forward solver used inside iterations")
      ->check(CLI::IsMember({"iterative", "dense_lu"}));
  invert->add_option("--layers", inv_args.layers, "unrolled layer count")
      ->capture_default_str();
  invert->add_flag("--no-clamp", inv_no_clamp,
                   "disable the nonnegativity clamp (unrolled)");
  invert->add_option("--refiner", inv_refiner, "unrolled refiner")
      ->check(CLI::IsMember({"identity", "tabulated"}))
      ->capture_default_str();
  invert->add_option("--refiner-tape", inv_tape,
                     "recorded refiner tape (with --refiner tabulated)");
  invert->add_option("--run-id", inv_args.run_id,
                     "manifest run id (default: output directory name)");
  invert->add_option("--display-max", inv_args.display_max,
                     "preview scale (0 = auto)");
  invert->add_option("--out", inv_out, "output directory");
  auto* inv_manifest_opt = invert->add_option(
      "--from-manifest", inv_manifest,
      "re-run a previous invert run; other flags except --out are ignored");
  invert->callback([&] {
    if (*inv_manifest_opt) {
      inv_args = tmscat::invert_args_from_manifest(inv_manifest);
      if (!inv_out.empty()) inv_args.out = inv_out;
    } else {
      if (!*inv_sim_opt) throw CLI::RequiredError("--sim");
      if (inv_refiner == "tabulated" && inv_tape.empty()) {
        throw CLI::ValidationError("--refiner-tape",
                                   "required with --refiner tabulated");
      }
      inv_args.sim = inv_sim;
      inv_args.clamp = !inv_no_clamp;
      if (!inv_tape.empty()) inv_args.refiner_tape = inv_tape;
      inv_args.out = resolve_out(inv_out, "invert");
    }
    const tmscat::InvertOutputs outputs = tmscat::run_invert(inv_args);
    const tmscat::IterateTrace& trace = outputs.trace;
    std::printf("%s: %zu iterates, final residual %.6g, %s\n",
                trace.method.c_str(), trace.iterates.size(),
                trace.iterates.back().data_residual,
                trace.stop_reason.c_str());
    std::printf("wrote %s\n", outputs.manifest.string().c_str());
  });

  // --- eval --------------------------------------------------------------
  auto* eval =
      app.add_subcommand("eval", "Score a reconstruction against the truth");
  tmscat::EvalArgs eval_args;
  std::string eval_run, eval_csv, eval_truth, eval_es;
  eval->add_option("--run", eval_run, "invert output directory or manifest")
      ->required();
  eval->add_option("--csv", eval_csv, "metrics CSV to append to");
  eval->add_option("--truth", eval_truth,
                   "truth contrast dump (default: from the run's manifests)");
  eval->add_option("--es", eval_es,
                   "measured data dump for the residual column (default: the "
                   "run's noisy data)");
  eval->callback([&] {
    eval_args.run = eval_run;
    eval_args.csv = eval_csv;
    if (!eval_truth.empty()) eval_args.truth = eval_truth;
    if (!eval_es.empty()) eval_args.es = eval_es;
    const tmscat::EvalRow row = tmscat::run_eval(eval_args);
    std::printf(
        "run_id=%s method=%s noise=%.17g nmse=%.17g ssim=%.17g "
        "iterations=%d wall_ms=%.17g es_residual=%.17g\n",
        row.run_id.c_str(), row.method.c_str(), row.noise_level, row.nmse,
        row.ssim, row.iterations, row.wall_ms, row.es_residual);
  });

  // --- sweep -------------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "sweep", "Run a noise x contrast x method x seed experiment grid");
  tmscat::SweepArgs sweep_args;
  double sweep_freq_ghz = 3.0;
  std::string sweep_out;
  sweep->add_option("--noise", sweep_args.noise_levels, "noise levels")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--contrast", sweep_args.contrasts, "austria contrasts")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--methods", sweep_args.methods, "methods to compare")
      ->delimiter(',')
      ->check(CLI::IsMember({"bps", "bim", "vbim", "unrolled"}))
      ->capture_default_str();
  sweep->add_option("--seeds", sweep_args.seeds, "noise/scene seeds")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--scene-kind", sweep_args.scene_kind,
                    "austria (contrast axis) or random (seed axis)")
      ->check(CLI::IsMember({"austria", "random"}))
      ->capture_default_str();
  sweep->add_option("--iters", sweep_args.options.iterations,
                    "bim/vbim iteration count")
      ->capture_default_str();
  sweep->add_option("--lambda", sweep_args.options.lambda,
                    "Tikhonov regularization weight")
      ->capture_default_str();
  sweep->add_option("--layers", sweep_args.layers, "unrolled layer count")
      ->capture_default_str();
  sweep->add_option("--jobs", sweep_args.jobs, "parallel cells")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--out", sweep_out, "output directory");
  add_config_flags(sweep, sweep_args.config, sweep_freq_ghz);
  sweep->callback([&] {
    sweep_args.config.freq_hz = sweep_freq_ghz * 1e9;
    sweep_args.out = resolve_out(sweep_out, "sweep");
    const tmscat::SweepSummary summary = tmscat::run_sweep(sweep_args);
    std::printf("%d cells ok, %d failed\n", summary.cells_ok,
                summary.cells_failed);
    std::printf("wrote %s\n", summary.csv.string().c_str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const tmscat::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
