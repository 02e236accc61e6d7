#include "tmscat/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <thread>

#include <json.hpp>

#include "tmscat/greens.hpp"
#include "tmscat/io.hpp"
#include "tmscat/metrics.hpp"
#include "tmscat/scene.hpp"
#include "tmscat/unrolled.hpp"

namespace tmscat {
namespace {

using nlohmann::json;

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(message);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

/// Accepts either a run directory or a manifest path directly.
std::filesystem::path resolve_manifest(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return path / "manifest.json";
  return path;
}

json load_manifest(const std::filesystem::path& path, const char* command) {
  std::ifstream in(path);
  require(in.good(), "cannot open manifest " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("manifest " + path.string() + " is not valid JSON: " +
                e.what());
  }
  require(j.value("tool", "") == "tmscat",
          "manifest " + path.string() + " was not written by this tool");
  require(j.value("command", "") == command,
          "manifest " + path.string() + " records a '" +
              j.value("command", "") + "' run, expected '" + command + "'");
  return j;
}

void write_manifest(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  require(out.good(), "cannot write manifest " + path.string());
  out << j.dump(2) << "\n";
  out.flush();
  require(out.good(), "short write to manifest " + path.string());
}

json config_to_json(const SceneConfig& config) {
  return json{{"doi_side_m", config.doi_side_m},
              {"antenna_radius_m", config.antenna_radius_m},
              {"freq_hz", config.freq_hz},
              {"n_tx", config.n_tx},
              {"n_rx", config.n_rx},
              {"forward_grid", config.forward_grid},
              {"inversion_grid", config.inversion_grid},
              {"lossy", config.lossy}};
}

SceneConfig config_from_json(const json& j) {
  SceneConfig config;
  try {
    config.doi_side_m = j.at("doi_side_m").get<double>();
    config.antenna_radius_m = j.at("antenna_radius_m").get<double>();
    config.freq_hz = j.at("freq_hz").get<double>();
    config.n_tx = j.at("n_tx").get<int>();
    config.n_rx = j.at("n_rx").get<int>();
    config.forward_grid = j.at("forward_grid").get<int>();
    config.inversion_grid = j.at("inversion_grid").get<int>();
    config.lossy = j.at("lossy").get<bool>();
  } catch (const json::exception& e) {
    throw Error(std::string("manifest config block is malformed: ") +
                e.what());
  }
  return config;
}

const char* forward_method_name(ForwardMethod method) {
  return method == ForwardMethod::dense_lu ? "dense_lu" : "iterative";
}

ForwardMethod forward_method_from(const std::string& name) {
  if (name == "dense_lu") return ForwardMethod::dense_lu;
  if (name == "iterative") return ForwardMethod::iterative;
  throw Error("unknown forward method '" + name + "'");
}

DenseStorage storage_for(ForwardMethod method) {
  return method == ForwardMethod::dense_lu ? DenseStorage::always
                                           : DenseStorage::never;
}

/// Directory name of `out` with trailing separators stripped.
std::string derive_run_id(const std::filesystem::path& out,
                          const std::string& requested) {
  if (!requested.empty()) return requested;
  const std::string name = out.lexically_normal().filename().string();
  if (!name.empty() && name != ".") return name;
  return "run";
}

double auto_display_max(const ContrastMap& map, double requested) {
  if (requested > 0.0) return requested;
  const double top = std::max(map.values.real().maxCoeff(),
                              map.values.imag().maxCoeff());
  return top > 1e-12 ? top : 1e-12;
}

void write_previews(const std::filesystem::path& dir, const std::string& stem,
                    const ContrastMap& map, double display_max) {
  write_pgm(dir / (stem + ".pgm"), contrast_preview(map, display_max));
  if (map.has_imaginary()) {
    write_pgm(dir / (stem + "_im.pgm"),
              contrast_preview(map, display_max, /*imag_channel=*/true));
  }
}

double relative_misfit(const Eigen::MatrixXcd& meas,
                       const Eigen::MatrixXcd& predicted) {
  const double data_norm = meas.norm();
  const double misfit = (meas - predicted).norm();
  return data_norm == 0.0 ? misfit : misfit / data_norm;
}

IterateTrace bps_trace(const FieldSet& es, const FieldSet& einc,
                       const GreensVolume& gd, const GreensSurface& gs) {
  IterateTrace trace;
  trace.method = "bps";
  trace.init = "none";
  trace.requested_iterations = 1;
  trace.stop_reason = "completed";
  const auto started = std::chrono::steady_clock::now();
  BpsResult result = bps(es, einc, gd, gs);
  IterateRecord record;
  record.data_residual = relative_misfit(
      es.values, predict_scattered(result.chi, result.etot, gs));
  record.chi = std::move(result.chi);
  record.wall_ms = elapsed_ms(started);
  trace.iterates.push_back(std::move(record));
  trace.final_etot = std::move(result.etot);
  return trace;
}

struct SweepCell {
  double noise = 0.0;
  double contrast = 0.0;
  std::string method;
  std::uint64_t seed = 0;
  std::string name;
};

struct CellResult {
  bool ok = false;
  std::string error;
  EvalRow row;
};

std::string cell_name(const SweepCell& cell) {
  char buffer[128];
  std::snprintf(buffer, sizeof buffer, "n%g_c%g_%s_s%llu", cell.noise,
                cell.contrast, cell.method.c_str(),
                static_cast<unsigned long long>(cell.seed));
  return buffer;
}

double mean_of(const std::vector<double>& v) {
  double total = 0.0;
  for (const double x : v) total += x;
  return v.empty() ? 0.0 : total / static_cast<double>(v.size());
}

/// Population standard deviation (sweeps report spread, not an estimator).
double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double total = 0.0;
  for (const double x : v) total += (x - mu) * (x - mu);
  return std::sqrt(total / static_cast<double>(v.size()));
}

}  // namespace

SimulateOutputs run_simulate(const SimulateArgs& args) {
  require(!args.out.empty(), "simulate: no output directory (use --out or " +
                                 std::string(kOutRootEnv) + ")");
  require(args.noise >= 0.0, "simulate: noise level must be nonnegative");
  args.config.validate();
  const SceneConfig& config = args.config;
  const std::vector<ShapeSpec> shapes = load_scene(args.scene);

  std::filesystem::create_directories(args.out);
  const std::string run_id = derive_run_id(args.out, args.run_id);

  const auto started = std::chrono::steady_clock::now();
  const ContrastMap truth_fwd = rasterize(shapes, config, config.forward_grid);
  const ContrastMap truth_inv =
      rasterize(shapes, config, config.inversion_grid);
  const GreensVolume gd = assemble_gd(config, config.forward_grid,
                                      storage_for(args.forward_method));
  const GreensSurface gs = assemble_gs(config, config.forward_grid);
  const FieldSet einc = incident_fields(config, config.forward_grid);
  const FieldSet etot =
      solve_total_field(truth_fwd, einc, gd, args.forward_method);
  const FieldSet es_clean = scattered_field(truth_fwd, etot, gs);
  const FieldSet es_noisy = add_noise(es_clean, {args.noise, args.seed});
  const double wall_ms = elapsed_ms(started);

  SimulateOutputs outputs;
  outputs.es_clean = args.out / "es_clean.cfld";
  outputs.es_noisy = args.out / "es_noisy.cfld";
  outputs.einc = args.out / "einc.cfld";
  outputs.truth_forward = args.out / "truth_forward.cmap";
  outputs.truth_inversion = args.out / "truth_inversion.cmap";
  write_field_dump(outputs.es_clean, es_clean.values);
  write_field_dump(outputs.es_noisy, es_noisy.values);
  write_field_dump(outputs.einc, einc.values);
  write_contrast_dump(outputs.truth_forward, truth_fwd);
  write_contrast_dump(outputs.truth_inversion, truth_inv);

  const double display_max = auto_display_max(truth_fwd, args.display_max);
  write_previews(args.out, "truth_forward", truth_fwd, display_max);
  write_previews(args.out, "truth_inversion", truth_inv, display_max);

  if (config.forward_grid == config.inversion_grid) {
    outputs.warnings.push_back(
        "forward and inversion grids are equal: reconstructions on this data "
        "commit the inverse crime");
  }

  json manifest{
      {"tool", "tmscat"},
      {"format", 1},
      {"command", "simulate"},
      {"run_id", run_id},
      {"scene", std::filesystem::absolute(args.scene).string()},
      {"config", config_to_json(config)},
      {"noise", {{"level", args.noise}, {"seed", args.seed}}},
      {"forward_method", forward_method_name(args.forward_method)},
      {"display_max", display_max},
      {"outputs",
       {{"es_clean", "es_clean.cfld"},
        {"es_noisy", "es_noisy.cfld"},
        {"einc", "einc.cfld"},
        {"truth_forward", "truth_forward.cmap"},
        {"truth_inversion", "truth_inversion.cmap"}}},
      {"warnings", outputs.warnings},
      {"wall_ms", wall_ms}};
  outputs.manifest = args.out / "manifest.json";
  write_manifest(outputs.manifest, manifest);
  return outputs;
}

SimulateArgs simulate_args_from_manifest(
    const std::filesystem::path& manifest) {
  const auto path = resolve_manifest(manifest);
  const json j = load_manifest(path, "simulate");
  SimulateArgs args;
  try {
    args.scene = j.at("scene").get<std::string>();
    args.config = config_from_json(j.at("config"));
    args.noise = j.at("noise").at("level").get<double>();
    args.seed = j.at("noise").at("seed").get<std::uint64_t>();
    args.forward_method =
        forward_method_from(j.at("forward_method").get<std::string>());
    args.run_id = j.at("run_id").get<std::string>();
    args.display_max = j.at("display_max").get<double>();
  } catch (const json::exception& e) {
    throw Error("manifest " + path.string() + " is incomplete: " + e.what());
  }
  args.out = path.parent_path();
  return args;
}

InvertOutputs run_invert(const InvertArgs& args) {
  require(!args.out.empty(), "invert: no output directory (use --out or " +
                                 std::string(kOutRootEnv) + ")");
  require(args.method == "bps" || args.method == "bim" ||
              args.method == "vbim" || args.method == "unrolled",
          "invert: unknown method '" + args.method +
              "' (expected bps, bim, vbim, or unrolled)");

  const auto sim_manifest = resolve_manifest(args.sim);
  const json sim = load_manifest(sim_manifest, "simulate");
  const SceneConfig config = config_from_json(sim.at("config"));
  config.validate();
  const auto sim_dir = sim_manifest.parent_path();
  const std::filesystem::path es_path =
      sim_dir / sim.at("outputs").at("es_noisy").get<std::string>();
  const std::filesystem::path truth_path =
      sim_dir / sim.at("outputs").at("truth_inversion").get<std::string>();
  const double noise_level = sim.at("noise").at("level").get<double>();

  const FieldSet es{FieldKind::scattered, read_field_dump(es_path)};
  require(es.rows() == config.n_rx && es.cols() == config.n_tx,
          "invert: measured data in " + es_path.string() +
              " does not match the manifest geometry");

  std::filesystem::create_directories(args.out);
  const std::string run_id = derive_run_id(args.out, args.run_id);

  const int grid = config.inversion_grid;
  const GreensVolume gd =
      assemble_gd(config, grid, storage_for(args.options.forward_method));
  const GreensSurface gs = assemble_gs(config, grid);
  const FieldSet einc = incident_fields(config, grid);

  std::unique_ptr<TabulatedRefiner> tape;
  const auto started = std::chrono::steady_clock::now();
  IterateTrace trace;
  if (args.method == "bps") {
    trace = bps_trace(es, einc, gd, gs);
  } else if (args.method == "bim") {
    trace = bim(es, einc, gd, gs, args.options);
  } else if (args.method == "vbim") {
    trace = vbim(es, einc, gd, gs, args.options);
  } else {
    PipelineConfig pipeline;
    pipeline.n_layers = args.layers;
    pipeline.clamp = args.clamp;
    if (!args.refiner_tape.empty()) {
      tape = std::make_unique<TabulatedRefiner>(args.refiner_tape);
      pipeline.refiner = tape.get();
    }
    trace = run_pipeline(pipeline, es, einc, gd, gs);
  }
  const double wall_ms = elapsed_ms(started);
  require(!trace.iterates.empty(), "invert: method produced no iterates");

  InvertOutputs outputs;
  outputs.trace_csv = args.out / "trace.csv";
  std::filesystem::remove(outputs.trace_csv);  // reruns replace, not append
  CsvWriter trace_csv(outputs.trace_csv, {"iter", "data_residual", "wall_ms"});
  json iteration_names = json::array();
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "iter_%03zu.cmap", k);
    const auto dump = args.out / name;
    write_contrast_dump(dump, trace.iterates[k].chi);
    outputs.iteration_dumps.push_back(dump);
    iteration_names.push_back(name);
    trace_csv.append_row(
        {std::to_string(k),
         CsvWriter::format_double(trace.iterates[k].data_residual),
         CsvWriter::format_double(trace.iterates[k].wall_ms)});
  }

  const ContrastMap& chi_final = trace.iterates.back().chi;
  outputs.chi_final = args.out / "chi_final.cmap";
  outputs.etot_final = args.out / "etot_final.cfld";
  write_contrast_dump(outputs.chi_final, chi_final);
  write_field_dump(outputs.etot_final, trace.final_etot.values);
  const double display_max = auto_display_max(chi_final, args.display_max);
  write_previews(args.out, "chi_final", chi_final, display_max);

  const int iterations =
      args.method == "unrolled"
          ? static_cast<int>(trace.iterates.size()) - 1
          : static_cast<int>(trace.iterates.size());

  json hyperparams{{"lambda", args.options.lambda},
                   {"iterations", args.options.iterations},
                   {"early_stop_rel_change", args.options.early_stop_rel_change},
                   {"cg_tol", args.options.cg_tol},
                   {"cg_max_iter", args.options.cg_max_iter},
                   {"forward_method",
                    forward_method_name(args.options.forward_method)},
                   {"forward_tol", args.options.forward_options.tol},
                   {"forward_max_iter", args.options.forward_options.max_iter},
                   {"layers", args.layers},
                   {"clamp", args.clamp},
                   {"refiner", args.refiner_tape.empty()
                                   ? "identity"
                                   : "tabulated"},
                   {"refiner_tape",
                    args.refiner_tape.empty()
                        ? ""
                        : std::filesystem::absolute(args.refiner_tape)
                              .string()}};

  json manifest{
      {"tool", "tmscat"},
      {"format", 1},
      {"command", "invert"},
      {"run_id", run_id},
      {"sim_manifest", std::filesystem::absolute(sim_manifest).string()},
      {"inputs",
       {{"es", std::filesystem::absolute(es_path).string()},
        {"truth_inversion", std::filesystem::absolute(truth_path).string()},
        {"noise_level", noise_level}}},
      {"config", config_to_json(config)},
      {"method", args.method},
      {"hyperparams", hyperparams},
      {"display_max", display_max},
      {"outputs",
       {{"chi_final", "chi_final.cmap"},
        {"etot_final", "etot_final.cfld"},
        {"trace_csv", "trace.csv"},
        {"iterations", iteration_names}}},
      {"trace",
       {{"init", trace.init},
        {"stop_reason", trace.stop_reason},
        {"requested_iterations", trace.requested_iterations},
        {"records", trace.iterates.size()},
        {"iterations", iterations},
        {"final_residual", trace.iterates.back().data_residual}}},
      {"wall_ms", wall_ms}};
  outputs.manifest = args.out / "manifest.json";
  write_manifest(outputs.manifest, manifest);
  outputs.trace = std::move(trace);
  return outputs;
}

InvertArgs invert_args_from_manifest(const std::filesystem::path& manifest) {
  const auto path = resolve_manifest(manifest);
  const json j = load_manifest(path, "invert");
  InvertArgs args;
  try {
    args.sim = j.at("sim_manifest").get<std::string>();
    args.method = j.at("method").get<std::string>();
    const json& h = j.at("hyperparams");
    args.options.lambda = h.at("lambda").get<double>();
    args.options.iterations = h.at("iterations").get<int>();
    args.options.early_stop_rel_change =
        h.at("early_stop_rel_change").get<double>();
    args.options.cg_tol = h.at("cg_tol").get<double>();
    args.options.cg_max_iter = h.at("cg_max_iter").get<int>();
    args.options.forward_method =
        forward_method_from(h.at("forward_method").get<std::string>());
    args.options.forward_options.tol = h.at("forward_tol").get<double>();
    args.options.forward_options.max_iter = h.at("forward_max_iter").get<int>();
    args.layers = h.at("layers").get<int>();
    args.clamp = h.at("clamp").get<bool>();
    const std::string tape = h.at("refiner_tape").get<std::string>();
    if (!tape.empty()) args.refiner_tape = tape;
    args.run_id = j.at("run_id").get<std::string>();
    args.display_max = j.at("display_max").get<double>();
  } catch (const json::exception& e) {
    throw Error("manifest " + path.string() + " is incomplete: " + e.what());
  }
  args.out = path.parent_path();
  return args;
}

EvalRow run_eval(const EvalArgs& args) {
  const auto manifest_path = resolve_manifest(args.run);
  const json j = load_manifest(manifest_path, "invert");
  const auto run_dir = manifest_path.parent_path();
  const SceneConfig config = config_from_json(j.at("config"));

  const ContrastMap chi = read_contrast_dump(
      run_dir / j.at("outputs").at("chi_final").get<std::string>());
  const std::filesystem::path truth_path =
      args.truth.empty()
          ? std::filesystem::path(
                j.at("inputs").at("truth_inversion").get<std::string>())
          : args.truth;
  const ContrastMap truth = read_contrast_dump(truth_path);
  require(chi.grid == truth.grid,
          "eval: prediction grid " + std::to_string(chi.grid) +
              " does not match truth grid " + std::to_string(truth.grid));

  EvalRow row;
  row.run_id = j.at("run_id").get<std::string>();
  row.method = j.at("method").get<std::string>();
  row.noise_level = j.at("inputs").at("noise_level").get<double>();
  row.iterations = j.at("trace").at("iterations").get<int>();
  row.wall_ms = j.at("wall_ms").get<double>();
  row.nmse = nmse(chi, truth);
  row.ssim = ssim(chi, truth);

  const std::filesystem::path es_path =
      args.es.empty()
          ? std::filesystem::path(j.at("inputs").at("es").get<std::string>())
          : args.es;
  const Eigen::MatrixXcd es = read_field_dump(es_path);
  const FieldSet etot{
      FieldKind::total,
      read_field_dump(run_dir /
                      j.at("outputs").at("etot_final").get<std::string>())};
  const GreensSurface gs = assemble_gs(config, config.inversion_grid);
  row.es_residual = relative_misfit(es, predict_scattered(chi, etot, gs));

  if (!args.csv.empty()) {
    CsvWriter csv(args.csv, {"run_id", "method", "noise_level", "nmse", "ssim",
                             "iterations", "wall_ms", "es_residual"});
    csv.append_row({row.run_id, row.method,
                    CsvWriter::format_double(row.noise_level),
                    CsvWriter::format_double(row.nmse),
                    CsvWriter::format_double(row.ssim),
                    std::to_string(row.iterations),
                    CsvWriter::format_double(row.wall_ms),
                    CsvWriter::format_double(row.es_residual)});
  }
  return row;
}

SweepSummary run_sweep(const SweepArgs& args) {
  require(!args.out.empty(), "sweep: no output directory (use --out or " +
                                 std::string(kOutRootEnv) + ")");
  require(!args.noise_levels.empty() && !args.contrasts.empty() &&
              !args.methods.empty() && !args.seeds.empty(),
          "sweep: every axis needs at least one value");
  require(args.jobs >= 1, "sweep: --jobs must be at least 1");
  require(args.scene_kind == "austria" || args.scene_kind == "random",
          "sweep: scene kind must be 'austria' or 'random'");
  args.config.validate();

  std::vector<SweepCell> cells;
  for (const double noise : args.noise_levels) {
    for (const double contrast : args.contrasts) {
      for (const std::string& method : args.methods) {
        for (const std::uint64_t seed : args.seeds) {
          SweepCell cell{noise, contrast, method, seed, ""};
          cell.name = cell_name(cell);
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  std::filesystem::create_directories(args.out);

  std::vector<CellResult> results(cells.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= cells.size()) return;
      const SweepCell& cell = cells[i];
      CellResult& result = results[i];
      try {
        const auto cell_dir = args.out / cell.name;
        std::filesystem::create_directories(cell_dir);
        const std::vector<ShapeSpec> shapes =
            args.scene_kind == "austria"
                ? austria_profile(cdouble(cell.contrast, 0.0), args.config)
                : sample_cylinder_scene(cell.seed, args.config.lossy,
                                        args.config);
        const auto scene_path = cell_dir / "scene.json";
        save_scene(scene_path, shapes);

        SimulateArgs sim;
        sim.scene = scene_path;
        sim.config = args.config;
        sim.noise = cell.noise;
        sim.seed = cell.seed;
        sim.out = cell_dir / "sim";
        sim.run_id = cell.name + "-sim";
        run_simulate(sim);

        InvertArgs inv;
        inv.sim = sim.out;
        inv.method = cell.method;
        inv.options = args.options;
        inv.layers = args.layers;
        inv.out = cell_dir / "inv";
        inv.run_id = cell.name;
        run_invert(inv);

        EvalArgs eval;
        eval.run = inv.out;
        result.row = run_eval(eval);
        result.ok = true;
      } catch (const std::exception& e) {
        result.ok = false;
        result.error = e.what();
      }
    }
  };
  if (args.jobs == 1 || cells.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const std::size_t n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(args.jobs),
                              cells.size());
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  SweepSummary summary;
  summary.csv = args.out / "summary.csv";
  CsvWriter csv(summary.csv, {"noise_level", "contrast", "method", "metric",
                              "mean", "std", "n_ok", "n_fail"});
  json cell_log = json::array();
  for (const double noise : args.noise_levels) {
    for (const double contrast : args.contrasts) {
      for (const std::string& method : args.methods) {
        std::map<std::string, std::vector<double>> samples;
        int n_ok = 0;
        int n_fail = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          const SweepCell& cell = cells[i];
          if (cell.noise != noise || cell.contrast != contrast ||
              cell.method != method) {
            continue;
          }
          if (results[i].ok) {
            ++n_ok;
            samples["nmse"].push_back(results[i].row.nmse);
            samples["ssim"].push_back(results[i].row.ssim);
            samples["es_residual"].push_back(results[i].row.es_residual);
            samples["wall_ms"].push_back(results[i].row.wall_ms);
          } else {
            ++n_fail;
          }
        }
        for (const char* metric :
             {"nmse", "ssim", "es_residual", "wall_ms"}) {
          const std::vector<double>& v = samples[metric];
          csv.append_row({CsvWriter::format_double(noise),
                          CsvWriter::format_double(contrast), method, metric,
                          CsvWriter::format_double(mean_of(v)),
                          CsvWriter::format_double(std_of(v)),
                          std::to_string(n_ok), std::to_string(n_fail)});
        }
      }
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cell_log.push_back(json{{"cell", cells[i].name},
                            {"ok", results[i].ok},
                            {"error", results[i].error}});
    if (results[i].ok) {
      ++summary.cells_ok;
    } else {
      ++summary.cells_failed;
    }
  }

  json manifest{{"tool", "tmscat"},
                {"format", 1},
                {"command", "sweep"},
                {"config", config_to_json(args.config)},
                {"scene_kind", args.scene_kind},
                {"noise_levels", args.noise_levels},
                {"contrasts", args.contrasts},
                {"methods", args.methods},
                {"seeds", args.seeds},
                {"layers", args.layers},
                {"jobs", args.jobs},
                {"cells", cell_log}};
  write_manifest(args.out / "manifest.json", manifest);
  return summary;
}

}  // namespace tmscat
