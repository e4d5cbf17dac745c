#include "tempodeg/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tempodeg/canonical_json.hpp"
#include "tempodeg/curriculum.hpp"
#include "tempodeg/error.hpp"
#include "tempodeg/hash.hpp"
#include "tempodeg/metrics.hpp"
#include "tempodeg/protocol.hpp"
#include "tempodeg/recipe_json.hpp"
#include "tempodeg/synthetic.hpp"
#include "tempodeg/vio.hpp"

namespace tempodeg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

inline constexpr std::string_view kReportFormat = "tempodeg.report/1";

// Flat JSON config: every top-level key is routed to the option of the same
// name on whichever subcommand was selected on the command line.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* app) : app_(app) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw CLI::ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConfigError("config file must hold a JSON object");
    std::vector<std::string> parents;
    const auto subs = app_->get_subcommands();
    if (!subs.empty()) parents.push_back(subs.front()->get_name());

    std::vector<CLI::ConfigItem> items;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      std::replace(item.name.begin(), item.name.end(), '_', '-');
      if (item.name == "command") continue;
      if (it.value().is_object()) throw CLI::ConfigError("config key '" + it.key() + "' is nested");
      if (it.value().is_array()) {
        for (const json& v : it.value()) item.inputs.push_back(scalar(v, it.key()));
      } else {
        item.inputs.push_back(scalar(it.value(), it.key()));
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  static std::string scalar(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConfigError("config key '" + key + "' has an unsupported value");
  }

  const CLI::App* app_;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int precision = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ParameterError(std::string("missing required ") + flag);
}

Executor make_executor(const RunConfig& cfg) { return Executor(cfg.threads); }

void write_output_clip(const Clip& clip, const std::string& path, int fps) {
  if (is_y4m_path(path)) {
    write_y4m_file(clip, path, fps, 1);
  } else {
    write_frames(clip, path);
  }
}

std::string default_recipe_path(const std::string& output) {
  fs::path p(output);
  if (!p.has_filename()) p = p.parent_path();
  return p.string() + ".recipe.json";
}

void print_recipe_summary(const RecipeRecord& r, std::ostream& out) {
  out << "spatial: " << kSpatialMethod << " s_spat=" << format_float(r.spatial.s_spat) << "\n";
  out << "operators:";
  if (r.temporal_ops.empty()) out << " (none)";
  for (const TemporalOp& op : r.temporal_ops) out << ' ' << to_string(operator_of(op));
  out << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot create " + path);
  f << text;
  if (!f) throw IoError("writing " + path + " failed");
}

int cmd_degrade(const RunConfig& cfg, std::ostream& out) {
  require(cfg.input, "--input");
  require(cfg.output, "--output");
  require(cfg.preset, "--preset");
  if (!cfg.seed) throw ParameterError("degrade needs --seed");
  const Preset preset = parse_preset(cfg.preset);
  const TrajectoryMode mode = parse_trajectory_mode(cfg.trajectory);
  const Executor exec = make_executor(cfg);
  out << "seed: " << *cfg.seed << "\n";

  const Stopwatch total;
  const Clip clip = load_clip(cfg.input);
  const ClipShape shape = shape_of(clip);
  if (shape.frames < 2) throw ShapeError("degrade needs at least 2 frames");

  const Stopwatch work;
  const RecipeRecord recipe = sample_recipe(preset, *cfg.seed, shape, mode);
  const Clip degraded = apply_recipe(clip, recipe, exec);
  const double work_s = work.seconds();

  write_output_clip(degraded, cfg.output, cfg.fps);
  const std::string recipe_path = cfg.recipe.empty() ? default_recipe_path(cfg.output) : cfg.recipe;
  save_recipe(recipe, recipe_path);

  out << "preset: " << to_string(preset) << "\n";
  out << "trajectory: " << to_string(mode) << "\n";
  out << "shape: " << to_string(shape) << " (T x H x W x C)\n";
  out << "threads: " << exec.threads() << "\n";
  print_recipe_summary(recipe, out);
  const auto violations = audit_recipe(recipe);
  if (violations.empty()) {
    out << "audit: ok (all parameters inside the preset table and global bounds)\n";
  } else {
    out << "audit: " << violations.size() << " violation(s)\n";
    for (const auto& v : violations) out << "  - " << v << "\n";
  }
  out << "recipe: " << recipe_path << "\n";
  out << "digest: " << hex_digest(clip_digest(degraded)) << "\n";
  out << "degrade time: " << fmt(work_s) << " s ("
      << fmt(static_cast<double>(shape.frames) / work_s, 2) << " frames/s)\n";
  out << "wall time: " << fmt(total.seconds()) << " s\n";
  return kOk;
}

int cmd_replay(const RunConfig& cfg, std::ostream& out) {
  require(cfg.input, "--input");
  require(cfg.output, "--output");
  require(cfg.recipe, "--recipe");
  const Executor exec = make_executor(cfg);
  const Stopwatch total;
  const RecipeRecord recipe = load_recipe(cfg.recipe);
  out << "seed: " << recipe.seed << "\n";
  const Clip clip = load_clip(cfg.input);
  const Clip degraded = apply_recipe(clip, recipe, exec);
  write_output_clip(degraded, cfg.output, cfg.fps);
  out << "preset: " << to_string(recipe.preset) << "\n";
  out << "shape: " << to_string(recipe.shape) << " (T x H x W x C)\n";
  print_recipe_summary(recipe, out);
  out << "digest: " << hex_digest(clip_digest(degraded)) << "\n";
  out << "wall time: " << fmt(total.seconds()) << " s\n";
  return kOk;
}

json metric_json(const MetricReport& r) {
  return {{"metric", r.metric}, {"units", r.units}, {"per_frame", r.per_frame}, {"mean", r.mean}};
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  require(cfg.reference, "--ref");
  require(cfg.test, "--test");
  if (cfg.sidecar_in.empty() != cfg.sidecar_out.empty()) {
    throw ParameterError("--sidecar-in and --sidecar-out must be given together");
  }
  for (const std::string& m : cfg.metrics) {
    if (m != "psnr" && m != "ssim" && m != "flicker") {
      throw ParameterError("unknown metric '" + m + "' (expected psnr, ssim, flicker)");
    }
  }
  auto wants = [&](const char* m) {
    return std::find(cfg.metrics.begin(), cfg.metrics.end(), m) != cfg.metrics.end();
  };
  const Executor exec = make_executor(cfg);
  const Clip ref = load_clip(cfg.reference);
  const Clip test = load_clip(cfg.test);
  const ClipShape shape = shape_of(ref);
  if (!(shape == shape_of(test))) {
    throw ShapeError("reference is " + to_string(shape) + " but test is " +
                     to_string(shape_of(test)));
  }

  json report;
  report["format"] = std::string(kReportFormat);
  report["shape"] = {{"frames", shape.frames}, {"height", shape.height}, {"width", shape.width}};
  if (wants("psnr")) report["psnr"] = metric_json(psnr(ref, test, exec));
  if (wants("ssim")) report["ssim"] = metric_json(ssim(ref, test, exec));
  if (wants("flicker")) {
    if (shape.frames >= 2) {
      report["flicker"] = {{"reference", flicker_energy(ref, exec)},
                           {"test", flicker_energy(test, exec)}};
    } else {
      report["flicker"] = {{"reference", nullptr}, {"test", nullptr}};
    }
  }
  if (!cfg.sidecar_in.empty()) {
    const auto in = load_sidecar(cfg.sidecar_in);
    const auto outs = load_sidecar(cfg.sidecar_out);
    const SidecarEvaluation ev = evaluate_sidecars(in, outs, shape.frames, cfg.n,
                                                   cfg.box_expansion, shape.height, shape.width);
    json crops = json::array();
    for (const auto& [frame, box] : ev.expanded) {
      crops.push_back({{"frame_index", frame},
                       {"box", {{"x", box.x}, {"y", box.y}, {"w", box.w}, {"h", box.h}}}});
    }
    json metrics = json::object();
    for (const MetricGain& g : ev.metrics) {
      metrics[g.metric] = {{"relative_gain_percent", g.gain.percent},
                           {"mean_delta", g.gain.mean_delta},
                           {"mean_in", g.mean_in},
                           {"mean_out", g.mean_out},
                           {"used", g.gain.used},
                           {"excluded", g.gain.excluded}};
    }
    report["sidecars"] = {{"sampled_frames", ev.frames},
                          {"n", cfg.n},
                          {"box_expansion", cfg.box_expansion},
                          {"crop_count", ev.crops},
                          {"crops", std::move(crops)},
                          {"metrics", std::move(metrics)}};
  }
  const std::string text = canonical_dump(report);
  if (cfg.report.empty()) {
    out << text;
  } else {
    write_text(cfg.report, text);
    out << "seed: none (evaluation is deterministic)\n";
    out << "shape: " << to_string(shape) << "\n";
    if (report.contains("psnr")) out << "psnr mean: " << fmt(report["psnr"]["mean"].get<double>(), 4) << " dB\n";
    if (report.contains("ssim")) out << "ssim mean: " << fmt(report["ssim"]["mean"].get<double>(), 6) << "\n";
    out << "report: " << cfg.report << "\n";
  }
  return kOk;
}

int cmd_preview(const RunConfig& cfg, std::ostream& out) {
  require(cfg.clean, "--clean");
  require(cfg.degraded, "--degraded");
  require(cfg.output, "--output");
  const Clip clean = load_clip(cfg.clean);
  const Clip degraded = load_clip(cfg.degraded);
  const RgbImage sheet = render_contact_sheet(clean, degraded, cfg.n, cfg.thumb_width);
  write_png(cfg.output, sheet.height, sheet.width, sheet.pixels);
  out << "seed: none\n";
  out << "frames:";
  for (std::size_t i : uniform_frame_indices(clean.size(), cfg.n)) out << ' ' << i;
  out << "\n";
  out << "sheet: " << cfg.output << " (" << sheet.width << "x" << sheet.height << ")\n";
  return kOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  require(cfg.output, "--output");
  const std::uint64_t seed = cfg.seed.value_or(0);
  out << "seed: " << seed << "\n";
  const ClipShape shape{cfg.frames, cfg.height, cfg.width};
  if (shape.frames == 0 || shape.height == 0 || shape.width == 0) {
    throw ParameterError("synthetic clip dimensions must be positive");
  }
  const Clip clip = make_synthetic_clip(shape, seed, make_executor(cfg));
  write_output_clip(clip, cfg.output, cfg.fps);
  out << "shape: " << to_string(shape) << "\n";
  out << "output: " << cfg.output << "\n";
  return kOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  BenchOptions opts;
  opts.shape = {cfg.frames, cfg.height, cfg.width};
  opts.preset = parse_preset(cfg.preset);
  opts.seed = cfg.seed.value_or(0);
  opts.runs = cfg.runs;
  opts.thread_counts = cfg.thread_counts;
  if (opts.runs == 0) throw ParameterError("--runs must be >= 1");
  if (opts.thread_counts.empty()) throw ParameterError("--thread-counts must not be empty");
  for (unsigned t : opts.thread_counts) {
    if (t == 0) throw ParameterError("--thread-counts entries must be >= 1");
  }
  out << "seed: " << opts.seed << "\n";
  out << "bench: " << to_string(opts.shape) << " preset " << to_string(opts.preset) << ", "
      << opts.runs << " runs per point\n";
  const BenchResult r = run_bench(opts, &out);

  out << "operators:";
  for (const auto& op : r.operators) out << ' ' << op;
  out << "\nhardware threads: " << r.hardware_threads << "\n";
  out << "threads  fps(median)  blur+warp(s)  speedup(blur+warp)  digest\n";
  for (const ThreadPoint& p : r.scaling) {
    char line[160];
    std::snprintf(line, sizeof(line), "%7u  %11.2f  %12.3f  %18.2f  %s\n", p.threads, p.fps,
                  p.blur_warp_seconds, r.blur_warp_speedup(p.threads),
                  hex_digest(p.digest).c_str());
    out << line;
  }
  out << "per-stage median seconds at " << r.scaling.back().threads << " threads:\n";
  for (const auto& [stage, s] : r.stage_seconds) out << "  " << stage << ": " << fmt(s) << "\n";
  out << "determinism: " << (r.deterministic ? "ok (identical digests)" : "FAILED") << "\n";

  if (!cfg.report.empty()) {
    json doc;
    doc["format"] = "tempodeg.bench/1";
    doc["seed"] = opts.seed;
    doc["preset"] = std::string(to_string(opts.preset));
    doc["shape"] = {{"frames", opts.shape.frames},
                    {"height", opts.shape.height},
                    {"width", opts.shape.width}};
    doc["operators"] = r.operators;
    doc["deterministic"] = r.deterministic;
    doc["hardware_threads"] = r.hardware_threads;
    doc["stage_seconds"] = r.stage_seconds;
    json scaling = json::array();
    for (const ThreadPoint& p : r.scaling) {
      scaling.push_back({{"threads", p.threads},
                         {"fps", p.fps},
                         {"blur_warp_seconds", p.blur_warp_seconds},
                         {"blur_warp_speedup", r.blur_warp_speedup(p.threads)},
                         {"digest", hex_digest(p.digest)}});
    }
    doc["scaling"] = std::move(scaling);
    write_text(cfg.report, canonical_dump(doc));
    out << "report: " << cfg.report << "\n";
  }
  return r.deterministic ? kOk : kInternal;
}

void add_threads(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-j,--threads", cfg.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporally coherent video degradation engine and evaluation harness",
               "tempodeg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "Flat JSON file of option values (flags take precedence)");
  app.config_formatter(std::make_shared<JsonConfig>(&app));

  RunConfig cfg;
  std::uint64_t seed = 0;
  std::size_t bench_height = 720, bench_width = 1280;

  CLI::App* degrade = app.add_subcommand("degrade", "Degrade a clip with a preset and seed");
  degrade->add_option("-i,--input", cfg.input, "Input frame directory or .y4m file");
  degrade->add_option("-o,--output", cfg.output, "Output frame directory or .y4m file");
  degrade->add_option("-p,--preset", cfg.preset, "light | medium | strong (required)");
  CLI::Option* degrade_seed = degrade->add_option("-s,--seed", seed, "64-bit seed (required)");
  degrade->add_option("-r,--recipe", cfg.recipe, "Where to write the recipe JSON");
  degrade->add_option("--trajectory", cfg.trajectory, "smooth | iid parameter trajectories")
      ->capture_default_str();
  degrade->add_option("--fps", cfg.fps, "Frame rate written to y4m output")->capture_default_str();
  add_threads(degrade, cfg);

  CLI::App* replay = app.add_subcommand("replay", "Re-apply a recipe to a clip");
  replay->add_option("-i,--input", cfg.input, "Input frame directory or .y4m file");
  replay->add_option("-o,--output", cfg.output, "Output frame directory or .y4m file");
  replay->add_option("-r,--recipe", cfg.recipe, "Recipe JSON written by degrade");
  replay->add_option("--fps", cfg.fps, "Frame rate written to y4m output")->capture_default_str();
  add_threads(replay, cfg);

  CLI::App* eval = app.add_subcommand("eval", "Full-reference metrics and sidecar gains");
  eval->add_option("--ref", cfg.reference, "Reference clip");
  eval->add_option("--test", cfg.test, "Test clip");
  eval->add_option("-m,--metrics", cfg.metrics, "psnr, ssim, flicker")
      ->delimiter(',')
      ->capture_default_str();
  eval->add_option("--sidecar-in", cfg.sidecar_in, "Score sidecar of the input video");
  eval->add_option("--sidecar-out", cfg.sidecar_out, "Score sidecar of the output video");
  eval->add_option("-n,--n", cfg.n, "Uniformly sampled frames for sidecar crops")
      ->capture_default_str();
  eval->add_option("--box-expansion", cfg.box_expansion, "Box growth per side (fraction)")
      ->capture_default_str();
  eval->add_option("--report", cfg.report, "Write the JSON report here instead of stdout");
  add_threads(eval, cfg);

  CLI::App* preview = app.add_subcommand("preview", "Contact sheet of clean over degraded frames");
  preview->add_option("--clean", cfg.clean, "Clean clip");
  preview->add_option("--degraded", cfg.degraded, "Degraded clip");
  preview->add_option("-o,--output", cfg.output, "Output PNG");
  preview->add_option("-n,--n", cfg.n, "Number of sampled frames")->capture_default_str();
  preview->add_option("--thumb-width", cfg.thumb_width, "Thumbnail width in pixels")
      ->capture_default_str();

  CLI::App* bench = app.add_subcommand("bench", "Throughput of the full pipeline");
  bench->add_option("--frames", cfg.frames, "Frame count")->capture_default_str();
  bench->add_option("--height", bench_height, "Frame height")->capture_default_str();
  bench->add_option("--width", bench_width, "Frame width")->capture_default_str();
  bench->add_option("-p,--preset", cfg.preset, "light | medium | strong (default strong)");
  CLI::Option* bench_seed = bench->add_option("-s,--seed", seed, "Seed for clip and recipe");
  bench->add_option("--runs", cfg.runs, "Runs per thread count (median)")->capture_default_str();
  bench->add_option("--thread-counts", cfg.thread_counts, "Thread counts to measure")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--report", cfg.report, "Also write a JSON report here");

  CLI::App* synth = app.add_subcommand("synth", "Write a procedural test clip");
  synth->add_option("-o,--output", cfg.output, "Output frame directory or .y4m file");
  synth->add_option("--frames", cfg.frames, "Frame count")->capture_default_str();
  synth->add_option("--height", cfg.height, "Frame height")->capture_default_str();
  synth->add_option("--width", cfg.width, "Frame width")->capture_default_str();
  CLI::Option* synth_seed = synth->add_option("-s,--seed", seed, "Seed (default 0)");
  synth->add_option("--fps", cfg.fps, "Frame rate written to y4m output")->capture_default_str();
  add_threads(synth, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  for (CLI::Option* opt : {degrade_seed, bench_seed, synth_seed}) {
    if (opt->count() > 0) cfg.seed = seed;
  }
  if (cfg.command == "bench") {
    cfg.height = bench_height;
    cfg.width = bench_width;
    if (cfg.preset.empty()) cfg.preset = "strong";
  }

  try {
    if (cfg.command == "degrade") return cmd_degrade(cfg, out);
    if (cfg.command == "replay") return cmd_replay(cfg, out);
    if (cfg.command == "eval") return cmd_eval(cfg, out);
    if (cfg.command == "preview") return cmd_preview(cfg, out);
    if (cfg.command == "bench") return cmd_bench(cfg, out);
    if (cfg.command == "synth") return cmd_synth(cfg, out);
    err << "error: unknown command " << cfg.command << "\n";
    return kConfig;
  } catch (const ShapeError& e) {
    err << "shape error: " << e.what() << "\n";
    return kShapeFormat;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kShapeFormat;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const SidecarError& e) {
    err << "sidecar error: " << e.what() << "\n";
    return kSidecar;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace tempodeg::cli
