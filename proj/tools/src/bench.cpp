#include <algorithm>
#include <chrono>
#include <ostream>
#include <thread>

#include "tempodeg/cli/cli.hpp"
#include "tempodeg/curriculum.hpp"
#include "tempodeg/error.hpp"
#include "tempodeg/hash.hpp"
#include "tempodeg/synthetic.hpp"

namespace tempodeg::cli {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

double BenchResult::fps() const { return scaling.empty() ? 0.0 : scaling.back().fps; }

double BenchResult::blur_warp_speedup(unsigned threads) const {
  const ThreadPoint* base = nullptr;
  const ThreadPoint* point = nullptr;
  for (const ThreadPoint& p : scaling) {
    if (p.threads == 1) base = &p;
    if (p.threads == threads) point = &p;
  }
  if (!base || !point || point->blur_warp_seconds <= 0.0) return 0.0;
  return base->blur_warp_seconds / point->blur_warp_seconds;
}

BenchResult run_bench(const BenchOptions& options, std::ostream* log) {
  if (options.runs == 0) throw ParameterError("bench needs at least one run");
  std::vector<unsigned> counts = options.thread_counts;
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  if (counts.empty()) throw ParameterError("bench needs at least one thread count");

  BenchResult result;
  result.hardware_threads = std::thread::hardware_concurrency();
  const Clip clip = make_synthetic_clip(options.shape, options.seed, Executor(counts.back()));
  const RecipeRecord recipe = sample_recipe(options.preset, options.seed, options.shape);
  for (const TemporalOp& op : recipe.temporal_ops) {
    result.operators.emplace_back(to_string(operator_of(op)));
  }
  // Blur and warp are timed on their own as well, whether or not the recipe
  // drew them, since they carry most of the per-pixel work.
  const PresetSpec spec = preset_spec(options.preset);
  const TemporalOp blur =
      sample_operator(OperatorId::kMotionBlur, spec, options.seed, 1, options.shape);
  const TemporalOp warp =
      sample_operator(OperatorId::kGridWarp, spec, options.seed, 2, options.shape);

  std::optional<std::uint64_t> reference_digest;
  for (unsigned threads : counts) {
    const Executor exec(threads);
    std::vector<double> totals;
    std::vector<double> blur_warp;
    std::map<std::string, std::vector<double>> stages;
    ThreadPoint point;
    point.threads = threads;
    for (std::size_t run = 0; run < options.runs; ++run) {
      std::map<std::string, double> run_stages;
      auto start = std::chrono::steady_clock::now();
      {
        const Clip out = apply_recipe(clip, recipe, exec, [&](std::string_view s, double sec) {
          run_stages[std::string(s)] += sec;
        });
        totals.push_back(elapsed(start));
        const std::uint64_t digest = clip_digest(out);
        if (!reference_digest) reference_digest = digest;
        if (digest != *reference_digest) result.deterministic = false;
        point.digest = digest;
      }
      for (const auto& [s, sec] : run_stages) stages[s].push_back(sec);

      start = std::chrono::steady_clock::now();
      { const Clip b = apply_operator(clip, blur, exec); }
      { const Clip w = apply_operator(clip, warp, exec); }
      blur_warp.push_back(elapsed(start));
    }
    point.fps = static_cast<double>(options.shape.frames) / median(totals);
    point.blur_warp_seconds = median(blur_warp);
    result.scaling.push_back(point);
    result.stage_seconds.clear();
    for (const auto& [s, v] : stages) result.stage_seconds[s] = median(v);
    if (log) {
      *log << "  measured " << threads << " thread(s): " << point.fps << " frames/s\n";
      log->flush();
    }
  }
  return result;
}

}  // namespace tempodeg::cli
