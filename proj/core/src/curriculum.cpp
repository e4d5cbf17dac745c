#include "tempodeg/curriculum.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <sstream>

#include "tempodeg/error.hpp"

namespace tempodeg {

std::string_view to_string(OperatorId id) {
  switch (id) {
    case OperatorId::kMotionBlur:
      return "motion_blur";
    case OperatorId::kGridWarp:
      return "grid_warp";
    case OperatorId::kTemporalMorph:
      return "temporal_morph";
    case OperatorId::kFrameDrop:
      return "frame_drop";
    case OperatorId::kTemporalDownsample:
      return "temporal_downsample";
  }
  return "unknown";
}

OperatorId parse_operator(std::string_view name) {
  for (OperatorId id : kOperatorPool) {
    if (to_string(id) == name) return id;
  }
  throw ParameterError("unknown operator '" + std::string(name) + "'");
}

std::string_view to_string(TrajectoryMode mode) {
  return mode == TrajectoryMode::kSmooth ? "smooth" : "iid";
}

TrajectoryMode parse_trajectory_mode(std::string_view name) {
  if (name == "smooth") return TrajectoryMode::kSmooth;
  if (name == "iid") return TrajectoryMode::kIid;
  throw ParameterError("unknown trajectory mode '" + std::string(name) + "'");
}

OperatorId operator_of(const TemporalOp& op) {
  return static_cast<OperatorId>(op.index());
}

namespace {

Basis pick(Basis smooth, TrajectoryMode mode) {
  return mode == TrajectoryMode::kIid ? Basis::kIid : smooth;
}

MotionBlurOp sample_blur(const PresetSpec& spec, std::uint64_t seed, std::uint32_t k,
                         std::size_t frames, TrajectoryMode mode) {
  RandomStream s = derive_stream(seed, k, "blur");
  MotionBlurOp op;

  const double base = s.uniform(0.0, 360.0);
  op.theta_spec.basis = pick(Basis::kLatticeNoise, mode);
  op.theta_spec.min = static_cast<float>(base - spec.theta_wander_deg);
  op.theta_spec.max = static_cast<float>(base + spec.theta_wander_deg);
  op.theta_spec.lattice_points = spec.lattice_points;
  op.theta_spec.smooth_window = spec.smooth_window;
  op.theta_spec.key = {seed, k, "blur_theta"};
  op.theta = generate(op.theta_spec, frames);

  // A band a quarter of the preset range wide, centred somewhere inside it.
  const Range& r = spec.blur_length;
  const double centre = s.uniform(r.lo, r.hi);
  const double half = 0.25 * (r.hi - r.lo);
  op.length_spec.basis = pick(Basis::kSinusoid, mode);
  op.length_spec.min = float_within(centre - half, r.lo, r.hi);
  op.length_spec.max = float_within(centre + half, r.lo, r.hi);
  op.length_spec.cycles = spec.cycles;
  op.length_spec.smooth_window = spec.smooth_window;
  op.length_spec.key = {seed, k, "blur_length"};
  op.length = generate(op.length_spec, frames);
  return op;
}

GridWarpOp sample_warp(const PresetSpec& spec, std::uint64_t seed, std::uint32_t k,
                       const ClipShape& shape, TrajectoryMode mode) {
  RandomStream s = derive_stream(seed, k, "warp");
  GridWarpOp op;
  const int grid = s.uniform_int(spec.grid_points.lo, spec.grid_points.hi);
  op.field_spec.grid_h = static_cast<std::size_t>(grid);
  op.field_spec.grid_w = static_cast<std::size_t>(grid);
  op.field_spec.amplitude = s.uniform_float(spec.warp_amplitude.lo, spec.warp_amplitude.hi);
  op.field_spec.temporal_knots = spec.lattice_points;
  op.field_spec.smooth_window = spec.smooth_window;
  op.field_spec.basis = pick(Basis::kLatticeNoise, mode);
  op.key = {seed, k, "warp_field"};
  op.fields = gen_field_seq(derive_stream(op.key), op.field_spec, shape.frames,
                            shape.height, shape.width);
  return op;
}

TemporalMorphOp sample_morph(const PresetSpec& spec, std::uint64_t seed, std::uint32_t k,
                             std::size_t frames, TrajectoryMode mode) {
  RandomStream s = derive_stream(seed, k, "morph");
  TemporalMorphOp op;
  op.strength = s.uniform_float(spec.morph_strength.lo, spec.morph_strength.hi);
  op.alpha_spec.basis = pick(Basis::kSinusoid, mode);
  op.alpha_spec.min = float_within(1.0 - op.strength, 0.0, 1.0);
  op.alpha_spec.max = 1.0f;
  op.alpha_spec.cycles = spec.cycles;
  op.alpha_spec.smooth_window = spec.smooth_window;
  op.alpha_spec.key = {seed, k, "morph_alpha"};
  op.alpha = generate(op.alpha_spec, frames);
  return op;
}

FrameDropOp sample_drop(const PresetSpec& spec, std::uint64_t seed, std::uint32_t k,
                        std::size_t frames) {
  RandomStream s = derive_stream(seed, k, "drop");
  FrameDropOp op;
  op.p_drop = s.uniform_float(spec.p_drop.lo, spec.p_drop.hi);
  op.key = {seed, k, "drop_mask"};
  RandomStream mask_stream = derive_stream(op.key);
  op.mask = sample_drop_mask(mask_stream, frames, op.p_drop, spec.max_run);
  return op;
}

TemporalDownsampleOp sample_tdown(const PresetSpec& spec, std::uint64_t seed,
                                  std::uint32_t k) {
  RandomStream s = derive_stream(seed, k, "temporal_downsample");
  return {s.uniform_float(spec.s_temp.lo, spec.s_temp.hi)};
}

}  // namespace

TemporalOp sample_operator(OperatorId id, const PresetSpec& spec, std::uint64_t seed,
                           std::uint32_t op_index, const ClipShape& shape,
                           TrajectoryMode mode) {
  if (shape.frames < 2) throw ParameterError("degradation recipes need T >= 2");
  switch (id) {
    case OperatorId::kMotionBlur:
      return sample_blur(spec, seed, op_index, shape.frames, mode);
    case OperatorId::kGridWarp:
      return sample_warp(spec, seed, op_index, shape, mode);
    case OperatorId::kTemporalMorph:
      return sample_morph(spec, seed, op_index, shape.frames, mode);
    case OperatorId::kFrameDrop:
      return sample_drop(spec, seed, op_index, shape.frames);
    case OperatorId::kTemporalDownsample:
      return sample_tdown(spec, seed, op_index);
  }
  throw ParameterError("unknown operator id");
}

RecipeRecord sample_recipe(Preset preset, std::uint64_t seed, const ClipShape& shape,
                           TrajectoryMode mode) {
  if (shape.frames < 2) throw ParameterError("degradation recipes need T >= 2");
  if (shape.height == 0 || shape.width == 0) throw ShapeError("empty frame dimensions");
  const PresetSpec spec = preset_spec(preset);

  RecipeRecord r;
  r.seed = seed;
  r.preset = preset;
  r.mode = mode;
  r.shape = shape;

  RandomStream spatial = derive_stream(seed, 0, "spatial");
  r.spatial.s_spat = spatial.uniform_float(spec.s_spat.lo, spec.s_spat.hi);

  // Partial Fisher-Yates: the first count entries are the draw order.
  std::array<OperatorId, std::size(kOperatorPool)> pool{};
  std::copy(std::begin(kOperatorPool), std::end(kOperatorPool), pool.begin());
  RandomStream select = derive_stream(seed, 0, "select");
  const auto count = static_cast<std::size_t>(spec.temporal_op_count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(
        select.uniform_int(static_cast<int>(i), static_cast<int>(pool.size()) - 1));
    std::swap(pool[i], pool[j]);
    r.temporal_ops.push_back(
        sample_operator(pool[i], spec, seed, static_cast<std::uint32_t>(i + 1), shape, mode));
  }
  return r;
}

Clip apply_operator(const Clip& clip, const TemporalOp& op, const Executor& exec) {
  struct Visitor {
    const Clip& clip;
    const Executor& exec;
    Clip operator()(const MotionBlurOp& o) const {
      return motion_blur(clip, o.theta, o.length, exec);
    }
    Clip operator()(const GridWarpOp& o) const { return grid_warp(clip, o.fields, exec); }
    Clip operator()(const TemporalMorphOp& o) const {
      return temporal_morph(clip, o.alpha, exec);
    }
    Clip operator()(const FrameDropOp& o) const { return apply_drop(clip, o.mask, exec); }
    Clip operator()(const TemporalDownsampleOp& o) const {
      return st_downsample(clip, 1.0, o.s_temp, exec);
    }
  };
  return std::visit(Visitor{clip, exec}, op);
}

Clip apply_recipe(const Clip& clip, const RecipeRecord& recipe, const Executor& exec,
                  const StageObserver& observer) {
  const ClipShape shape = shape_of(clip);
  if (shape != recipe.shape) {
    throw ShapeError("recipe was sampled for " + to_string(recipe.shape) +
                     " but the clip is " + to_string(shape));
  }
  using Clock = std::chrono::steady_clock;
  auto timed = [&](std::string_view stage, auto&& fn) {
    const auto start = Clock::now();
    Clip out = fn();
    if (observer) {
      observer(stage, std::chrono::duration<double>(Clock::now() - start).count());
    }
    return out;
  };

  Clip current = timed("spatial", [&] {
    return st_downsample(clip, recipe.spatial.s_spat, 1.0, exec);
  });
  for (const TemporalOp& op : recipe.temporal_ops) {
    current = timed(to_string(operator_of(op)),
                    [&] { return apply_operator(current, op, exec); });
  }
  return current;
}

std::pair<Clip, RecipeRecord> degrade(const Clip& clip, Preset preset, std::uint64_t seed,
                                      const Executor& exec) {
  RecipeRecord recipe = sample_recipe(preset, seed, shape_of(clip));
  Clip out = apply_recipe(clip, recipe, exec);
  return {std::move(out), std::move(recipe)};
}

namespace {

class Auditor {
 public:
  void range(std::string_view what, double v, const Range& r) {
    if (!r.contains(v)) fail(what, v, r.lo, r.hi);
  }
  void int_range(std::string_view what, int v, const IntRange& r) {
    if (!r.contains(v)) fail(what, v, r.lo, r.hi);
  }
  void series(std::string_view what, const Trajectory& t, const TrajectorySpec& spec,
              std::size_t frames) {
    if (t.size() != frames) {
      issues_.push_back(std::string(what) + ": length " + std::to_string(t.size()) +
                        " != T " + std::to_string(frames));
    }
    for (float v : t.values) {
      if (v < spec.min || v > spec.max) {
        fail(what, v, spec.min, spec.max);
        return;
      }
    }
  }
  void check(bool ok, std::string message) {
    if (!ok) issues_.push_back(std::move(message));
  }
  std::vector<std::string> take() { return std::move(issues_); }

 private:
  void fail(std::string_view what, double v, double lo, double hi) {
    std::ostringstream os;
    os << what << " = " << v << " outside [" << lo << ", " << hi << "]";
    issues_.push_back(os.str());
  }
  std::vector<std::string> issues_;
};

}  // namespace

std::vector<std::string> audit_recipe(const RecipeRecord& recipe) {
  const PresetSpec spec = preset_spec(recipe.preset);
  const std::size_t frames = recipe.shape.frames;
  Auditor a;
  a.range("s_spat", recipe.spatial.s_spat, spec.s_spat);
  a.check(recipe.temporal_ops.size() == static_cast<std::size_t>(spec.temporal_op_count),
          "temporal op count " + std::to_string(recipe.temporal_ops.size()) + " != " +
              std::to_string(spec.temporal_op_count));
  std::vector<OperatorId> seen;
  for (const TemporalOp& op : recipe.temporal_ops) {
    const OperatorId id = operator_of(op);
    a.check(std::find(seen.begin(), seen.end(), id) == seen.end(),
            "operator " + std::string(to_string(id)) + " sampled twice");
    seen.push_back(id);
    if (const auto* b = std::get_if<MotionBlurOp>(&op)) {
      a.series("blur theta", b->theta, b->theta_spec, frames);
      a.series("blur length", b->length, b->length_spec, frames);
      a.range("blur length min", b->length_spec.min, spec.blur_length);
      a.range("blur length max", b->length_spec.max, spec.blur_length);
      for (float v : b->length.values) {
        a.range("blur length", v, spec.blur_length);
        a.range("blur length (global)", v, GlobalBounds::kBlurLength);
      }
    } else if (const auto* w = std::get_if<GridWarpOp>(&op)) {
      a.int_range("grid rows", static_cast<int>(w->field_spec.grid_h), spec.grid_points);
      a.int_range("grid cols", static_cast<int>(w->field_spec.grid_w), spec.grid_points);
      a.int_range("grid rows (global)", static_cast<int>(w->field_spec.grid_h),
                  GlobalBounds::kGridPoints);
      a.range("warp amplitude", w->field_spec.amplitude, spec.warp_amplitude);
      a.range("warp amplitude (global)", w->field_spec.amplitude,
              GlobalBounds::kWarpAmplitude);
      const double bound = static_cast<double>(w->field_spec.amplitude) *
                           static_cast<double>(std::min(recipe.shape.height,
                                                        recipe.shape.width));
      a.check(w->fields.max_abs() <= bound, "warp displacement exceeds amplitude bound");
      a.check(w->fields.frames() == frames && w->fields.height() == recipe.shape.height &&
                  w->fields.width() == recipe.shape.width,
              "warp field shape does not match the recipe shape");
    } else if (const auto* m = std::get_if<TemporalMorphOp>(&op)) {
      a.range("morph strength", m->strength, spec.morph_strength);
      a.range("morph strength (global)", m->strength,
              Range{0.0, GlobalBounds::kMaxMorphStrength});
      a.series("morph alpha", m->alpha, m->alpha_spec, frames);
      a.check(m->alpha_spec.max <= 1.0f && m->alpha_spec.min >= 0.0f,
              "morph alpha range outside [0,1]");
    } else if (const auto* d = std::get_if<FrameDropOp>(&op)) {
      a.range("p_drop", d->p_drop, spec.p_drop);
      a.check(d->mask.max_run == spec.max_run, "drop max_run differs from preset");
      a.check(d->mask.size() == frames, "drop mask length differs from T");
      a.check(d->mask.size() >= 2 && d->mask.keep.front() && d->mask.keep.back(),
              "drop mask does not keep both endpoints");
      a.check(d->mask.longest_gap() <= static_cast<std::size_t>(d->mask.max_run),
              "drop mask gap exceeds max_run");
    } else if (const auto* t = std::get_if<TemporalDownsampleOp>(&op)) {
      a.range("s_temp", t->s_temp, spec.s_temp);
      a.range("s_temp (global)", t->s_temp, GlobalBounds::kTemporalFactor);
    }
  }
  return a.take();
}

}  // namespace tempodeg
