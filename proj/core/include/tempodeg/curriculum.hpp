#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tempodeg/clip.hpp"
#include "tempodeg/degradations.hpp"
#include "tempodeg/field.hpp"
#include "tempodeg/parallel.hpp"
#include "tempodeg/preset.hpp"
#include "tempodeg/trajectory.hpp"

namespace tempodeg {

enum class OperatorId {
  kMotionBlur,
  kGridWarp,
  kTemporalMorph,
  kFrameDrop,
  kTemporalDownsample,
};

/// The temporal operator pool, in canonical order.
inline constexpr OperatorId kOperatorPool[] = {
    OperatorId::kMotionBlur, OperatorId::kGridWarp, OperatorId::kTemporalMorph,
    OperatorId::kFrameDrop, OperatorId::kTemporalDownsample};

std::string_view to_string(OperatorId id);
OperatorId parse_operator(std::string_view name);

struct MotionBlurOp {
  TrajectorySpec theta_spec;  // degrees, lattice noise around a random base
  Trajectory theta;
  TrajectorySpec length_spec;  // px, sinusoid
  Trajectory length;
  friend bool operator==(const MotionBlurOp&, const MotionBlurOp&) = default;
};

struct GridWarpOp {
  FieldSpec field_spec;
  StreamKey key;
  DisplacementFieldSeq fields;
  friend bool operator==(const GridWarpOp&, const GridWarpOp&) = default;
};

struct TemporalMorphOp {
  float strength = 0.0f;
  TrajectorySpec alpha_spec;  // [1 - strength, 1], sinusoid
  Trajectory alpha;
  friend bool operator==(const TemporalMorphOp&, const TemporalMorphOp&) = default;
};

struct FrameDropOp {
  float p_drop = 0.0f;
  StreamKey key;
  DropMask mask;
  friend bool operator==(const FrameDropOp&, const FrameDropOp&) = default;
};

struct TemporalDownsampleOp {
  float s_temp = 1.0f;
  friend bool operator==(const TemporalDownsampleOp&, const TemporalDownsampleOp&) = default;
};

using TemporalOp = std::variant<MotionBlurOp, GridWarpOp, TemporalMorphOp, FrameDropOp,
                                TemporalDownsampleOp>;

OperatorId operator_of(const TemporalOp& op);

/// Area-down + bilinear-up by s_spat; always applied before temporal ops.
struct SpatialStage {
  float s_spat = 1.0f;
  friend bool operator==(const SpatialStage&, const SpatialStage&) = default;
};

inline constexpr std::string_view kSpatialMethod = "area_bilinear";

/// How per-frame parameters evolve. kIid replaces every smooth trajectory
/// with independent per-frame draws over the same range (flicker ablation).
enum class TrajectoryMode { kSmooth, kIid };

std::string_view to_string(TrajectoryMode mode);
TrajectoryMode parse_trajectory_mode(std::string_view name);

/// Fully resolved degradation plan: applying it needs no randomness.
struct RecipeRecord {
  std::uint64_t seed = 0;
  Preset preset = Preset::kLight;
  TrajectoryMode mode = TrajectoryMode::kSmooth;
  ClipShape shape;
  SpatialStage spatial;
  std::vector<TemporalOp> temporal_ops;
  friend bool operator==(const RecipeRecord&, const RecipeRecord&) = default;
};

/// Resolves one temporal operator. op_index is the operator's slot (1-based)
/// and keys all of its random streams.
TemporalOp sample_operator(OperatorId id, const PresetSpec& spec, std::uint64_t seed,
                           std::uint32_t op_index, const ClipShape& shape,
                           TrajectoryMode mode = TrajectoryMode::kSmooth);

/// Draws spec.temporal_op_count distinct operators from the pool (in draw
/// order), the spatial factor, and every trajectory, field and mask.
/// Throws ParameterError when T < 2.
RecipeRecord sample_recipe(Preset preset, std::uint64_t seed, const ClipShape& shape,
                           TrajectoryMode mode = TrajectoryMode::kSmooth);

/// Called after each stage with its name ("spatial", "motion_blur", ...) and
/// wall time in seconds.
using StageObserver = std::function<void(std::string_view stage, double seconds)>;

/// Spatial stage, then temporal ops in recorded order. Throws ShapeError
/// when the clip does not match recipe.shape.
Clip apply_recipe(const Clip& clip, const RecipeRecord& recipe,
                  const Executor& exec = sequential(), const StageObserver& observer = {});

/// Applies one temporal operator.
Clip apply_operator(const Clip& clip, const TemporalOp& op,
                    const Executor& exec = sequential());

std::pair<Clip, RecipeRecord> degrade(const Clip& clip, Preset preset, std::uint64_t seed,
                                      const Executor& exec = sequential());

/// Every way the recipe strays from its preset table or the global bounds.
/// Empty when the recipe is in range.
std::vector<std::string> audit_recipe(const RecipeRecord& recipe);

}  // namespace tempodeg
