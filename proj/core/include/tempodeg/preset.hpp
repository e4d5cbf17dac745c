#pragma once

#include <string_view>

namespace tempodeg {

enum class Preset { kLight, kMedium, kStrong };

std::string_view to_string(Preset preset);
/// Accepts "light", "medium", "strong" (case-insensitive). Throws ParameterError.
Preset parse_preset(std::string_view name);

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
  bool within(const Range& outer) const { return lo >= outer.lo && hi <= outer.hi; }
};

struct IntRange {
  int lo = 0;
  int hi = 0;

  bool contains(int v) const { return v >= lo && v <= hi; }
};

/// Strength tier: how many temporal operators are composed and the ranges
/// their parameters are drawn from.
struct PresetSpec {
  Preset preset = Preset::kLight;
  int temporal_op_count = 0;
  Range blur_length;       // px
  IntRange grid_points;    // control points per side (square lattice)
  Range warp_amplitude;    // fraction of min(H, W)
  Range morph_strength;    // alpha in [1 - strength, 1]
  Range p_drop;
  int max_run = 1;
  Range s_temp;
  Range s_spat;
  int smooth_window = 5;
  // Trajectory shape knobs.
  float cycles = 1.0f;           // sinusoid cycles per clip for length and alpha
  int lattice_points = 4;        // temporal knots for theta and warp control points
  float theta_wander_deg = 20;   // theta_t band half-width around its random base
};

PresetSpec preset_spec(Preset preset);

/// Outer bounds every preset must stay inside.
struct GlobalBounds {
  static constexpr Range kBlurLength{3.0, 20.0};
  static constexpr IntRange kGridPoints{4, 12};
  static constexpr Range kWarpAmplitude{0.05, 0.3};
  static constexpr double kMaxMorphStrength = 0.6;
  static constexpr Range kTemporalFactor{1.5, 3.5};
};

}  // namespace tempodeg
