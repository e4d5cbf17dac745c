#include "tempodeg/preset.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "tempodeg/error.hpp"

namespace tempodeg {

std::string_view to_string(Preset preset) {
  switch (preset) {
    case Preset::kLight:
      return "light";
    case Preset::kMedium:
      return "medium";
    case Preset::kStrong:
      return "strong";
  }
  return "unknown";
}

Preset parse_preset(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "light") return Preset::kLight;
  if (lower == "medium") return Preset::kMedium;
  if (lower == "strong") return Preset::kStrong;
  throw ParameterError("unknown preset '" + std::string(name) +
                       "' (expected light, medium or strong)");
}

PresetSpec preset_spec(Preset preset) {
  PresetSpec s;
  s.preset = preset;
  s.smooth_window = 5;
  switch (preset) {
    case Preset::kLight:
      s.temporal_op_count = 2;
      s.blur_length = {3.0, 8.0};
      s.grid_points = {12, 12};
      s.warp_amplitude = {0.05, 0.12};
      s.morph_strength = {0.05, 0.2};
      s.p_drop = {0.02, 0.05};
      s.max_run = 1;
      s.s_temp = {1.5, 2.0};
      s.s_spat = {1.25, 1.5};
      s.cycles = 0.5f;
      s.lattice_points = 3;
      s.theta_wander_deg = 10.0f;
      break;
    case Preset::kMedium:
      s.temporal_op_count = 3;
      s.blur_length = {6.0, 14.0};
      s.grid_points = {8, 8};
      s.warp_amplitude = {0.10, 0.20};
      s.morph_strength = {0.15, 0.40};
      s.p_drop = {0.05, 0.10};
      s.max_run = 2;
      s.s_temp = {2.0, 2.8};
      s.s_spat = {1.5, 2.0};
      s.cycles = 1.0f;
      s.lattice_points = 4;
      s.theta_wander_deg = 20.0f;
      break;
    case Preset::kStrong:
      s.temporal_op_count = 4;
      s.blur_length = {10.0, 20.0};
      s.grid_points = {4, 6};
      s.warp_amplitude = {0.20, 0.30};
      s.morph_strength = {0.30, 0.60};
      s.p_drop = {0.10, 0.20};
      s.max_run = 3;
      s.s_temp = {2.8, 3.5};
      s.s_spat = {2.0, 2.5};
      s.cycles = 1.5f;
      s.lattice_points = 5;
      s.theta_wander_deg = 30.0f;
      break;
  }
  return s;
}

}  // namespace tempodeg
