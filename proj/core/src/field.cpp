#include "tempodeg/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tempodeg/error.hpp"

namespace tempodeg {

std::vector<DisplacementFieldSeq::Tap> DisplacementFieldSeq::axis_map(std::size_t pixels,
                                                                      std::size_t points) {
  std::vector<Tap> map(pixels);
  const std::size_t intervals = points - 1;
  for (std::size_t p = 0; p < pixels; ++p) {
    const double g = pixels > 1 ? static_cast<double>(p) * static_cast<double>(intervals) /
                                      static_cast<double>(pixels - 1)
                                : 0.0;
    std::size_t lo = static_cast<std::size_t>(std::floor(g));
    if (lo >= intervals) lo = intervals - 1;
    map[p] = {lo, static_cast<float>(g - static_cast<double>(lo))};
  }
  return map;
}

DisplacementFieldSeq::DisplacementFieldSeq(std::size_t frames, std::size_t height,
                                           std::size_t width, std::size_t grid_h,
                                           std::size_t grid_w, std::vector<float> control)
    : frames_(frames),
      height_(height),
      width_(width),
      grid_h_(grid_h),
      grid_w_(grid_w),
      control_(std::move(control)) {
  if (grid_h < 2 || grid_w < 2) {
    throw ParameterError("displacement lattice must be at least 2x2, got " +
                         std::to_string(grid_h) + "x" + std::to_string(grid_w));
  }
  if (control_.size() != frames * grid_h * grid_w * 2) {
    throw ParameterError("displacement control has " + std::to_string(control_.size()) +
                         " values, expected " +
                         std::to_string(frames * grid_h * grid_w * 2));
  }
  ymap_ = axis_map(height, grid_h);
  xmap_ = axis_map(width, grid_w);
}

DisplacementFieldSeq DisplacementFieldSeq::uniform(std::size_t frames, std::size_t height,
                                                   std::size_t width, float dx, float dy) {
  std::vector<float> control(frames * 2 * 2 * 2);
  for (std::size_t i = 0; i < control.size(); i += 2) {
    control[i] = dx;
    control[i + 1] = dy;
  }
  return DisplacementFieldSeq(frames, height, width, 2, 2, std::move(control));
}

void DisplacementFieldSeq::sample_row(std::size_t t, std::size_t y,
                                      std::span<float> out) const {
  const Tap ty = ymap_[y];
  const float wy1 = ty.frac;
  const float wy0 = 1.0f - wy1;
  // Blend the two bracketing lattice rows, then interpolate along x.
  float blended[2 * 64];
  std::vector<float> heap;
  float* row = blended;
  if (grid_w_ > 64) {
    heap.resize(grid_w_ * 2);
    row = heap.data();
  }
  const float* r0 = &control_[((t * grid_h_ + ty.lo) * grid_w_) * 2];
  const float* r1 = r0 + grid_w_ * 2;
  for (std::size_t j = 0; j < grid_w_ * 2; ++j) row[j] = r0[j] * wy0 + r1[j] * wy1;
  for (std::size_t x = 0; x < width_; ++x) {
    const Tap tx = xmap_[x];
    const float wx1 = tx.frac;
    const float wx0 = 1.0f - wx1;
    const float* a = row + tx.lo * 2;
    out[2 * x] = a[0] * wx0 + a[2] * wx1;
    out[2 * x + 1] = a[1] * wx0 + a[3] * wx1;
  }
}

std::array<float, 2> DisplacementFieldSeq::at(std::size_t t, std::size_t y,
                                              std::size_t x) const {
  // Same evaluation order as sample_row: rows first, then columns.
  const Tap ty = ymap_[y];
  const Tap tx = xmap_[x];
  const float wy1 = ty.frac;
  const float wy0 = 1.0f - wy1;
  const float wx1 = tx.frac;
  const float wx0 = 1.0f - wx1;
  std::array<float, 2> d{};
  for (std::size_t c = 0; c < 2; ++c) {
    const float left = control(t, ty.lo, tx.lo, c) * wy0 + control(t, ty.lo + 1, tx.lo, c) * wy1;
    const float right =
        control(t, ty.lo, tx.lo + 1, c) * wy0 + control(t, ty.lo + 1, tx.lo + 1, c) * wy1;
    d[c] = left * wx0 + right * wx1;
  }
  return d;
}

bool DisplacementFieldSeq::is_zero() const {
  return std::all_of(control_.begin(), control_.end(), [](float v) { return v == 0.0f; });
}

float DisplacementFieldSeq::max_abs() const {
  float m = 0.0f;
  for (float v : control_) m = std::max(m, std::abs(v));
  return m;
}

DisplacementFieldSeq gen_field_seq(const RandomStream& stream, const FieldSpec& spec,
                                   std::size_t frames, std::size_t height,
                                   std::size_t width) {
  if (spec.grid_h < 2 || spec.grid_w < 2) {
    throw ParameterError("displacement lattice must be at least 2x2");
  }
  if (!(spec.amplitude >= 0.0f)) throw ParameterError("amplitude must be >= 0");
  if (frames == 0) throw ParameterError("displacement fields for an empty clip");

  const double bound =
      static_cast<double>(spec.amplitude) * static_cast<double>(std::min(height, width));
  const std::size_t points = spec.grid_h * spec.grid_w;
  std::vector<float> control(frames * points * 2, 0.0f);
  if (bound == 0.0) {
    return DisplacementFieldSeq(frames, height, width, spec.grid_h, spec.grid_w,
                                std::move(control));
  }

  TrajectorySpec unit;
  unit.basis = spec.basis;
  unit.min = -1.0f;
  unit.max = 1.0f;
  unit.lattice_points = spec.temporal_knots;
  unit.smooth_window = spec.smooth_window;
  check_spec(unit);

  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t p = 0; p < points; ++p) {
      RandomStream child = stream.fork(c * points + p);
      const Trajectory traj = generate(unit, frames, child);
      for (std::size_t t = 0; t < frames; ++t) {
        control[(t * points + p) * 2 + c] =
            float_within(bound * static_cast<double>(traj[t]), -bound, bound);
      }
    }
  }
  return DisplacementFieldSeq(frames, height, width, spec.grid_h, spec.grid_w,
                              std::move(control));
}

}  // namespace tempodeg
