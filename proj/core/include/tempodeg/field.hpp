#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "tempodeg/random.hpp"
#include "tempodeg/trajectory.hpp"

namespace tempodeg {

/// Per-frame 2-channel displacement fields (dx, dy) in pixels, stored as
/// coarse control lattices and bilinearly upsampled to HxW on demand.
/// Control point (i, j) sits at pixel (i*(H-1)/(gh-1), j*(W-1)/(gw-1)), so a
/// lattice with gh == H and gw == W is a dense per-pixel field.
class DisplacementFieldSeq {
 public:
  DisplacementFieldSeq() = default;
  /// control is laid out [t][i][j][channel]; throws ParameterError on a size
  /// mismatch or a lattice smaller than 2x2.
  DisplacementFieldSeq(std::size_t frames, std::size_t height, std::size_t width,
                       std::size_t grid_h, std::size_t grid_w, std::vector<float> control);

  static DisplacementFieldSeq uniform(std::size_t frames, std::size_t height,
                                      std::size_t width, float dx, float dy);

  std::size_t frames() const { return frames_; }
  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t grid_h() const { return grid_h_; }
  std::size_t grid_w() const { return grid_w_; }
  std::span<const float> control() const { return control_; }
  float control(std::size_t t, std::size_t i, std::size_t j, std::size_t c) const {
    return control_[((t * grid_h_ + i) * grid_w_ + j) * 2 + c];
  }

  /// Upsampled displacement at pixel (x, y) of frame t.
  std::array<float, 2> at(std::size_t t, std::size_t y, std::size_t x) const;
  /// Fills out (size 2*W) with the interleaved displacement of row y.
  void sample_row(std::size_t t, std::size_t y, std::span<float> out) const;

  bool is_zero() const;
  float max_abs() const;

  friend bool operator==(const DisplacementFieldSeq& a, const DisplacementFieldSeq& b) {
    return a.frames_ == b.frames_ && a.height_ == b.height_ && a.width_ == b.width_ &&
           a.grid_h_ == b.grid_h_ && a.grid_w_ == b.grid_w_ && a.control_ == b.control_;
  }

 private:
  struct Tap {
    std::size_t lo;
    float frac;
  };
  static std::vector<Tap> axis_map(std::size_t pixels, std::size_t points);

  std::size_t frames_ = 0, height_ = 0, width_ = 0, grid_h_ = 0, grid_w_ = 0;
  std::vector<float> control_;
  std::vector<Tap> ymap_, xmap_;
};

struct FieldSpec {
  std::size_t grid_h = 4;
  std::size_t grid_w = 4;
  float amplitude = 0.1f;  // fraction of min(H, W)
  int temporal_knots = 4;  // lattice-noise knots per control-point trajectory
  int smooth_window = 1;
  Basis basis = Basis::kLatticeNoise;  // kIid for the flicker ablation

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Each control point of each channel follows its own lattice-noise
/// trajectory (forked from stream), box-smoothed and scaled to
/// [-amplitude*min(H,W), +amplitude*min(H,W)].
DisplacementFieldSeq gen_field_seq(const RandomStream& stream, const FieldSpec& spec,
                                   std::size_t frames, std::size_t height,
                                   std::size_t width);

}  // namespace tempodeg
