#pragma once

#include <cstddef>
#include <vector>

#include "tempodeg/clip.hpp"
#include "tempodeg/field.hpp"
#include "tempodeg/line_kernel.hpp"
#include "tempodeg/parallel.hpp"
#include "tempodeg/random.hpp"
#include "tempodeg/resample.hpp"
#include "tempodeg/trajectory.hpp"

// The five clip -> clip degradation operators. Every operator preserves the
// (T, H, W) shape and produces convex combinations of input pixels. All
// randomness is resolved before an operator runs, so per-frame work can be
// spread over an Executor without changing a single output bit.
namespace tempodeg {

struct DropMask {
  std::vector<bool> keep;
  int max_run = 1;

  std::size_t size() const { return keep.size(); }
  std::size_t dropped() const;
  /// Longest run of consecutive dropped frames.
  std::size_t longest_gap() const;
  friend bool operator==(const DropMask&, const DropMask&) = default;
};

/// Spatial: area-down by s_spat and bilinear back up. Temporal: keep frames
/// round(k*s_temp) and rebuild the rest by linear blending between kept
/// neighbours (frames past the last kept one repeat it).
Clip st_downsample(const Clip& clip, double s_spat, double s_temp,
                   const Executor& exec = sequential());

/// Indices round(k*s_temp) below T, k = 0, 1, ...
std::vector<std::size_t> temporal_keep_indices(std::size_t frames, double s_temp);

/// Y_t = a_t X_t + (1 - a_t) X_{t+1}; the last frame passes through.
Clip temporal_morph(const Clip& clip, const Trajectory& alpha,
                    const Executor& exec = sequential());

/// Interior frames dropped with probability p_drop unless that would make a
/// gap longer than max_run. One draw per interior frame regardless.
DropMask sample_drop_mask(RandomStream& stream, std::size_t frames, double p_drop,
                          int max_run);

/// Kept frames pass through; a dropped frame t between kept a < t < b becomes
/// ((b-t) X_a + (t-a) X_b) / (b-a). Endpoints must be kept.
Clip apply_drop(const Clip& clip, const DropMask& mask, const Executor& exec = sequential());

/// Per-frame convolution with make_line_kernel(theta[t], length[t]),
/// clamp-to-edge boundaries.
Clip motion_blur(const Clip& clip, const Trajectory& theta, const Trajectory& length,
                 const Executor& exec = sequential());

/// Convolves one frame with a kernel (clamp-to-edge).
Frame convolve(const Frame& frame, const LineKernel& kernel);

/// Backward warp Y_t(u) = X_t(u + d_t(u)) with bilinear sampling.
Clip grid_warp(const Clip& clip, const DisplacementFieldSeq& fields,
               const Executor& exec = sequential());

/// Warps one frame with field t of the sequence.
Frame warp_frame(const Frame& frame, const DisplacementFieldSeq& fields, std::size_t t);

}  // namespace tempodeg
