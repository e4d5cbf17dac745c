#pragma once

#include <array>
#include <cstddef>

#include "tempodeg/clip.hpp"

namespace tempodeg {

/// Bilinear blend of the four pixels enclosing (x, y). Coordinates are
/// clamped to [0, W-1] x [0, H-1] first.
std::array<float, 3> bilinear_sample(const Frame& frame, double x, double y);

/// Box-filter (pixel-area overlap) resampling, used for decimation.
Frame area_resize(const Frame& frame, std::size_t out_h, std::size_t out_w);

/// Separable bilinear resampling with half-pixel centre alignment and
/// clamp-to-edge.
Frame bilinear_resize(const Frame& frame, std::size_t out_h, std::size_t out_w);

/// Size after spatial decimation by factor: ceil(n / factor), at least 1.
std::size_t decimated_size(std::size_t n, double factor);

/// Area-down to (ceil(H/s), ceil(W/s)) then bilinear-up back to (H, W).
/// factor == 1 returns the frame unchanged.
Frame spatial_degrade(const Frame& frame, double factor);

}  // namespace tempodeg
