#pragma once

// Slow, direct re-derivations of the library's operators, written from the
// operator definitions rather than from the optimised code. Tests compare the
// library against these.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tempodeg/clip.hpp"
#include "tempodeg/field.hpp"

namespace oracle {

using tempodeg::Clip;
using tempodeg::Frame;

/// Clip with independent uniform samples in [0,1] from a test-only RNG.
Clip random_clip(std::uint64_t seed, std::size_t frames, std::size_t height,
                 std::size_t width);

/// Every sample set to v.
Clip constant_clip(std::size_t frames, std::size_t height, std::size_t width, float v);

double smoothstep(double s);

/// Mean over an odd window with mirror padding x[-k] = x[k].
std::vector<double> box_smooth(std::span<const double> x, int window);

/// Motion blur by direct summation: for each output pixel, average ceil(len)
/// bilinear samples spaced 1 px apart along the line through the pixel,
/// with sample neighbours clamped to the frame edge.
Frame motion_blur_frame(const Frame& f, double theta_deg, double len);

/// Displacement of pixel (x, y) at frame t: bilinear interpolation of the
/// control lattice whose point (i, j) sits at (j (W-1)/(gw-1), i (H-1)/(gh-1)).
std::array<double, 2> displacement(const tempodeg::DisplacementFieldSeq& f, std::size_t t,
                                   std::size_t y, std::size_t x);

/// Backward warp with bilinear sampling at clamped coordinates.
Frame warp_frame(const Frame& f, const tempodeg::DisplacementFieldSeq& fields, std::size_t t);

double mse(const Frame& a, const Frame& b);

/// SSIM by explicit 11x11 weighted sums at every valid window position.
double ssim_frame(const Frame& a, const Frame& b);

/// Largest absolute sample difference.
double max_abs_diff(const Clip& a, const Clip& b);

}  // namespace oracle
