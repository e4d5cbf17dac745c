#pragma once

#include <vector>

namespace tempodeg {

/// Oriented line kernel for directional motion blur. Taps are offsets from
/// the output pixel (x right, y down); weights sum to 1.
struct LineKernel {
  struct Tap {
    int dx;
    int dy;
    float weight;
  };
  std::vector<Tap> taps;
  double theta_deg = 0.0;  // reduced to [0, 360)
  double length = 1.0;

  /// Largest |dx| or |dy| over all taps.
  int radius() const;
};

/// ceil(length) samples spaced 1 px apart along (cos theta, sin theta),
/// centred on the origin. Each sample spreads unit weight over its bilinear
/// footprint; coincident taps are merged and the total normalised to 1.
/// Throws ParameterError for length < 1.
LineKernel make_line_kernel(double theta_deg, double length);

}  // namespace tempodeg
