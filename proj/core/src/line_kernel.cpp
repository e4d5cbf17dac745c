#include "tempodeg/line_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "tempodeg/error.hpp"

namespace tempodeg {

namespace {

// Exact unit vector on the axes so axis-aligned kernels have no stray taps.
std::pair<double, double> direction(double theta_deg) {
  if (theta_deg == 0.0) return {1.0, 0.0};
  if (theta_deg == 90.0) return {0.0, 1.0};
  if (theta_deg == 180.0) return {-1.0, 0.0};
  if (theta_deg == 270.0) return {0.0, -1.0};
  const double rad = theta_deg * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

}  // namespace

int LineKernel::radius() const {
  int r = 0;
  for (const Tap& t : taps) r = std::max({r, std::abs(t.dx), std::abs(t.dy)});
  return r;
}

LineKernel make_line_kernel(double theta_deg, double length) {
  if (!(length >= 1.0)) {
    throw ParameterError("line kernel length must be >= 1, got " + std::to_string(length));
  }
  double theta = std::fmod(theta_deg, 360.0);
  if (theta < 0.0) theta += 360.0;
  if (theta >= 360.0) theta = 0.0;

  const auto samples = static_cast<int>(std::ceil(length));
  const auto [ux, uy] = direction(theta);
  const double centre = 0.5 * static_cast<double>(samples - 1);

  // std::map keeps the tap order deterministic (row-major by offset).
  std::map<std::pair<int, int>, double> acc;
  for (int k = 0; k < samples; ++k) {
    const double s = static_cast<double>(k) - centre;
    const double px = snap(s * ux);
    const double py = snap(s * uy);
    const double x0 = std::floor(px);
    const double y0 = std::floor(py);
    const double fx = px - x0;
    const double fy = py - y0;
    const int ix = static_cast<int>(x0);
    const int iy = static_cast<int>(y0);
    const double w[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
    const int ox[4] = {0, 1, 0, 1};
    const int oy[4] = {0, 0, 1, 1};
    for (int q = 0; q < 4; ++q) {
      if (w[q] > 0.0) acc[{iy + oy[q], ix + ox[q]}] += w[q];
    }
  }

  double total = 0.0;
  for (const auto& [_, w] : acc) total += w;

  LineKernel kernel;
  kernel.theta_deg = theta;
  kernel.length = length;
  kernel.taps.reserve(acc.size());
  for (const auto& [pos, w] : acc) {
    kernel.taps.push_back({pos.second, pos.first, static_cast<float>(w / total)});
  }
  return kernel;
}

}  // namespace tempodeg
