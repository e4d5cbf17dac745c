#include "tempodeg/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tempodeg/error.hpp"

namespace tempodeg {

std::string_view to_string(Basis basis) {
  switch (basis) {
    case Basis::kSinusoid:
      return "sinusoid";
    case Basis::kLatticeNoise:
      return "lattice_noise";
    case Basis::kIid:
      return "iid";
  }
  return "unknown";
}

Basis parse_basis(std::string_view name) {
  if (name == "sinusoid") return Basis::kSinusoid;
  if (name == "lattice_noise") return Basis::kLatticeNoise;
  if (name == "iid") return Basis::kIid;
  throw ParameterError("unknown trajectory basis '" + std::string(name) + "'");
}

void check_spec(const TrajectorySpec& spec) {
  if (!(spec.min <= spec.max)) {
    throw ParameterError("trajectory min " + std::to_string(spec.min) +
                         " exceeds max " + std::to_string(spec.max));
  }
  if (spec.smooth_window < 1 || spec.smooth_window % 2 == 0) {
    throw ParameterError("smooth_window must be odd and >= 1, got " +
                         std::to_string(spec.smooth_window));
  }
  if (spec.lattice_points < 2) {
    throw ParameterError("lattice_points must be >= 2, got " +
                         std::to_string(spec.lattice_points));
  }
}

namespace {

void require_frames(std::size_t frames) {
  if (frames == 0) throw ParameterError("trajectory over an empty clip (T == 0)");
}

double smoothstep(double s) { return s * s * (3.0 - 2.0 * s); }

}  // namespace

std::vector<double> unit_sinusoid(double cycles, double phase, std::size_t frames) {
  require_frames(frames);
  std::vector<double> out(frames);
  const double n = static_cast<double>(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    const double arg = 2.0 * std::numbers::pi * cycles * static_cast<double>(t) / n + phase;
    out[t] = 0.5 + 0.5 * std::sin(arg);
  }
  return out;
}

std::vector<double> unit_lattice(std::span<const double> knots, std::size_t frames) {
  require_frames(frames);
  if (knots.size() < 2) throw ParameterError("lattice noise needs at least 2 knots");
  std::vector<double> out(frames);
  if (frames == 1) {
    out[0] = knots[0];
    return out;
  }
  const std::size_t intervals = knots.size() - 1;
  const double scale = static_cast<double>(intervals) / static_cast<double>(frames - 1);
  for (std::size_t t = 0; t < frames; ++t) {
    const double s = static_cast<double>(t) * scale;
    std::size_t k = static_cast<std::size_t>(std::floor(s));
    if (k >= intervals) k = intervals - 1;
    const double w = smoothstep(std::clamp(s - static_cast<double>(k), 0.0, 1.0));
    out[t] = knots[k] * (1.0 - w) + knots[k + 1] * w;
  }
  return out;
}

Trajectory map_to_range(std::span<const double> unit, float min, float max) {
  Trajectory out;
  out.values.reserve(unit.size());
  const double lo = min;
  const double hi = max;
  for (double u : unit) out.values.push_back(float_within(lo + (hi - lo) * u, lo, hi));
  return out;
}

Trajectory gen_sinusoid(const TrajectorySpec& spec, std::size_t frames,
                        RandomStream& stream) {
  check_spec(spec);
  require_frames(frames);
  const double phase = stream.uniform(0.0, 2.0 * std::numbers::pi);
  return map_to_range(unit_sinusoid(spec.cycles, phase, frames), spec.min, spec.max);
}

namespace {

std::vector<double> draw_knots(int count, RandomStream& stream) {
  std::vector<double> knots(static_cast<std::size_t>(count));
  for (double& k : knots) k = stream.uniform();
  return knots;
}

}  // namespace

Trajectory gen_lattice_noise(const TrajectorySpec& spec, std::size_t frames,
                             RandomStream& stream) {
  check_spec(spec);
  require_frames(frames);
  const auto knots = draw_knots(spec.lattice_points, stream);
  return map_to_range(unit_lattice(knots, frames), spec.min, spec.max);
}

Trajectory gen_iid(const TrajectorySpec& spec, std::size_t frames, RandomStream& stream) {
  check_spec(spec);
  require_frames(frames);
  std::vector<double> unit(frames);
  for (double& u : unit) u = stream.uniform();
  return map_to_range(unit, spec.min, spec.max);
}

std::vector<double> box_smooth(std::span<const double> series, int window) {
  if (window < 1 || window % 2 == 0) {
    throw ParameterError("box window must be odd and >= 1, got " + std::to_string(window));
  }
  const auto n = static_cast<std::ptrdiff_t>(series.size());
  if (window > n) {
    throw ParameterError("box window " + std::to_string(window) +
                         " exceeds series length " + std::to_string(n));
  }
  if (window == 1) return {series.begin(), series.end()};
  const std::ptrdiff_t r = window / 2;
  auto reflect = [n](std::ptrdiff_t i) {
    if (i < 0) return -i;
    if (i >= n) return 2 * (n - 1) - i;
    return i;
  };
  std::vector<double> out(series.size());
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    double sum = 0.0;
    for (std::ptrdiff_t j = t - r; j <= t + r; ++j) sum += series[reflect(j)];
    out[t] = sum / static_cast<double>(window);
  }
  return out;
}

int effective_window(int window, std::size_t frames) {
  int w = std::max(1, window);
  if (static_cast<std::size_t>(w) > frames) w = static_cast<int>(frames);
  if (w % 2 == 0) --w;
  return std::max(1, w);
}

Trajectory generate(const TrajectorySpec& spec, std::size_t frames, RandomStream& stream) {
  check_spec(spec);
  require_frames(frames);
  std::vector<double> unit;
  switch (spec.basis) {
    case Basis::kIid:
      return gen_iid(spec, frames, stream);
    case Basis::kSinusoid:
      unit = unit_sinusoid(spec.cycles, stream.uniform(0.0, 2.0 * std::numbers::pi), frames);
      break;
    case Basis::kLatticeNoise:
      unit = unit_lattice(draw_knots(spec.lattice_points, stream), frames);
      break;
  }
  unit = box_smooth(unit, effective_window(spec.smooth_window, frames));
  return map_to_range(unit, spec.min, spec.max);
}

Trajectory generate(const TrajectorySpec& spec, std::size_t frames) {
  RandomStream stream = derive_stream(spec.key);
  return generate(spec, frames, stream);
}

}  // namespace tempodeg
