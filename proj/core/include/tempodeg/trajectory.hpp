#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tempodeg/random.hpp"

namespace tempodeg {

enum class Basis {
  kSinusoid,
  kLatticeNoise,
  // Independent per-frame draws. Only used as the flicker ablation baseline.
  kIid,
};

std::string_view to_string(Basis basis);
/// Throws ParameterError on an unknown name.
Basis parse_basis(std::string_view name);

struct TrajectorySpec {
  Basis basis = Basis::kSinusoid;
  float min = 0.0f;
  float max = 1.0f;
  float cycles = 1.0f;     // sinusoid only: cycles per clip
  int lattice_points = 4;  // lattice noise only: knot count
  int smooth_window = 1;   // odd box-filter width
  StreamKey key;

  friend bool operator==(const TrajectorySpec&, const TrajectorySpec&) = default;
};

/// Throws ParameterError when min > max, the window is even or < 1, or
/// lattice_points < 2.
void check_spec(const TrajectorySpec& spec);

/// Per-frame parameter series; every value lies in [spec.min, spec.max].
struct Trajectory {
  std::vector<float> values;

  std::size_t size() const { return values.size(); }
  float operator[](std::size_t t) const { return values[t]; }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Unit-interval series before the affine map to [min, max].
std::vector<double> unit_sinusoid(double cycles, double phase, std::size_t frames);
/// Knots placed at equispaced positions over [0, T-1], blended with the
/// smoothstep weight 3s^2 - 2s^3.
std::vector<double> unit_lattice(std::span<const double> knots, std::size_t frames);

/// min + (max-min)*u, rounded into [min, max] as floats.
Trajectory map_to_range(std::span<const double> unit, float min, float max);

/// Raw sinusoid: one phase drawn from the stream in [0, 2*pi).
Trajectory gen_sinusoid(const TrajectorySpec& spec, std::size_t frames,
                        RandomStream& stream);
/// Raw lattice noise: spec.lattice_points knots drawn uniformly from [0,1].
Trajectory gen_lattice_noise(const TrajectorySpec& spec, std::size_t frames,
                             RandomStream& stream);
/// One independent uniform draw per frame.
Trajectory gen_iid(const TrajectorySpec& spec, std::size_t frames, RandomStream& stream);

/// Moving average with mirror padding (x[-1] = x[1]). Length preserved.
/// Throws ParameterError for an even window or window > series length.
std::vector<double> box_smooth(std::span<const double> series, int window);

/// Largest odd window <= min(window, frames).
int effective_window(int window, std::size_t frames);

/// Full pipeline for a spec: derive the stream from spec.key, draw the basis
/// series, box-smooth it with the effective window (not for kIid) and map it
/// to [min, max].
Trajectory generate(const TrajectorySpec& spec, std::size_t frames);
Trajectory generate(const TrajectorySpec& spec, std::size_t frames, RandomStream& stream);

}  // namespace tempodeg
