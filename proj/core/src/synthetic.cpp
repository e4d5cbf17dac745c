#include "tempodeg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tempodeg/random.hpp"

namespace tempodeg {

namespace {

struct Disc {
  double cx, cy, vx, vy, radius;
  double color[3];
};

struct Octave {
  double kx, ky, speed, phase, weight;
};

struct Scene {
  double phase[3];
  std::vector<Octave> octaves;
  std::vector<Disc> discs;
};

Scene make_scene(const ClipShape& shape, std::uint64_t seed) {
  RandomStream rs = derive_stream(seed, 0, "synthetic");
  Scene s;
  for (double& p : s.phase) p = rs.uniform(0.0, 2.0 * std::numbers::pi);
  const double scale = static_cast<double>(std::min(shape.height, shape.width));
  // Octaves from ~1 to ~16 cycles across the short side with 1/f weights,
  // so errors keep growing with displacement the way natural footage does.
  double total = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double cycles = std::ldexp(1.0, k) * rs.uniform(0.8, 1.2);
    const double dir = rs.uniform(0.0, 2.0 * std::numbers::pi);
    Octave o;
    o.kx = cycles * std::cos(dir) / scale;
    o.ky = cycles * std::sin(dir) / scale;
    o.speed = rs.uniform(0.01, 0.04);
    o.phase = rs.uniform(0.0, 2.0 * std::numbers::pi);
    o.weight = 1.0 / std::ldexp(1.0, k);
    total += o.weight;
    s.octaves.push_back(o);
  }
  for (Octave& o : s.octaves) o.weight /= total;
  const int count = rs.uniform_int(4, 7);
  for (int i = 0; i < count; ++i) {
    Disc d;
    d.cx = rs.uniform(0.0, static_cast<double>(shape.width));
    d.cy = rs.uniform(0.0, static_cast<double>(shape.height));
    d.vx = rs.uniform(-0.012, 0.012) * scale;
    d.vy = rs.uniform(-0.008, 0.008) * scale;
    d.radius = rs.uniform(0.05, 0.14) * scale;
    for (double& c : d.color) c = rs.uniform(0.05, 0.95);
    s.discs.push_back(d);
  }
  return s;
}

}  // namespace

Clip make_synthetic_clip(const ClipShape& shape, std::uint64_t seed, const Executor& exec) {
  const Scene scene = make_scene(shape, seed);
  Clip clip = make_clip(shape);
  const std::uint64_t grain_key = derive_stream(seed, 0, "synthetic_grain").key();
  const double h = static_cast<double>(shape.height);
  const double w = static_cast<double>(shape.width);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  exec.parallel_for(shape.frames, [&](std::size_t t) {
    Frame& f = clip[t];
    const double tt = static_cast<double>(t);
    for (std::size_t y = 0; y < shape.height; ++y) {
      const double fy = static_cast<double>(y);
      for (std::size_t x = 0; x < shape.width; ++x) {
        const double fx = static_cast<double>(x);
        const double u = fx / w;
        const double v = fy / h;
        double texture = 0.5;
        for (const Octave& o : scene.octaves) {
          texture += 0.5 * o.weight *
                     std::sin(kTwoPi * (o.kx * fx + o.ky * fy + o.speed * tt) + o.phase);
        }
        double rgb[3];
        for (int c = 0; c < 3; ++c) {
          const double gradient =
              0.5 + 0.35 * std::sin(kTwoPi * (0.6 * u + 0.4 * v) + scene.phase[c] + 0.03 * tt);
          rgb[c] = 0.4 * gradient + 0.6 * texture;
        }
        for (const Disc& d : scene.discs) {
          const double dx = fx - (d.cx + d.vx * tt);
          const double dy = fy - (d.cy + d.vy * tt);
          if (dx * dx + dy * dy <= d.radius * d.radius) {
            // Concentric rings give the discs internal edges.
            const double ring = 0.85 + 0.15 * std::cos(std::sqrt(dx * dx + dy * dy) * 0.6);
            for (int c = 0; c < 3; ++c) rgb[c] = d.color[c] * ring;
          }
        }
        // Static grain: fixed per pixel so it adds texture without flicker.
        const std::uint64_t g = mix64(grain_key ^ (y * shape.width + x));
        const double grain = (static_cast<double>(g >> 11) * 0x1.0p-53 - 0.5) * 0.06;
        for (int c = 0; c < 3; ++c) {
          f.at(y, x, c) = static_cast<float>(std::clamp(rgb[c] + grain, 0.0, 1.0));
        }
      }
    }
  });
  return clip;
}

}  // namespace tempodeg
