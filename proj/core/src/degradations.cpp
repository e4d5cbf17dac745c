#include "tempodeg/degradations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tempodeg/error.hpp"

namespace tempodeg {

namespace {

void clamp01(std::span<float> data) {
  for (float& v : data) v = std::clamp(v, 0.0f, 1.0f);
}

void require_length(std::size_t got, std::size_t frames, const char* what) {
  if (got != frames) {
    throw ParameterError(std::string(what) + " has " + std::to_string(got) +
                         " entries for a clip of " + std::to_string(frames) + " frames");
  }
}

// out = wa*a + wb*b, clamped.
Frame blend(const Frame& a, float wa, const Frame& b, float wb) {
  Frame out(a.height(), a.width());
  auto pa = a.data();
  auto pb = b.data();
  auto po = out.data();
  for (std::size_t i = 0; i < po.size(); ++i) po[i] = wa * pa[i] + wb * pb[i];
  clamp01(po);
  return out;
}

// Copies kept frames and rebuilds the others from their kept neighbours.
// keep[0] must be true.
Clip reconstruct_from_kept(const Clip& clip, const std::vector<bool>& keep,
                           const Executor& exec) {
  const std::size_t n = clip.size();
  std::vector<std::ptrdiff_t> prev(n), next(n);
  std::ptrdiff_t last = -1;
  for (std::size_t t = 0; t < n; ++t) {
    if (keep[t]) last = static_cast<std::ptrdiff_t>(t);
    prev[t] = last;
  }
  last = -1;
  for (std::size_t t = n; t-- > 0;) {
    if (keep[t]) last = static_cast<std::ptrdiff_t>(t);
    next[t] = last;
  }

  std::vector<Frame> out(n);
  exec.parallel_for(n, [&](std::size_t t) {
    if (keep[t]) {
      out[t] = clip[t];
      return;
    }
    const std::ptrdiff_t a = prev[t];
    const std::ptrdiff_t b = next[t];
    if (b < 0) {
      out[t] = clip[static_cast<std::size_t>(a)];
      return;
    }
    const auto ti = static_cast<std::ptrdiff_t>(t);
    const double span = static_cast<double>(b - a);
    const auto wa = static_cast<float>(static_cast<double>(b - ti) / span);
    const auto wb = static_cast<float>(static_cast<double>(ti - a) / span);
    out[t] = blend(clip[static_cast<std::size_t>(a)], wa, clip[static_cast<std::size_t>(b)], wb);
  });
  return Clip(std::move(out));
}

}  // namespace

std::size_t DropMask::dropped() const {
  return static_cast<std::size_t>(std::count(keep.begin(), keep.end(), false));
}

std::size_t DropMask::longest_gap() const {
  std::size_t best = 0, run = 0;
  for (bool k : keep) {
    run = k ? 0 : run + 1;
    best = std::max(best, run);
  }
  return best;
}

std::vector<std::size_t> temporal_keep_indices(std::size_t frames, double s_temp) {
  if (!(s_temp >= 1.0)) {
    throw ParameterError("temporal factor must be >= 1, got " + std::to_string(s_temp));
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = 0;; ++k) {
    const double pos = std::round(static_cast<double>(k) * s_temp);
    if (pos >= static_cast<double>(frames)) break;
    idx.push_back(static_cast<std::size_t>(pos));
  }
  return idx;
}

Clip st_downsample(const Clip& clip, double s_spat, double s_temp, const Executor& exec) {
  if (!(s_spat >= 1.0) || !(s_temp >= 1.0)) {
    throw ParameterError("downsampling factors must be >= 1 (got spatial " +
                         std::to_string(s_spat) + ", temporal " + std::to_string(s_temp) +
                         ")");
  }
  const ClipShape shape = shape_of(clip);
  Clip spatial;
  const Clip* src = &clip;
  if (s_spat != 1.0) {
    std::vector<Frame> frames(shape.frames);
    exec.parallel_for(shape.frames, [&](std::size_t t) {
      frames[t] = spatial_degrade(clip[t], s_spat);
      clamp01(frames[t].data());
    });
    spatial = Clip(std::move(frames));
    src = &spatial;
  }
  if (s_temp == 1.0) {
    if (src == &clip) return clip;
    return spatial;
  }

  std::vector<bool> keep(shape.frames, false);
  for (std::size_t i : temporal_keep_indices(shape.frames, s_temp)) keep[i] = true;
  return reconstruct_from_kept(*src, keep, exec);
}

Clip temporal_morph(const Clip& clip, const Trajectory& alpha, const Executor& exec) {
  const ClipShape shape = shape_of(clip);
  require_length(alpha.size(), shape.frames, "alpha trajectory");
  for (float a : alpha.values) {
    if (!(a >= 0.0f && a <= 1.0f)) {
      throw ParameterError("morph alpha " + std::to_string(a) + " outside [0,1]");
    }
  }
  std::vector<Frame> out(shape.frames);
  exec.parallel_for(shape.frames, [&](std::size_t t) {
    if (t + 1 == shape.frames) {
      out[t] = clip[t];
      return;
    }
    const float a = alpha[t];
    out[t] = blend(clip[t], a, clip[t + 1], 1.0f - a);
  });
  return Clip(std::move(out));
}

DropMask sample_drop_mask(RandomStream& stream, std::size_t frames, double p_drop,
                          int max_run) {
  if (frames < 2) throw ParameterError("frame dropping needs T >= 2");
  if (!(p_drop >= 0.0 && p_drop < 1.0)) {
    throw ParameterError("p_drop must be in [0,1), got " + std::to_string(p_drop));
  }
  if (max_run < 1) throw ParameterError("max_run must be >= 1");
  DropMask mask;
  mask.max_run = max_run;
  mask.keep.assign(frames, true);
  int run = 0;
  for (std::size_t t = 1; t + 1 < frames; ++t) {
    const double u = stream.uniform();
    if (u < p_drop && run < max_run) {
      mask.keep[t] = false;
      ++run;
    } else {
      run = 0;
    }
  }
  return mask;
}

Clip apply_drop(const Clip& clip, const DropMask& mask, const Executor& exec) {
  const ClipShape shape = shape_of(clip);
  require_length(mask.size(), shape.frames, "drop mask");
  if (!mask.keep.front() || !mask.keep.back()) {
    throw ParameterError("drop mask must keep the first and last frame");
  }
  return reconstruct_from_kept(clip, mask.keep, exec);
}

Frame convolve(const Frame& frame, const LineKernel& kernel) {
  if (kernel.taps.size() == 1 && kernel.taps[0].dx == 0 && kernel.taps[0].dy == 0 &&
      kernel.taps[0].weight == 1.0f) {
    return frame;
  }
  const std::size_t h = frame.height();
  const std::size_t w = frame.width();
  const auto r = static_cast<std::size_t>(kernel.radius());
  const std::size_t pw = w + 2 * r;
  const std::size_t pstride = pw * kChannels;

  // Rows padded horizontally by r replicated edge pixels; vertical clamping
  // is done by row index.
  std::vector<float> padded(h * pstride);
  for (std::size_t y = 0; y < h; ++y) {
    auto src = frame.row(y);
    float* dst = &padded[y * pstride];
    for (std::size_t x = 0; x < r; ++x) {
      std::copy_n(&src[0], kChannels, dst + x * kChannels);
      std::copy_n(&src[(w - 1) * kChannels], kChannels, dst + (r + w + x) * kChannels);
    }
    std::copy(src.begin(), src.end(), dst + r * kChannels);
  }

  Frame out(h, w);
  const std::size_t n = w * kChannels;
  const auto hmax = static_cast<std::ptrdiff_t>(h) - 1;
  for (std::size_t y = 0; y < h; ++y) {
    float* __restrict dst = out.row(y).data();
    for (const LineKernel::Tap& tap : kernel.taps) {
      const std::ptrdiff_t sy =
          std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(y) + tap.dy, 0, hmax);
      const float* __restrict src =
          &padded[static_cast<std::size_t>(sy) * pstride +
                  static_cast<std::size_t>(static_cast<std::ptrdiff_t>(r) + tap.dx) * kChannels];
      const float wt = tap.weight;
      for (std::size_t q = 0; q < n; ++q) dst[q] += wt * src[q];
    }
  }
  clamp01(out.data());
  return out;
}

Clip motion_blur(const Clip& clip, const Trajectory& theta, const Trajectory& length,
                 const Executor& exec) {
  const ClipShape shape = shape_of(clip);
  require_length(theta.size(), shape.frames, "theta trajectory");
  require_length(length.size(), shape.frames, "length trajectory");
  std::vector<LineKernel> kernels;
  kernels.reserve(shape.frames);
  for (std::size_t t = 0; t < shape.frames; ++t) {
    kernels.push_back(make_line_kernel(theta[t], length[t]));
  }
  std::vector<Frame> out(shape.frames);
  exec.parallel_for(shape.frames,
                    [&](std::size_t t) { out[t] = convolve(clip[t], kernels[t]); });
  return Clip(std::move(out));
}

Frame warp_frame(const Frame& frame, const DisplacementFieldSeq& fields, std::size_t t) {
  const std::size_t h = frame.height();
  const std::size_t w = frame.width();
  Frame out(h, w);
  std::vector<float> d(2 * w);
  const double max_x = static_cast<double>(w - 1);
  const double max_y = static_cast<double>(h - 1);
  const float* base = frame.data().data();
  const std::size_t stride = frame.row_stride();
  for (std::size_t y = 0; y < h; ++y) {
    fields.sample_row(t, y, d);
    float* dst = out.row(y).data();
    for (std::size_t x = 0; x < w; ++x) {
      // Same arithmetic as bilinear_sample(), inlined.
      const double sx = std::clamp(static_cast<double>(x) + d[2 * x], 0.0, max_x);
      const double sy = std::clamp(static_cast<double>(y) + d[2 * x + 1], 0.0, max_y);
      const double fx0 = std::floor(sx);
      const double fy0 = std::floor(sy);
      const auto x0 = static_cast<std::size_t>(fx0);
      const auto y0 = static_cast<std::size_t>(fy0);
      const std::size_t x1 = std::min(x0 + 1, w - 1);
      const std::size_t y1 = std::min(y0 + 1, h - 1);
      const auto ax = static_cast<float>(sx - fx0);
      const auto ay = static_cast<float>(sy - fy0);
      const float* p00 = base + y0 * stride + x0 * kChannels;
      const float* p01 = base + y0 * stride + x1 * kChannels;
      const float* p10 = base + y1 * stride + x0 * kChannels;
      const float* p11 = base + y1 * stride + x1 * kChannels;
      for (std::size_t c = 0; c < kChannels; ++c) {
        const float top = p00[c] * (1.0f - ax) + p01[c] * ax;
        const float bottom = p10[c] * (1.0f - ax) + p11[c] * ax;
        dst[x * kChannels + c] = std::clamp(top * (1.0f - ay) + bottom * ay, 0.0f, 1.0f);
      }
    }
  }
  return out;
}

Clip grid_warp(const Clip& clip, const DisplacementFieldSeq& fields, const Executor& exec) {
  const ClipShape shape = shape_of(clip);
  if (fields.frames() != shape.frames || fields.height() != shape.height ||
      fields.width() != shape.width) {
    throw ShapeError("displacement fields are " + std::to_string(fields.frames()) + "x" +
                     std::to_string(fields.height()) + "x" + std::to_string(fields.width()) +
                     " but the clip is " + to_string(shape));
  }
  if (fields.is_zero()) return clip;
  std::vector<Frame> out(shape.frames);
  exec.parallel_for(shape.frames,
                    [&](std::size_t t) { out[t] = warp_frame(clip[t], fields, t); });
  return Clip(std::move(out));
}

}  // namespace tempodeg
