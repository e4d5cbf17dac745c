#include "tempodeg/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tempodeg/error.hpp"

namespace tempodeg {

std::array<float, 3> bilinear_sample(const Frame& frame, double x, double y) {
  const double max_x = static_cast<double>(frame.width() - 1);
  const double max_y = static_cast<double>(frame.height() - 1);
  x = std::clamp(x, 0.0, max_x);
  y = std::clamp(y, 0.0, max_y);
  const double fx0 = std::floor(x);
  const double fy0 = std::floor(y);
  const auto x0 = static_cast<std::size_t>(fx0);
  const auto y0 = static_cast<std::size_t>(fy0);
  const std::size_t x1 = std::min(x0 + 1, frame.width() - 1);
  const std::size_t y1 = std::min(y0 + 1, frame.height() - 1);
  const auto ax = static_cast<float>(x - fx0);
  const auto ay = static_cast<float>(y - fy0);
  std::array<float, 3> out{};
  for (std::size_t c = 0; c < kChannels; ++c) {
    const float top = frame.at(y0, x0, c) * (1.0f - ax) + frame.at(y0, x1, c) * ax;
    const float bottom = frame.at(y1, x0, c) * (1.0f - ax) + frame.at(y1, x1, c) * ax;
    out[c] = std::clamp(top * (1.0f - ay) + bottom * ay, 0.0f, 1.0f);
  }
  return out;
}

namespace {

// Sparse 1-D resampling matrix: output i reads count[i] source samples
// starting at first[i] with weights weights[offset[i] ...].
struct AxisWeights {
  std::vector<std::size_t> first;
  std::vector<std::size_t> count;
  std::vector<std::size_t> offset;
  std::vector<float> weights;
};

AxisWeights area_weights(std::size_t in, std::size_t out) {
  AxisWeights aw;
  const double ratio = static_cast<double>(in) / static_cast<double>(out);
  for (std::size_t i = 0; i < out; ++i) {
    const double lo = static_cast<double>(i) * ratio;
    const double hi = std::min(static_cast<double>(i + 1) * ratio, static_cast<double>(in));
    const auto k0 = static_cast<std::size_t>(std::floor(lo));
    const auto k1 = std::min(in, static_cast<std::size_t>(std::ceil(hi)));
    std::vector<double> w;
    double total = 0.0;
    for (std::size_t k = k0; k < k1; ++k) {
      const double ov = std::min(static_cast<double>(k + 1), hi) -
                        std::max(static_cast<double>(k), lo);
      w.push_back(std::max(ov, 0.0));
      total += w.back();
    }
    aw.first.push_back(k0);
    aw.count.push_back(w.size());
    aw.offset.push_back(aw.weights.size());
    for (double v : w) aw.weights.push_back(static_cast<float>(v / total));
  }
  return aw;
}

AxisWeights bilinear_weights(std::size_t in, std::size_t out) {
  AxisWeights aw;
  const double ratio = static_cast<double>(in) / static_cast<double>(out);
  for (std::size_t i = 0; i < out; ++i) {
    double src = (static_cast<double>(i) + 0.5) * ratio - 0.5;
    src = std::clamp(src, 0.0, static_cast<double>(in - 1));
    const auto k0 = static_cast<std::size_t>(std::floor(src));
    const auto frac = static_cast<float>(src - static_cast<double>(k0));
    aw.first.push_back(k0);
    aw.offset.push_back(aw.weights.size());
    if (frac == 0.0f || k0 + 1 >= in) {
      aw.count.push_back(1);
      aw.weights.push_back(1.0f);
    } else {
      aw.count.push_back(2);
      aw.weights.push_back(1.0f - frac);
      aw.weights.push_back(frac);
    }
  }
  return aw;
}

// Horizontal pass then vertical pass.
Frame separable(const Frame& src, const AxisWeights& wy, const AxisWeights& wx,
                std::size_t out_h, std::size_t out_w) {
  const std::size_t in_h = src.height();
  std::vector<float> tmp(in_h * out_w * kChannels, 0.0f);
  for (std::size_t y = 0; y < in_h; ++y) {
    auto row = src.row(y);
    float* dst = &tmp[y * out_w * kChannels];
    for (std::size_t j = 0; j < out_w; ++j) {
      float acc[3] = {0.0f, 0.0f, 0.0f};
      const float* w = &wx.weights[wx.offset[j]];
      const float* s = &row[wx.first[j] * kChannels];
      for (std::size_t k = 0; k < wx.count[j]; ++k) {
        acc[0] += w[k] * s[k * 3 + 0];
        acc[1] += w[k] * s[k * 3 + 1];
        acc[2] += w[k] * s[k * 3 + 2];
      }
      dst[j * 3 + 0] = acc[0];
      dst[j * 3 + 1] = acc[1];
      dst[j * 3 + 2] = acc[2];
    }
  }
  Frame out(out_h, out_w);
  const std::size_t stride = out_w * kChannels;
  for (std::size_t i = 0; i < out_h; ++i) {
    auto dst = out.row(i);
    const float* w = &wy.weights[wy.offset[i]];
    for (std::size_t k = 0; k < wy.count[i]; ++k) {
      const float* s = &tmp[(wy.first[i] + k) * stride];
      const float wk = w[k];
      for (std::size_t q = 0; q < stride; ++q) dst[q] += wk * s[q];
    }
  }
  return out;
}

void require_nonempty(const Frame& frame, std::size_t out_h, std::size_t out_w) {
  if (frame.height() == 0 || frame.width() == 0 || out_h == 0 || out_w == 0) {
    throw ShapeError("cannot resample an empty frame");
  }
}

}  // namespace

Frame area_resize(const Frame& frame, std::size_t out_h, std::size_t out_w) {
  require_nonempty(frame, out_h, out_w);
  return separable(frame, area_weights(frame.height(), out_h),
                   area_weights(frame.width(), out_w), out_h, out_w);
}

Frame bilinear_resize(const Frame& frame, std::size_t out_h, std::size_t out_w) {
  require_nonempty(frame, out_h, out_w);
  return separable(frame, bilinear_weights(frame.height(), out_h),
                   bilinear_weights(frame.width(), out_w), out_h, out_w);
}

std::size_t decimated_size(std::size_t n, double factor) {
  const auto m = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / factor));
  return std::max<std::size_t>(1, m);
}

Frame spatial_degrade(const Frame& frame, double factor) {
  if (!(factor >= 1.0)) {
    throw ParameterError("spatial factor must be >= 1, got " + std::to_string(factor));
  }
  if (factor == 1.0) return frame;
  const std::size_t h = decimated_size(frame.height(), factor);
  const std::size_t w = decimated_size(frame.width(), factor);
  return bilinear_resize(area_resize(frame, h, w), frame.height(), frame.width());
}

}  // namespace tempodeg
