#include "tempodeg/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "tempodeg/error.hpp"

namespace tempodeg {

namespace {

constexpr int kWindow = 11;
constexpr int kHalf = kWindow / 2;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

std::array<double, kWindow> gaussian_window() {
  std::array<double, kWindow> w{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kHalf;
    w[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

std::vector<double> luma(const Frame& f) {
  std::vector<double> y(f.height() * f.width());
  const auto d = f.data();
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = 0.299 * d[i * 3] + 0.587 * d[i * 3 + 1] + 0.114 * d[i * 3 + 2];
  }
  return y;
}

// Valid-mode separable Gaussian filter: (h-10) x (w-10) output.
std::vector<double> filter_valid(const std::vector<double>& src, std::size_t h, std::size_t w,
                                 const std::array<double, kWindow>& g) {
  const std::size_t ow = w - kWindow + 1;
  const std::size_t oh = h - kWindow + 1;
  std::vector<double> tmp(h * ow);
  for (std::size_t y = 0; y < h; ++y) {
    const double* row = &src[y * w];
    for (std::size_t x = 0; x < ow; ++x) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += g[k] * row[x + k];
      tmp[y * ow + x] = s;
    }
  }
  std::vector<double> out(oh * ow, 0.0);
  for (std::size_t y = 0; y < oh; ++y) {
    double* orow = &out[y * ow];
    for (int k = 0; k < kWindow; ++k) {
      const double* trow = &tmp[(y + k) * ow];
      const double gk = g[k];
      for (std::size_t x = 0; x < ow; ++x) orow[x] += gk * trow[x];
    }
  }
  return out;
}

void check_pair(const Clip& ref, const Clip& test) {
  const ClipShape a = shape_of(ref);
  const ClipShape b = shape_of(test);
  if (!(a == b)) {
    throw ShapeError("metric inputs differ in shape: " + to_string(a) + " vs " + to_string(b));
  }
}

MetricReport make_report(std::string metric, std::string units, std::vector<double> values) {
  MetricReport r{std::move(metric), std::move(units), std::move(values), 0.0};
  r.mean = std::accumulate(r.per_frame.begin(), r.per_frame.end(), 0.0) /
           static_cast<double>(r.per_frame.size());
  return r;
}

}  // namespace

double frame_mse(const Frame& a, const Frame& b) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw ShapeError("frame sizes differ");
  }
  const auto da = a.data();
  const auto db = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = static_cast<double>(da[i]) - static_cast<double>(db[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(da.size());
}

double frame_psnr(const Frame& ref, const Frame& test) {
  const double mse = frame_mse(ref, test);
  if (mse == 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

double frame_ssim(const Frame& ref, const Frame& test) {
  if (ref.height() != test.height() || ref.width() != test.width()) {
    throw ShapeError("frame sizes differ");
  }
  const std::size_t h = ref.height();
  const std::size_t w = ref.width();
  if (h < static_cast<std::size_t>(kWindow) || w < static_cast<std::size_t>(kWindow)) {
    throw ParameterError("SSIM needs frames of at least 11x11");
  }
  static const std::array<double, kWindow> g = gaussian_window();
  const std::vector<double> x = luma(ref);
  const std::vector<double> y = luma(test);
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, h, w, g);
  const auto my = filter_valid(y, h, w, g);
  const auto sxx = filter_valid(xx, h, w, g);
  const auto syy = filter_valid(yy, h, w, g);
  const auto sxy = filter_valid(xy, h, w, g);
  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double mux = mx[i];
    const double muy = my[i];
    const double vx = sxx[i] - mux * mux;
    const double vy = syy[i] - muy * muy;
    const double cov = sxy[i] - mux * muy;
    const double num = (2.0 * mux * muy + kC1) * (2.0 * cov + kC2);
    const double den = (mux * mux + muy * muy + kC1) * (vx + vy + kC2);
    total += num / den;
  }
  return total / static_cast<double>(mx.size());
}

MetricReport psnr(const Clip& ref, const Clip& test, const Executor& exec) {
  check_pair(ref, test);
  std::vector<double> values(ref.size());
  exec.parallel_for(ref.size(), [&](std::size_t t) { values[t] = frame_psnr(ref[t], test[t]); });
  return make_report("psnr", "dB", std::move(values));
}

MetricReport ssim(const Clip& ref, const Clip& test, const Executor& exec) {
  check_pair(ref, test);
  std::vector<double> values(ref.size());
  exec.parallel_for(ref.size(), [&](std::size_t t) { values[t] = frame_ssim(ref[t], test[t]); });
  return make_report("ssim", "", std::move(values));
}

double flicker_energy(const Clip& clip, const Executor& exec) {
  shape_of(clip);
  if (clip.size() < 2) throw ParameterError("flicker energy needs at least 2 frames");
  std::vector<double> diffs(clip.size() - 1);
  exec.parallel_for(diffs.size(),
                    [&](std::size_t t) { diffs[t] = frame_mse(clip[t + 1], clip[t]); });
  return std::accumulate(diffs.begin(), diffs.end(), 0.0) / static_cast<double>(diffs.size());
}

}  // namespace tempodeg
