#pragma once

#include <string>
#include <vector>

#include "tempodeg/clip.hpp"
#include "tempodeg/parallel.hpp"

namespace tempodeg {

inline constexpr double kPsnrCap = 99.0;

struct MetricReport {
  std::string metric;  // "psnr" or "ssim"
  std::string units;   // "dB" or "" (unitless)
  std::vector<double> per_frame;
  double mean = 0.0;
};

/// Mean squared error over every sample of two equally sized frames.
double frame_mse(const Frame& a, const Frame& b);
/// 10 log10(1 / MSE), capped at kPsnrCap when the frames are identical.
double frame_psnr(const Frame& ref, const Frame& test);
/// Single-scale SSIM of the Rec.601 luma planes, 11x11 Gaussian window
/// (sigma 1.5), averaged over every window that fits inside the frame.
double frame_ssim(const Frame& ref, const Frame& test);

/// Throw ShapeError when the clip shapes differ.
MetricReport psnr(const Clip& ref, const Clip& test, const Executor& exec = sequential());
/// Also throws ParameterError when frames are smaller than the window.
MetricReport ssim(const Clip& ref, const Clip& test, const Executor& exec = sequential());

/// (1/(T-1)) * sum_t MSE(X_{t+1}, X_t). Throws ParameterError when T < 2.
double flicker_energy(const Clip& clip, const Executor& exec = sequential());

}  // namespace tempodeg
