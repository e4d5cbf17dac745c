#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "oracles.hpp"
#include "tempodeg/degradations.hpp"
#include "tempodeg/error.hpp"

using namespace tempodeg;

namespace {

Clip per_frame_constants(const std::vector<float>& values, std::size_t h = 3, std::size_t w = 4) {
  std::vector<Frame> frames;
  for (float v : values) frames.emplace_back(h, w, v);
  return Clip(std::move(frames));
}

Trajectory constant_traj(std::size_t n, float v) { return Trajectory{std::vector<float>(n, v)}; }

// One-row clip whose row holds the given gray values.
Clip gray_row(const std::vector<float>& row) {
  Frame f(1, row.size());
  for (std::size_t x = 0; x < row.size(); ++x) {
    for (std::size_t c = 0; c < 3; ++c) f.at(0, x, c) = row[x];
  }
  return Clip(std::vector<Frame>{f});
}

void expect_frame_constant(const Frame& f, float v, double tol = 1e-6) {
  for (float s : f.data()) ASSERT_NEAR(s, v, tol);
}

void expect_in_unit_range(const Clip& c) {
  for (const Frame& f : c.frames()) {
    for (float s : f.data()) {
      ASSERT_GE(s, 0.0f);
      ASSERT_LE(s, 1.0f);
    }
  }
}

}  // namespace

TEST(StDownsample, UnitFactorsAreBitIdentical) {
  const Clip c = oracle::random_clip(1, 5, 9, 11);
  EXPECT_EQ(st_downsample(c, 1.0, 1.0), c);
}

TEST(StDownsample, TemporalBlendWithClampAtTheEnd) {
  const Clip c = per_frame_constants({0.0f, 0.3f, 0.6f, 0.9f});
  const Clip out = st_downsample(c, 1.0, 2.0);
  expect_frame_constant(out[0], 0.0f);
  expect_frame_constant(out[1], 0.3f);
  expect_frame_constant(out[2], 0.6f);
  expect_frame_constant(out[3], 0.6f);
}

TEST(StDownsample, KeepIndices) {
  EXPECT_EQ(temporal_keep_indices(4, 2.0), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(temporal_keep_indices(10, 2.5), (std::vector<std::size_t>{0, 3, 5, 8}));
  EXPECT_EQ(temporal_keep_indices(3, 1.0), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(StDownsample, ConstantClipUnchangedForAnyFactors) {
  const Clip c = oracle::constant_clip(7, 13, 17, 0.42f);
  for (double s : {1.0, 1.25, 2.0, 2.5, 3.5}) {
    const Clip out = st_downsample(c, s, 1.0 + s / 2.0);
    for (const Frame& f : out.frames()) expect_frame_constant(f, 0.42f);
  }
}

TEST(StDownsample, FactorBelowOneIsParameterError) {
  const Clip c = oracle::constant_clip(2, 4, 4, 0.0f);
  EXPECT_THROW(st_downsample(c, 0.5, 1.0), ParameterError);
  EXPECT_THROW(st_downsample(c, 1.0, 0.9), ParameterError);
}

TEST(TemporalMorph, AlphaOneIsIdentity) {
  const Clip c = oracle::random_clip(2, 4, 5, 6);
  EXPECT_EQ(temporal_morph(c, constant_traj(4, 1.0f)), c);
}

TEST(TemporalMorph, QuarterAlphaHandExample) {
  const Clip c = per_frame_constants({0.0f, 1.0f});
  const Trajectory a{{0.25f, 0.9f}};
  const Clip out = temporal_morph(c, a);
  expect_frame_constant(out[0], 0.75f);
  expect_frame_constant(out[1], 1.0f);
}

TEST(TemporalMorph, AlphaZeroShiftsForwardAndKeepsLast) {
  const Clip c = oracle::random_clip(3, 5, 4, 4);
  const Clip out = temporal_morph(c, constant_traj(5, 0.0f));
  for (std::size_t t = 0; t + 1 < 5; ++t) EXPECT_EQ(out[t], c[t + 1]);
  EXPECT_EQ(out[4], c[4]);
}

TEST(TemporalMorph, LengthMismatchIsParameterError) {
  const Clip c = oracle::random_clip(3, 5, 4, 4);
  EXPECT_THROW(temporal_morph(c, constant_traj(4, 1.0f)), ParameterError);
}

TEST(DropMask, ZeroProbabilityKeepsAll) {
  RandomStream s = derive_stream(1, 4, "drop");
  const DropMask m = sample_drop_mask(s, 30, 0.0, 2);
  EXPECT_EQ(m.dropped(), 0u);
  EXPECT_EQ(m.keep, std::vector<bool>(30, true));
}

TEST(DropMask, HighProbabilityRunLimitOverThousandSeeds) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RandomStream s = derive_stream(seed, 4, "drop_mask");
    const DropMask m = sample_drop_mask(s, 5, 0.99, 1);
    ASSERT_EQ(m.size(), 5u);
    ASSERT_TRUE(m.keep.front());
    ASSERT_TRUE(m.keep.back());
    for (std::size_t t = 1; t < 5; ++t) ASSERT_FALSE(!m.keep[t] && !m.keep[t - 1]);
    ASSERT_LE(m.longest_gap(), 1u);
  }
}

TEST(DropMask, EmpiricalRateMatchesProbability) {
  std::size_t dropped = 0, interior = 0;
  const std::size_t T = 102;
  for (std::uint64_t seed = 0; interior < 100000; ++seed) {
    RandomStream s = derive_stream(seed, 4, "drop_rate");
    const DropMask m = sample_drop_mask(s, T, 0.1, static_cast<int>(T));
    dropped += m.dropped();
    interior += T - 2;
  }
  EXPECT_NEAR(static_cast<double>(dropped) / interior, 0.1, 0.01);
}

TEST(DropMask, RunLimitHoldsAcrossSettings) {
  for (int max_run = 1; max_run <= 3; ++max_run) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      RandomStream s = derive_stream(seed, 2, "runs");
      const DropMask m = sample_drop_mask(s, 49, 0.7, max_run);
      ASSERT_LE(m.longest_gap(), static_cast<std::size_t>(max_run));
      ASSERT_TRUE(m.keep.front() && m.keep.back());
    }
  }
}

TEST(DropMask, TooShortOrBadArgumentsAreParameterErrors) {
  RandomStream s = derive_stream(1, 1, "d");
  EXPECT_THROW(sample_drop_mask(s, 1, 0.1, 1), ParameterError);
  EXPECT_THROW(sample_drop_mask(s, 5, 1.0, 1), ParameterError);
  EXPECT_THROW(sample_drop_mask(s, 5, 0.1, 0), ParameterError);
}

TEST(ApplyDrop, AllKeepIsIdentity) {
  const Clip c = oracle::random_clip(4, 6, 3, 3);
  EXPECT_EQ(apply_drop(c, DropMask{std::vector<bool>(6, true), 1}), c);
}

TEST(ApplyDrop, SingleGapMidpoint) {
  const Clip c = per_frame_constants({0.0f, 0.77f, 1.0f});
  const Clip out = apply_drop(c, DropMask{{true, false, true}, 1});
  expect_frame_constant(out[1], 0.5f);
  EXPECT_EQ(out[0], c[0]);
  EXPECT_EQ(out[2], c[2]);
}

TEST(ApplyDrop, TwoFrameGapLinearRamp) {
  const Clip c = per_frame_constants({0.0f, 0.5f, 0.1f, 0.9f});
  const Clip out = apply_drop(c, DropMask{{true, false, false, true}, 2});
  expect_frame_constant(out[0], 0.0f);
  expect_frame_constant(out[1], 0.3f);
  expect_frame_constant(out[2], 0.6f);
  expect_frame_constant(out[3], 0.9f);
}

TEST(ApplyDrop, DroppedEndpointIsParameterError) {
  const Clip c = per_frame_constants({0.0f, 0.5f, 1.0f});
  EXPECT_THROW(apply_drop(c, DropMask{{false, true, true}, 1}), ParameterError);
  EXPECT_THROW(apply_drop(c, DropMask{{true, true, false}, 1}), ParameterError);
  EXPECT_THROW(apply_drop(c, DropMask{{true, true}, 1}), ParameterError);
}

TEST(LineKernel, UnitLengthIsDelta) {
  const LineKernel k = make_line_kernel(37.0, 1.0);
  ASSERT_EQ(k.taps.size(), 1u);
  EXPECT_EQ(k.taps[0].dx, 0);
  EXPECT_EQ(k.taps[0].dy, 0);
  EXPECT_FLOAT_EQ(k.taps[0].weight, 1.0f);
}

TEST(LineKernel, HorizontalFiveTaps) {
  const LineKernel k = make_line_kernel(0.0, 5.0);
  std::map<std::pair<int, int>, double> w;
  for (const auto& t : k.taps) {
    if (t.weight > 1e-9f) w[{t.dx, t.dy}] += t.weight;
  }
  ASSERT_EQ(w.size(), 5u);
  for (int dx = -2; dx <= 2; ++dx) EXPECT_NEAR((w[{dx, 0}]), 0.2, 1e-6);
}

TEST(LineKernel, VerticalThreeTaps) {
  const LineKernel k = make_line_kernel(90.0, 3.0);
  std::map<std::pair<int, int>, double> w;
  for (const auto& t : k.taps) {
    if (t.weight > 1e-6f) w[{t.dx, t.dy}] += t.weight;
  }
  ASSERT_EQ(w.size(), 3u);
  for (int dy = -1; dy <= 1; ++dy) EXPECT_NEAR((w[{0, dy}]), 1.0 / 3.0, 1e-6);
}

TEST(LineKernel, WeightsSumToOneAndTapsHugTheLine) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.0, 360.0), ln(1.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const double theta = th(rng), len = ln(rng);
    const LineKernel k = make_line_kernel(theta, len);
    double sum = 0.0;
    const double rad = theta * 3.14159265358979323846 / 180.0;
    const double ux = std::cos(rad), uy = std::sin(rad);
    const double half = 0.5 * (std::ceil(len) - 1.0);
    for (const auto& t : k.taps) {
      sum += t.weight;
      ASSERT_GE(t.weight, 0.0f);
      // Every tap is a bilinear neighbour of some sample on the segment:
      // within one pixel of the line and of its extent.
      const double along = t.dx * ux + t.dy * uy;
      const double across = std::abs(-t.dx * uy + t.dy * ux);
      ASSERT_LE(across, std::sqrt(2.0) + 1e-9);
      ASSERT_LE(std::abs(along), half + std::sqrt(2.0) + 1e-9);
    }
    ASSERT_NEAR(sum, 1.0, 1e-6);
    ASSERT_GE(k.theta_deg, 0.0);
    ASSERT_LT(k.theta_deg, 360.0);
  }
}

TEST(LineKernel, LengthBelowOneIsParameterError) {
  EXPECT_THROW(make_line_kernel(0.0, 0.99), ParameterError);
}

TEST(MotionBlur, UnitLengthIsIdentity) {
  const Clip c = oracle::random_clip(6, 3, 8, 9);
  EXPECT_EQ(motion_blur(c, constant_traj(3, 33.0f), constant_traj(3, 1.0f)), c);
}

TEST(MotionBlur, HandConvolutionOfAStep) {
  const Clip c = gray_row({0, 0, 0, 1, 1, 1});
  const Clip out = motion_blur(c, constant_traj(1, 0.0f), constant_traj(1, 3.0f));
  const std::vector<double> expect{0, 0, 1.0 / 3, 2.0 / 3, 1, 1};
  for (std::size_t x = 0; x < 6; ++x) {
    for (std::size_t ch = 0; ch < 3; ++ch) EXPECT_NEAR(out[0].at(0, x, ch), expect[x], 1e-6);
  }
}

TEST(MotionBlur, ConstantFramesUnchanged) {
  const Clip c = oracle::constant_clip(2, 15, 21, 0.37f);
  const Clip out = motion_blur(c, Trajectory{{17.0f, 241.0f}}, Trajectory{{19.5f, 7.2f}});
  for (const Frame& f : out.frames()) expect_frame_constant(f, 0.37f);
}

TEST(MotionBlur, MatchesDirectSummationOracle) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> th(0.0, 360.0), ln(1.0, 9.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Clip c = oracle::random_clip(100 + trial, 2, 4 + trial % 3, 4 + trial % 5);
    const Trajectory theta{{static_cast<float>(th(rng)), static_cast<float>(th(rng))}};
    const Trajectory len{{static_cast<float>(ln(rng)), static_cast<float>(ln(rng))}};
    const Clip out = motion_blur(c, theta, len);
    for (std::size_t t = 0; t < 2; ++t) {
      const Frame o = oracle::motion_blur_frame(c[t], theta[t], len[t]);
      for (std::size_t i = 0; i < o.size(); ++i) ASSERT_NEAR(out[t].data()[i], o.data()[i], 1e-6);
    }
  }
}

TEST(MotionBlur, LengthMismatchIsParameterError) {
  const Clip c = oracle::random_clip(1, 3, 4, 4);
  EXPECT_THROW(motion_blur(c, constant_traj(2, 0.0f), constant_traj(3, 2.0f)), ParameterError);
}

TEST(BilinearSample, LatticeHalfPixelAndClamp) {
  const Clip c = gray_row({0.1f, 0.2f, 0.3f, 0.4f});
  const Frame& f = c[0];
  EXPECT_EQ(bilinear_sample(f, 2.0, 0.0)[0], 0.3f);
  EXPECT_NEAR(bilinear_sample(f, 0.5, 0.0)[1], 0.15, 1e-6);
  EXPECT_EQ(bilinear_sample(f, -3.0, 0.0), bilinear_sample(f, 0.0, 0.0));
  EXPECT_EQ(bilinear_sample(f, 9.0, 4.0), bilinear_sample(f, 3.0, 0.0));
}

TEST(GridWarp, ZeroFieldIsBitIdentical) {
  const Clip c = oracle::random_clip(9, 3, 7, 8);
  EXPECT_EQ(grid_warp(c, DisplacementFieldSeq::uniform(3, 7, 8, 0.0f, 0.0f)), c);
}

TEST(GridWarp, UniformShiftsOnARow) {
  const Clip c = gray_row({0.1f, 0.2f, 0.3f, 0.4f});
  const Clip one = grid_warp(c, DisplacementFieldSeq::uniform(1, 1, 4, 1.0f, 0.0f));
  const Clip half = grid_warp(c, DisplacementFieldSeq::uniform(1, 1, 4, 0.5f, 0.0f));
  const std::vector<double> e1{0.2, 0.3, 0.4, 0.4}, e2{0.15, 0.25, 0.35, 0.4};
  for (std::size_t x = 0; x < 4; ++x) {
    EXPECT_NEAR(one[0].at(0, x, 0), e1[x], 1e-6);
    EXPECT_NEAR(half[0].at(0, x, 2), e2[x], 1e-6);
  }
}

TEST(GridWarp, MatchesOracleOnSmallClips) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<float> u(-3.0f, 3.0f);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t T = 1 + trial % 4, H = 1 + trial % 4, W = 2 + trial % 3;
    const Clip c = oracle::random_clip(200 + trial, T, H, W);
    std::vector<float> control(T * 2 * 2 * 2);
    for (float& v : control) v = u(rng);
    const DisplacementFieldSeq f(T, H, W, 2, 2, control);
    const Clip out = grid_warp(c, f);
    for (std::size_t t = 0; t < T; ++t) {
      const Frame o = oracle::warp_frame(c[t], f, t);
      for (std::size_t i = 0; i < o.size(); ++i) ASSERT_NEAR(out[t].data()[i], o.data()[i], 1e-6);
    }
  }
}

TEST(GridWarp, FieldShapeMismatchIsParameterError) {
  const Clip c = oracle::random_clip(1, 3, 4, 4);
  EXPECT_THROW(grid_warp(c, DisplacementFieldSeq::uniform(2, 4, 4, 0, 0)), ParameterError);
  EXPECT_THROW(grid_warp(c, DisplacementFieldSeq::uniform(3, 4, 5, 0, 0)), ParameterError);
}

TEST(Operators, ShapeAndRangePreservedOnRandomClips) {
  const Clip c = oracle::random_clip(31, 9, 12, 15);
  RandomStream s = derive_stream(3, 1, "mask");
  FieldSpec fs{4, 4, 0.3f, 4, 3, Basis::kLatticeNoise};
  const auto fields = gen_field_seq(derive_stream(3, 2, "warp"), fs, 9, 12, 15);
  const std::vector<Clip> outs{
      st_downsample(c, 2.3, 2.7),
      temporal_morph(c, constant_traj(9, 0.4f)),
      apply_drop(c, sample_drop_mask(s, 9, 0.5, 2)),
      motion_blur(c, constant_traj(9, 123.0f), constant_traj(9, 6.5f)),
      grid_warp(c, fields),
  };
  for (const Clip& o : outs) {
    EXPECT_EQ(shape_of(o), shape_of(c));
    expect_in_unit_range(o);
  }
}

TEST(Operators, ThreadCountDoesNotChangeOutput) {
  const Clip c = oracle::random_clip(44, 8, 20, 24);
  FieldSpec fs{5, 5, 0.2f, 4, 3, Basis::kLatticeNoise};
  const auto fields = gen_field_seq(derive_stream(5, 2, "warp"), fs, 8, 20, 24);
  const Trajectory theta{{0, 20, 45, 90, 130, 200, 290, 359}};
  const Trajectory len{{1, 2.5f, 4, 6, 8, 11, 15, 20}};
  const Executor seq(1);
  for (unsigned threads : {2u, 4u, 8u}) {
    const Executor par(threads);
    EXPECT_EQ(motion_blur(c, theta, len, seq), motion_blur(c, theta, len, par));
    EXPECT_EQ(grid_warp(c, fields, seq), grid_warp(c, fields, par));
    EXPECT_EQ(st_downsample(c, 2.2, 2.9, seq), st_downsample(c, 2.2, 2.9, par));
    const Trajectory alpha{{1, 0.9f, 0.8f, 0.7f, 0.6f, 0.5f, 0.45f, 0.4f}};
    EXPECT_EQ(temporal_morph(c, alpha, seq), temporal_morph(c, alpha, par));
  }
}
