#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "tempodeg/curriculum.hpp"
#include "tempodeg/error.hpp"
#include "tempodeg/metrics.hpp"
#include "tempodeg/recipe_json.hpp"
#include "tempodeg/synthetic.hpp"

using namespace tempodeg;

namespace {

const ClipShape kShape{12, 24, 32};

std::set<OperatorId> op_set(const RecipeRecord& r) {
  std::set<OperatorId> s;
  for (const auto& op : r.temporal_ops) s.insert(operator_of(op));
  return s;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST(PresetTable, MatchesTheTypedTable) {
  const PresetSpec l = preset_spec(Preset::kLight);
  EXPECT_EQ(l.temporal_op_count, 2);
  EXPECT_EQ(l.blur_length.lo, 3);
  EXPECT_EQ(l.blur_length.hi, 8);
  EXPECT_EQ(l.grid_points.lo, 12);
  EXPECT_EQ(l.grid_points.hi, 12);
  EXPECT_DOUBLE_EQ(l.warp_amplitude.lo, 0.05);
  EXPECT_DOUBLE_EQ(l.warp_amplitude.hi, 0.12);
  EXPECT_DOUBLE_EQ(l.morph_strength.lo, 0.05);
  EXPECT_DOUBLE_EQ(l.morph_strength.hi, 0.2);
  EXPECT_DOUBLE_EQ(l.p_drop.lo, 0.02);
  EXPECT_DOUBLE_EQ(l.p_drop.hi, 0.05);
  EXPECT_EQ(l.max_run, 1);
  EXPECT_DOUBLE_EQ(l.s_temp.lo, 1.5);
  EXPECT_DOUBLE_EQ(l.s_temp.hi, 2.0);
  EXPECT_DOUBLE_EQ(l.s_spat.lo, 1.25);
  EXPECT_DOUBLE_EQ(l.s_spat.hi, 1.5);

  const PresetSpec m = preset_spec(Preset::kMedium);
  EXPECT_EQ(m.temporal_op_count, 3);
  EXPECT_EQ(m.blur_length.lo, 6);
  EXPECT_EQ(m.blur_length.hi, 14);
  EXPECT_EQ(m.grid_points.lo, 8);
  EXPECT_EQ(m.grid_points.hi, 8);
  EXPECT_DOUBLE_EQ(m.warp_amplitude.lo, 0.10);
  EXPECT_DOUBLE_EQ(m.warp_amplitude.hi, 0.20);
  EXPECT_DOUBLE_EQ(m.morph_strength.lo, 0.15);
  EXPECT_DOUBLE_EQ(m.morph_strength.hi, 0.40);
  EXPECT_DOUBLE_EQ(m.p_drop.lo, 0.05);
  EXPECT_DOUBLE_EQ(m.p_drop.hi, 0.10);
  EXPECT_EQ(m.max_run, 2);
  EXPECT_DOUBLE_EQ(m.s_temp.lo, 2.0);
  EXPECT_DOUBLE_EQ(m.s_temp.hi, 2.8);
  EXPECT_DOUBLE_EQ(m.s_spat.lo, 1.5);
  EXPECT_DOUBLE_EQ(m.s_spat.hi, 2.0);

  const PresetSpec s = preset_spec(Preset::kStrong);
  EXPECT_EQ(s.temporal_op_count, 4);
  EXPECT_EQ(s.blur_length.lo, 10);
  EXPECT_EQ(s.blur_length.hi, 20);
  EXPECT_EQ(s.grid_points.lo, 4);
  EXPECT_EQ(s.grid_points.hi, 6);
  EXPECT_DOUBLE_EQ(s.warp_amplitude.lo, 0.20);
  EXPECT_DOUBLE_EQ(s.warp_amplitude.hi, 0.30);
  EXPECT_DOUBLE_EQ(s.morph_strength.lo, 0.30);
  EXPECT_DOUBLE_EQ(s.morph_strength.hi, 0.60);
  EXPECT_DOUBLE_EQ(s.p_drop.lo, 0.10);
  EXPECT_DOUBLE_EQ(s.p_drop.hi, 0.20);
  EXPECT_EQ(s.max_run, 3);
  EXPECT_DOUBLE_EQ(s.s_temp.lo, 2.8);
  EXPECT_DOUBLE_EQ(s.s_temp.hi, 3.5);
  EXPECT_DOUBLE_EQ(s.s_spat.lo, 2.0);
  EXPECT_DOUBLE_EQ(s.s_spat.hi, 2.5);
}

TEST(PresetTable, StrongUpperBoundsMatchPublishedLimits) {
  const PresetSpec s = preset_spec(Preset::kStrong);
  EXPECT_EQ(s.blur_length.hi, 20.0);
  EXPECT_DOUBLE_EQ(s.warp_amplitude.hi, 0.3);
}

TEST(PresetTable, EveryPresetInsideGlobalBounds) {
  for (Preset p : {Preset::kLight, Preset::kMedium, Preset::kStrong}) {
    const PresetSpec s = preset_spec(p);
    EXPECT_TRUE(s.blur_length.within(GlobalBounds::kBlurLength));
    EXPECT_TRUE(s.warp_amplitude.within(GlobalBounds::kWarpAmplitude));
    EXPECT_TRUE(s.s_temp.within(GlobalBounds::kTemporalFactor));
    EXPECT_LE(s.morph_strength.hi, GlobalBounds::kMaxMorphStrength);
    EXPECT_GE(s.grid_points.lo, GlobalBounds::kGridPoints.lo);
    EXPECT_LE(s.grid_points.hi, GlobalBounds::kGridPoints.hi);
  }
}

TEST(PresetNames, ParseAndPrint) {
  EXPECT_EQ(parse_preset("Strong"), Preset::kStrong);
  EXPECT_EQ(parse_preset("light"), Preset::kLight);
  EXPECT_EQ(to_string(Preset::kMedium), "medium");
  EXPECT_THROW(parse_preset("extreme"), ParameterError);
}

TEST(SampleRecipe, DeterministicInPresetSeedAndShape) {
  for (Preset p : {Preset::kLight, Preset::kMedium, Preset::kStrong}) {
    EXPECT_EQ(sample_recipe(p, 17, kShape), sample_recipe(p, 17, kShape));
  }
  EXPECT_FALSE(sample_recipe(Preset::kStrong, 17, kShape) ==
               sample_recipe(Preset::kStrong, 18, kShape));
}

TEST(SampleRecipe, OperatorCountsAreDistinctAndFromThePool) {
  const std::set<OperatorId> pool(std::begin(kOperatorPool), std::end(kOperatorPool));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    for (Preset p : {Preset::kLight, Preset::kMedium, Preset::kStrong}) {
      const RecipeRecord r = sample_recipe(p, seed, kShape);
      const auto ops = op_set(r);
      ASSERT_EQ(r.temporal_ops.size(), static_cast<std::size_t>(preset_spec(p).temporal_op_count));
      ASSERT_EQ(ops.size(), r.temporal_ops.size());
      for (OperatorId id : ops) ASSERT_TRUE(pool.count(id));
    }
  }
}

TEST(SampleRecipe, StrongRangesOverManySeeds) {
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const RecipeRecord r = sample_recipe(Preset::kStrong, seed, kShape);
    ASSERT_TRUE(audit_recipe(r).empty()) << seed;
    for (const auto& op : r.temporal_ops) {
      if (const auto* b = std::get_if<MotionBlurOp>(&op)) {
        for (float l : b->length.values) {
          ASSERT_GE(l, 10.0f);
          ASSERT_LE(l, 20.0f);
        }
      } else if (const auto* w = std::get_if<GridWarpOp>(&op)) {
        ASSERT_GE(w->field_spec.amplitude, 0.20f);
        ASSERT_LE(w->field_spec.amplitude, 0.30f);
      }
    }
  }
}

TEST(SampleRecipe, TooFewFramesIsParameterError) {
  EXPECT_THROW(sample_recipe(Preset::kLight, 1, ClipShape{1, 8, 8}), ParameterError);
}

TEST(SampleRecipe, SpatialFactorFromPreset) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RecipeRecord r = sample_recipe(Preset::kMedium, seed, kShape);
    ASSERT_GE(r.spatial.s_spat, 1.5f);
    ASSERT_LE(r.spatial.s_spat, 2.0f);
  }
}

TEST(SampleRecipe, IidModeOnlyChangesTheTrajectoryBasis) {
  const RecipeRecord smooth = sample_recipe(Preset::kMedium, 5, kShape, TrajectoryMode::kSmooth);
  const RecipeRecord iid = sample_recipe(Preset::kMedium, 5, kShape, TrajectoryMode::kIid);
  ASSERT_EQ(smooth.temporal_ops.size(), iid.temporal_ops.size());
  for (std::size_t i = 0; i < smooth.temporal_ops.size(); ++i) {
    EXPECT_EQ(operator_of(smooth.temporal_ops[i]), operator_of(iid.temporal_ops[i]));
  }
  EXPECT_EQ(smooth.spatial, iid.spatial);
  EXPECT_TRUE(audit_recipe(iid).empty());
}

TEST(ApplyRecipe, EmptyCompositionIsIdentity) {
  const Clip c = oracle::random_clip(1, 4, 6, 6);
  RecipeRecord r;
  r.shape = shape_of(c);
  r.spatial.s_spat = 1.0f;
  EXPECT_EQ(apply_recipe(c, r), c);
}

TEST(ApplyRecipe, PureAndEqualToDegrade) {
  const Clip c = make_synthetic_clip(kShape, 3);
  for (Preset p : {Preset::kLight, Preset::kMedium, Preset::kStrong}) {
    const auto [out, rec] = degrade(c, p, 99);
    EXPECT_EQ(shape_of(out), kShape);
    EXPECT_EQ(apply_recipe(c, rec), out);
    EXPECT_EQ(apply_recipe(c, rec), apply_recipe(c, rec));
  }
}

TEST(ApplyRecipe, ShapeMismatchIsShapeError) {
  const Clip c = oracle::random_clip(1, 4, 6, 6);
  const RecipeRecord r = sample_recipe(Preset::kLight, 1, ClipShape{4, 6, 7});
  EXPECT_THROW(apply_recipe(c, r), ShapeError);
}

TEST(ApplyRecipe, SpatialStageRunsFirst) {
  const Clip c = make_synthetic_clip(kShape, 4);
  const RecipeRecord r = sample_recipe(Preset::kStrong, 8, kShape);
  std::vector<std::string> stages;
  const Clip out = apply_recipe(c, r, sequential(),
                                [&](std::string_view s, double) { stages.emplace_back(s); });
  ASSERT_EQ(stages.size(), 1 + r.temporal_ops.size());
  EXPECT_EQ(stages.front(), "spatial");
  for (std::size_t i = 0; i < r.temporal_ops.size(); ++i) {
    EXPECT_EQ(stages[i + 1], to_string(operator_of(r.temporal_ops[i])));
  }
  // Manual composition in the same order gives the same clip.
  Clip manual(c);
  for (Frame& f : manual.frames()) f = spatial_degrade(f, r.spatial.s_spat);
  for (const auto& op : r.temporal_ops) manual = apply_operator(manual, op);
  EXPECT_EQ(manual, out);
}

TEST(ApplyRecipe, ThreadCountDoesNotChangeOutput) {
  const Clip c = make_synthetic_clip(kShape, 6);
  const RecipeRecord r = sample_recipe(Preset::kStrong, 2, kShape);
  const Clip ref = apply_recipe(c, r, Executor(1));
  for (unsigned n : {2u, 4u, 8u}) EXPECT_EQ(apply_recipe(c, r, Executor(n)), ref);
}

TEST(RecipeJson, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (Preset p : {Preset::kLight, Preset::kMedium, Preset::kStrong}) {
      const RecipeRecord r = sample_recipe(p, seed * 7919, kShape,
                                           seed % 2 ? TrajectoryMode::kIid : TrajectoryMode::kSmooth);
      const std::string text = serialize_recipe(r);
      const RecipeRecord back = parse_recipe(text);
      ASSERT_EQ(back, r);
      ASSERT_EQ(serialize_recipe(back), text);
    }
  }
}

TEST(RecipeJson, ReplayFromTextIsBitExact) {
  const Clip c = make_synthetic_clip(kShape, 10);
  const auto [out, rec] = degrade(c, Preset::kStrong, 1234);
  EXPECT_EQ(apply_recipe(c, parse_recipe(serialize_recipe(rec))), out);
}

TEST(RecipeJson, MalformedDocumentsAreFormatErrors) {
  EXPECT_THROW(parse_recipe("{"), FormatError);
  EXPECT_THROW(parse_recipe("{\"format\": \"other\"}"), FormatError);
  auto doc = recipe_to_json(sample_recipe(Preset::kLight, 1, kShape));
  doc["preset"] = "extreme";
  EXPECT_THROW(recipe_from_json(doc), FormatError);
}

TEST(Audit, FlagsOutOfRangeParameters) {
  RecipeRecord r = sample_recipe(Preset::kLight, 3, kShape);
  EXPECT_TRUE(audit_recipe(r).empty());
  r.spatial.s_spat = 4.0f;
  EXPECT_FALSE(audit_recipe(r).empty());
}

TEST(Strength, LightBeatsStrongOnMedianPsnr) {
  const ClipShape shape{13, 72, 128};
  const Clip c = make_synthetic_clip(shape, 7);
  std::vector<double> light, strong;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    light.push_back(psnr(c, degrade(c, Preset::kLight, seed).first).mean);
    strong.push_back(psnr(c, degrade(c, Preset::kStrong, seed).first).mean);
  }
  EXPECT_GT(median(light), median(strong));
}
