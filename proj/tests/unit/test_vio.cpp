#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tempodeg/error.hpp"
#include "tempodeg/png_codec.hpp"
#include "tempodeg/vio.hpp"

using namespace tempodeg;
namespace fs = std::filesystem;

namespace {

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() /
            (std::string("tempodeg_vio_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }
  fs::path root_;
};

// A clip whose samples are exact byte values, so frame files round-trip bit-exactly.
Clip byte_clip(std::uint64_t seed, std::size_t t, std::size_t h, std::size_t w) {
  return clip_from_bytes(clip_to_bytes(oracle::random_clip(seed, t, h, w)), t, h, w);
}

}  // namespace

using FrameDir = TempDir;
using Y4mFile = TempDir;

TEST(FrameNames, SixDigitZeroPadded) {
  EXPECT_EQ(frame_filename(0), "000000.png");
  EXPECT_EQ(frame_filename(48), "000048.png");
  EXPECT_EQ(frame_filename(123456), "123456.png");
}

TEST_F(FrameDir, WritesOneFilePerFrame) {
  write_frames(byte_clip(1, 3, 4, 5), root_ / "out");
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(root_ / "out")) names.push_back(e.path().filename());
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"000000.png", "000001.png", "000002.png"}));
}

TEST_F(FrameDir, RoundTripIsByteExact) {
  const Clip c = byte_clip(2, 5, 7, 9);
  write_frames(c, root_ / "rt");
  const Clip back = read_frames(root_ / "rt");
  EXPECT_EQ(clip_to_bytes(back), clip_to_bytes(c));
  EXPECT_EQ(back, c);
}

TEST_F(FrameDir, CanonicalGeometryReadsAsFortyNineFrames) {
  write_frames(Clip(49, 480, 832, 0.25f), root_ / "big");
  const Clip back = read_frames(root_ / "big");
  EXPECT_EQ(shape_of(back), (ClipShape{49, 480, 832}));
}

TEST_F(FrameDir, GapIsSequenceError) {
  write_frames(byte_clip(3, 5, 4, 4), root_ / "gap");
  fs::remove(root_ / "gap" / "000003.png");
  EXPECT_THROW(read_frames(root_ / "gap"), SequenceError);
}

TEST_F(FrameDir, EmptyDirectoryIsSequenceError) {
  fs::create_directories(root_ / "empty");
  EXPECT_THROW(read_frames(root_ / "empty"), SequenceError);
}

TEST_F(FrameDir, MissingDirectoryIsIoError) {
  EXPECT_THROW(read_frames(root_ / "nope"), IoError);
}

TEST_F(FrameDir, SizeMismatchIsShapeError) {
  write_frames(byte_clip(4, 2, 4, 4), root_ / "mix");
  const auto bytes = clip_to_bytes(byte_clip(5, 1, 5, 4));
  write_png(root_ / "mix" / "000002.png", 5, 4, bytes);
  EXPECT_THROW(read_frames(root_ / "mix"), ShapeError);
}

TEST_F(FrameDir, RefusesNonEmptyTarget) {
  fs::create_directories(root_ / "busy");
  std::ofstream(root_ / "busy" / "keep.txt") << "x";
  EXPECT_THROW(write_frames(byte_clip(6, 1, 2, 2), root_ / "busy"), IoError);
}

TEST_F(FrameDir, StreamingReaderYieldsFramesInOrder) {
  const Clip c = byte_clip(7, 4, 3, 3);
  write_frames(c, root_ / "s");
  FrameDirReader reader(root_ / "s");
  EXPECT_EQ(reader.frame_count(), 4u);
  for (std::size_t t = 0; t < 4; ++t) {
    auto f = reader.next();
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(*f, c[t]);
  }
  EXPECT_FALSE(reader.next().has_value());
}

TEST_F(FrameDir, NonPngFrameIsFormatError) {
  write_frames(byte_clip(8, 2, 3, 3), root_ / "bad");
  std::ofstream(root_ / "bad" / "000001.png", std::ios::trunc) << "garbage";
  EXPECT_THROW(read_frames(root_ / "bad"), FormatError);
}

TEST(Y4mHeaderLine, CanonicalGeometry) {
  EXPECT_EQ(y4m_header_line(Y4mHeader{832, 480, 24, 1}), "YUV4MPEG2 W832 H480 F24:1 Ip A1:1 C444");
}

TEST(Y4mColor, GrayIsExactWithNeutralChroma) {
  for (int v = 0; v < 256; ++v) {
    const std::uint8_t rgb[3] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v),
                                 static_cast<std::uint8_t>(v)};
    std::uint8_t ycc[3], back[3];
    rgb_to_ycbcr(rgb, ycc);
    EXPECT_EQ(ycc[0], v);
    EXPECT_EQ(ycc[1], 128);
    EXPECT_EQ(ycc[2], 128);
    ycbcr_to_rgb(ycc, back);
    EXPECT_EQ(back[0], v);
    EXPECT_EQ(back[1], v);
    EXPECT_EQ(back[2], v);
  }
}

TEST(Y4mColor, EveryRgbColorRoundTripsWithinOneStep) {
  int worst = 0;
  for (int r = 0; r < 256; ++r) {
    for (int g = 0; g < 256; ++g) {
      for (int b = 0; b < 256; ++b) {
        const std::uint8_t rgb[3] = {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                     static_cast<std::uint8_t>(b)};
        std::uint8_t ycc[3], back[3];
        rgb_to_ycbcr(rgb, ycc);
        ycbcr_to_rgb(ycc, back);
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(back[c] - rgb[c]));
      }
    }
  }
  EXPECT_LE(worst, 1);
}

TEST(Y4mStream, RoundTripWithinOneQuantizationStep) {
  const Clip c = byte_clip(9, 3, 6, 10);
  std::stringstream ss;
  write_y4m(c, ss);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("YUV4MPEG2 W10 H6 F24:1 Ip A1:1 C444\n", 0), 0u);
  const Clip back = read_y4m(ss);
  ASSERT_EQ(shape_of(back), shape_of(c));
  EXPECT_LE(oracle::max_abs_diff(back, c), 1.0 / 255.0 + 1e-7);
}

TEST(Y4mStream, GrayClipIsByteExact) {
  Clip c = byte_clip(10, 2, 5, 5);
  for (Frame& f : c.frames()) {
    for (std::size_t i = 0; i < f.size(); i += 3) f.data()[i + 1] = f.data()[i + 2] = f.data()[i];
  }
  std::stringstream ss;
  write_y4m(c, ss);
  EXPECT_EQ(read_y4m(ss), c);
}

TEST(Y4mStream, PayloadLayoutIsFramedPlanar) {
  const Clip c(2, 2, 3, 0.0f);
  std::stringstream ss;
  write_y4m(c, ss, 30000, 1001);
  const std::string s = ss.str();
  const std::string header = "YUV4MPEG2 W3 H2 F30000:1001 Ip A1:1 C444\n";
  ASSERT_EQ(s.rfind(header, 0), 0u);
  EXPECT_EQ(s.size(), header.size() + 2 * (6 + 3 * 2 * 3));
  EXPECT_EQ(s.substr(header.size(), 6), "FRAME\n");
}

TEST(Y4mStream, NonFourFourFourChromaIsFormatError) {
  std::stringstream a("YUV4MPEG2 W2 H2 F24:1 Ip A1:1 C420jpeg\nFRAME\n");
  EXPECT_THROW(read_y4m(a), FormatError);
  std::stringstream b("YUV4MPEG2 W2 H2 F24:1 Ip A1:1\nFRAME\n");
  EXPECT_THROW(read_y4m(b), FormatError);
  std::stringstream c("NOTY4M W2 H2 C444\n");
  EXPECT_THROW(read_y4m(c), FormatError);
}

TEST(Y4mStream, TruncatedFrameIsFormatError) {
  const Clip c = byte_clip(11, 2, 4, 4);
  std::stringstream ss;
  write_y4m(c, ss);
  std::string s = ss.str();
  s.resize(s.size() - 5);
  std::stringstream cut(s);
  EXPECT_THROW(read_y4m(cut), FormatError);
}

TEST(Y4mStream, StreamingReaderDecodesOneFrameAtATime) {
  const Clip c = byte_clip(12, 3, 4, 4);
  std::stringstream ss;
  write_y4m(c, ss);
  Y4mReader reader(ss);
  EXPECT_EQ(reader.header().width, 4u);
  EXPECT_EQ(reader.header().height, 4u);
  std::size_t n = 0;
  while (auto f = reader.next()) {
    EXPECT_EQ(f->height(), 4u);
    ++n;
  }
  EXPECT_EQ(n, 3u);
}

TEST_F(Y4mFile, LoadAndSaveDispatchOnExtension) {
  const Clip c = byte_clip(13, 2, 4, 6);
  save_clip(c, root_ / "clip.y4m");
  save_clip(c, root_ / "frames");
  EXPECT_TRUE(is_y4m_path(root_ / "clip.y4m"));
  EXPECT_FALSE(is_y4m_path(root_ / "frames"));
  EXPECT_TRUE(fs::is_regular_file(root_ / "clip.y4m"));
  EXPECT_TRUE(fs::is_directory(root_ / "frames"));
  EXPECT_EQ(load_clip(root_ / "frames"), c);
  EXPECT_LE(oracle::max_abs_diff(load_clip(root_ / "clip.y4m"), c), 1.0 / 255.0 + 1e-7);
}

TEST_F(Y4mFile, MissingFileIsIoError) {
  EXPECT_THROW(read_y4m_file(root_ / "none.y4m"), IoError);
}
