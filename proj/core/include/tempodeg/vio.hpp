#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "tempodeg/clip.hpp"

// Disk formats for clips: a directory of 000000.png, 000001.png, ... frames,
// and YUV4MPEG2 streams with 4:4:4 full-range Rec.601 chroma.
namespace tempodeg {

/// Name of frame i inside a frame-sequence directory.
std::string frame_filename(std::size_t index);

/// Streams frames of a sequence directory one at a time. The constructor
/// checks the index set (contiguous from 000000) without decoding anything.
class FrameDirReader {
 public:
  /// Throws IoError when dir is not a readable directory, SequenceError on
  /// an empty or gapped sequence.
  explicit FrameDirReader(std::filesystem::path dir);
  std::size_t frame_count() const { return count_; }
  /// Next frame, or nullopt at the end. Throws ShapeError when a frame's
  /// size differs from the first frame's.
  std::optional<Frame> next();

 private:
  std::filesystem::path dir_;
  std::size_t count_ = 0;
  std::size_t pos_ = 0;
  std::size_t height_ = 0;
  std::size_t width_ = 0;
};

Clip read_frames(const std::filesystem::path& dir);
/// Refuses (IoError) when dir exists and is not empty; creates it otherwise.
void write_frames(const Clip& clip, const std::filesystem::path& dir);

struct Y4mHeader {
  std::size_t width = 0;
  std::size_t height = 0;
  int fps_num = 24;
  int fps_den = 1;
};

/// "YUV4MPEG2 W<w> H<h> F<num>:<den> Ip A1:1 C444"
std::string y4m_header_line(const Y4mHeader& header);

/// Full-range Rec.601 conversions on 8-bit samples with round-half-away.
void rgb_to_ycbcr(const std::uint8_t rgb[3], std::uint8_t ycc[3]);
void ycbcr_to_rgb(const std::uint8_t ycc[3], std::uint8_t rgb[3]);

/// Parses the header on construction and then decodes one frame per next().
/// Throws FormatError on a non-C444 or malformed header and on truncated
/// frames.
class Y4mReader {
 public:
  explicit Y4mReader(std::istream& in);
  const Y4mHeader& header() const { return header_; }
  std::optional<Frame> next();

 private:
  std::istream& in_;
  Y4mHeader header_;
  std::size_t frames_read_ = 0;
};

Clip read_y4m(std::istream& in);
void write_y4m(const Clip& clip, std::ostream& out, int fps_num = 24, int fps_den = 1);
Clip read_y4m_file(const std::filesystem::path& path);
void write_y4m_file(const Clip& clip, const std::filesystem::path& path, int fps_num = 24,
                    int fps_den = 1);

/// Dispatches on the path: *.y4m files, anything else is a frame directory.
Clip load_clip(const std::filesystem::path& path);
void save_clip(const Clip& clip, const std::filesystem::path& path);
bool is_y4m_path(const std::filesystem::path& path);

}  // namespace tempodeg
