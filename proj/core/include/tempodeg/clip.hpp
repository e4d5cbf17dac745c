#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tempodeg {

inline constexpr std::size_t kChannels = 3;

/// One RGB frame. Row-major, channel-interleaved float samples nominally in
/// [0,1]. The sample count is fixed at construction to height*width*3.
class Frame {
 public:
  Frame() = default;
  Frame(std::size_t height, std::size_t width, float fill = 0.0f);
  /// Throws ShapeError unless data.size() == height*width*3.
  Frame(std::size_t height, std::size_t width, std::vector<float> data);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t row_stride() const { return width_ * kChannels; }
  std::size_t size() const { return data_.size(); }

  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }

  std::span<const float> row(std::size_t y) const {
    return std::span<const float>(data_).subspan(y * row_stride(), row_stride());
  }
  std::span<float> row(std::size_t y) {
    return std::span<float>(data_).subspan(y * row_stride(), row_stride());
  }

  float at(std::size_t y, std::size_t x, std::size_t c) const {
    return data_[(y * width_ + x) * kChannels + c];
  }
  float& at(std::size_t y, std::size_t x, std::size_t c) {
    return data_[(y * width_ + x) * kChannels + c];
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<float> data_;
};

struct ClipShape {
  std::size_t frames = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  friend bool operator==(const ClipShape&, const ClipShape&) = default;
};

std::string to_string(const ClipShape& shape);

/// An ordered sequence of equally sized frames. Construction does not check
/// the invariants so that validate() can report them; operators call
/// shape_of(), which does.
class Clip {
 public:
  Clip() = default;
  explicit Clip(std::vector<Frame> frames) : frames_(std::move(frames)) {}
  /// T frames of HxW filled with a constant.
  Clip(std::size_t frames, std::size_t height, std::size_t width, float fill = 0.0f);

  std::size_t size() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }
  const Frame& operator[](std::size_t t) const { return frames_[t]; }
  Frame& operator[](std::size_t t) { return frames_[t]; }
  const std::vector<Frame>& frames() const { return frames_; }
  std::vector<Frame>& frames() { return frames_; }

  friend bool operator==(const Clip&, const Clip&) = default;

 private:
  std::vector<Frame> frames_;
};

/// Returns (T,H,W); throws ShapeError on an empty clip or non-uniform frames.
ClipShape shape_of(const Clip& clip);

/// Allocates a clip of the given shape (all zeros).
Clip make_clip(const ClipShape& shape);

struct Violation {
  enum class Kind { kEmpty, kNonUniformDimensions, kOutOfRange };
  Kind kind;
  std::string message;
};

/// First violated clip invariant, or nullopt when the clip is valid.
std::optional<Violation> validate(const Clip& clip);

/// Maps each byte b to b/255. Throws ShapeError when raw.size() != T*H*W*3.
Clip clip_from_bytes(std::span<const std::uint8_t> raw, std::size_t frames,
                     std::size_t height, std::size_t width);

/// clamp(round(v*255), 0, 255), rounding half away from zero.
std::uint8_t to_byte(float v);
std::vector<std::uint8_t> clip_to_bytes(const Clip& clip);
std::vector<std::uint8_t> frame_to_bytes(const Frame& frame);
Frame frame_from_bytes(std::span<const std::uint8_t> raw, std::size_t height,
                       std::size_t width);

}  // namespace tempodeg
