#include "tempodeg/clip.hpp"

#include <cmath>

#include "tempodeg/error.hpp"

namespace tempodeg {

Frame::Frame(std::size_t height, std::size_t width, float fill)
    : height_(height), width_(width), data_(height * width * kChannels, fill) {}

Frame::Frame(std::size_t height, std::size_t width, std::vector<float> data)
    : height_(height), width_(width), data_(std::move(data)) {
  if (data_.size() != height * width * kChannels) {
    throw ShapeError("frame data has " + std::to_string(data_.size()) +
                     " samples, expected " +
                     std::to_string(height * width * kChannels));
  }
}

Clip::Clip(std::size_t frames, std::size_t height, std::size_t width, float fill) {
  frames_.reserve(frames);
  for (std::size_t t = 0; t < frames; ++t) frames_.emplace_back(height, width, fill);
}

std::string to_string(const ClipShape& shape) {
  return std::to_string(shape.frames) + "x" + std::to_string(shape.height) + "x" +
         std::to_string(shape.width) + "x3";
}

Clip make_clip(const ClipShape& shape) {
  return Clip(shape.frames, shape.height, shape.width);
}

namespace {

std::optional<Violation> check_dimensions(const Clip& clip) {
  if (clip.empty()) {
    return Violation{Violation::Kind::kEmpty, "clip has no frames (T >= 1 required)"};
  }
  const std::size_t h = clip[0].height();
  const std::size_t w = clip[0].width();
  for (std::size_t t = 1; t < clip.size(); ++t) {
    const Frame& f = clip[t];
    if (f.height() != h || f.width() != w) {
      return Violation{Violation::Kind::kNonUniformDimensions,
                       "frame " + std::to_string(t) + " is " +
                           std::to_string(f.height()) + "x" + std::to_string(f.width()) +
                           ", expected " + std::to_string(h) + "x" + std::to_string(w)};
    }
  }
  return std::nullopt;
}

}  // namespace

ClipShape shape_of(const Clip& clip) {
  if (auto v = check_dimensions(clip)) throw ShapeError(v->message);
  return {clip.size(), clip[0].height(), clip[0].width()};
}

std::optional<Violation> validate(const Clip& clip) {
  if (auto v = check_dimensions(clip)) return v;
  for (std::size_t t = 0; t < clip.size(); ++t) {
    for (float v : clip[t].data()) {
      if (!(v >= 0.0f && v <= 1.0f)) {
        return Violation{Violation::Kind::kOutOfRange,
                         "frame " + std::to_string(t) + " has a sample outside [0,1]"};
      }
    }
  }
  return std::nullopt;
}

std::uint8_t to_byte(float v) {
  // std::round is half-away-from-zero.
  const double scaled = std::round(static_cast<double>(v) * 255.0);
  if (!(scaled > 0.0)) return 0;  // also maps NaN to 0
  if (scaled >= 255.0) return 255;
  return static_cast<std::uint8_t>(scaled);
}

Frame frame_from_bytes(std::span<const std::uint8_t> raw, std::size_t height,
                       std::size_t width) {
  if (raw.size() != height * width * kChannels) {
    throw ShapeError("frame buffer has " + std::to_string(raw.size()) +
                     " bytes, expected " + std::to_string(height * width * kChannels));
  }
  std::vector<float> data(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    data[i] = static_cast<float>(raw[i]) / 255.0f;
  }
  return Frame(height, width, std::move(data));
}

Clip clip_from_bytes(std::span<const std::uint8_t> raw, std::size_t frames,
                     std::size_t height, std::size_t width) {
  const std::size_t per_frame = height * width * kChannels;
  if (raw.size() != frames * per_frame) {
    throw ShapeError("pixel buffer has " + std::to_string(raw.size()) +
                     " bytes, expected " + std::to_string(frames * per_frame) + " for " +
                     to_string(ClipShape{frames, height, width}));
  }
  std::vector<Frame> out;
  out.reserve(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    out.push_back(frame_from_bytes(raw.subspan(t * per_frame, per_frame), height, width));
  }
  return Clip(std::move(out));
}

std::vector<std::uint8_t> frame_to_bytes(const Frame& frame) {
  std::vector<std::uint8_t> out(frame.size());
  auto src = frame.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = to_byte(src[i]);
  return out;
}

std::vector<std::uint8_t> clip_to_bytes(const Clip& clip) {
  std::vector<std::uint8_t> out;
  if (clip.empty()) return out;
  out.reserve(clip.size() * clip[0].size());
  for (const Frame& f : clip.frames()) {
    for (float v : f.data()) out.push_back(to_byte(v));
  }
  return out;
}

}  // namespace tempodeg
