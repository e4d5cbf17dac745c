#include <algorithm>
#include <cctype>
#include <cstdio>
#include <vector>

#include "tempodeg/error.hpp"
#include "tempodeg/png_codec.hpp"
#include "tempodeg/vio.hpp"

namespace tempodeg {

namespace fs = std::filesystem;

std::string frame_filename(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu.png", index);
  return buf;
}

namespace {

std::optional<std::size_t> frame_index_of(const std::string& name) {
  if (name.size() != 10 || name.substr(6) != ".png") return std::nullopt;
  std::size_t v = 0;
  for (int i = 0; i < 6; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(name[i] - '0');
  }
  return v;
}

}  // namespace

FrameDirReader::FrameDirReader(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) throw IoError(dir_.string() + " is not a directory");
  std::vector<std::size_t> indices;
  for (const auto& entry : fs::directory_iterator(dir_, ec)) {
    if (!entry.is_regular_file()) continue;
    if (auto idx = frame_index_of(entry.path().filename().string())) indices.push_back(*idx);
  }
  if (ec) throw IoError("cannot list " + dir_.string() + ": " + ec.message());
  if (indices.empty()) throw SequenceError(dir_.string() + " holds no NNNNNN.png frames");
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] != i) {
      throw SequenceError("frame sequence in " + dir_.string() + " is missing " +
                          frame_filename(i));
    }
  }
  count_ = indices.size();
}

std::optional<Frame> FrameDirReader::next() {
  if (pos_ >= count_) return std::nullopt;
  const fs::path path = dir_ / frame_filename(pos_);
  RgbImage img = read_png(path);
  if (pos_ == 0) {
    height_ = img.height;
    width_ = img.width;
  } else if (img.height != height_ || img.width != width_) {
    throw ShapeError(path.string() + " is " + std::to_string(img.width) + "x" +
                     std::to_string(img.height) + ", expected " + std::to_string(width_) +
                     "x" + std::to_string(height_));
  }
  ++pos_;
  return frame_from_bytes(img.pixels, img.height, img.width);
}

Clip read_frames(const fs::path& dir) {
  FrameDirReader reader(dir);
  std::vector<Frame> frames;
  frames.reserve(reader.frame_count());
  while (auto f = reader.next()) frames.push_back(std::move(*f));
  return Clip(std::move(frames));
}

void write_frames(const Clip& clip, const fs::path& dir) {
  shape_of(clip);
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec)) throw IoError(dir.string() + " exists and is not a directory");
    if (!fs::is_empty(dir, ec)) {
      throw IoError("refusing to write frames into non-empty directory " + dir.string());
    }
  } else if (!fs::create_directories(dir, ec)) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }
  for (std::size_t t = 0; t < clip.size(); ++t) {
    const auto bytes = frame_to_bytes(clip[t]);
    write_png(dir / frame_filename(t), clip[t].height(), clip[t].width(), bytes);
  }
}

bool is_y4m_path(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".y4m";
}

Clip load_clip(const fs::path& path) {
  return is_y4m_path(path) ? read_y4m_file(path) : read_frames(path);
}

void save_clip(const Clip& clip, const fs::path& path) {
  if (is_y4m_path(path)) {
    write_y4m_file(clip, path);
  } else {
    write_frames(clip, path);
  }
}

}  // namespace tempodeg
