#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace tempodeg {

struct RgbImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> pixels;  // height*width*3, row-major RGB
};

/// 8-bit RGB PNG. Throws IoError when the file cannot be written.
void write_png(const std::filesystem::path& path, std::size_t height, std::size_t width,
               std::span<const std::uint8_t> rgb);

/// Decodes any 8/16-bit PNG to 8-bit RGB (alpha dropped, gray expanded).
/// Throws IoError when the file cannot be opened, FormatError when it is not
/// a decodable PNG.
RgbImage read_png(const std::filesystem::path& path);

}  // namespace tempodeg
