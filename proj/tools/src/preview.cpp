#include <array>
#include <cmath>
#include <string>

#include "tempodeg/cli/cli.hpp"
#include "tempodeg/error.hpp"
#include "tempodeg/protocol.hpp"
#include "tempodeg/resample.hpp"

namespace tempodeg::cli {

namespace {

constexpr std::size_t kMargin = 8;
constexpr std::size_t kGlyphScale = 2;
constexpr std::size_t kGlyphW = 3;
constexpr std::size_t kGlyphH = 5;
constexpr std::uint8_t kBackground = 32;
constexpr std::uint8_t kInk = 235;

// 3x5 digit bitmaps, one row per 3-bit group, MSB on the left.
constexpr std::array<std::array<std::uint8_t, kGlyphH>, 10> kDigits{{
    {7, 5, 5, 5, 7},  // 0
    {2, 6, 2, 2, 7},  // 1
    {7, 1, 7, 4, 7},  // 2
    {7, 1, 7, 1, 7},  // 3
    {5, 5, 7, 1, 1},  // 4
    {7, 4, 7, 1, 7},  // 5
    {7, 4, 7, 5, 7},  // 6
    {7, 1, 1, 1, 1},  // 7
    {7, 5, 7, 5, 7},  // 8
    {7, 5, 7, 1, 7},  // 9
}};

void draw_number(RgbImage& img, std::size_t x0, std::size_t y0, std::size_t value) {
  const std::string digits = std::to_string(value);
  const std::size_t advance = (kGlyphW + 1) * kGlyphScale;
  for (std::size_t d = 0; d < digits.size(); ++d) {
    const auto& glyph = kDigits[static_cast<std::size_t>(digits[d] - '0')];
    for (std::size_t gy = 0; gy < kGlyphH; ++gy) {
      for (std::size_t gx = 0; gx < kGlyphW; ++gx) {
        if (!((glyph[gy] >> (kGlyphW - 1 - gx)) & 1)) continue;
        for (std::size_t sy = 0; sy < kGlyphScale; ++sy) {
          for (std::size_t sx = 0; sx < kGlyphScale; ++sx) {
            const std::size_t x = x0 + d * advance + gx * kGlyphScale + sx;
            const std::size_t y = y0 + gy * kGlyphScale + sy;
            if (x >= img.width || y >= img.height) continue;
            std::uint8_t* px = &img.pixels[(y * img.width + x) * 3];
            px[0] = px[1] = px[2] = kInk;
          }
        }
      }
    }
  }
}

void blit(RgbImage& img, const Frame& thumb, std::size_t x0, std::size_t y0) {
  const auto bytes = frame_to_bytes(thumb);
  for (std::size_t y = 0; y < thumb.height(); ++y) {
    std::copy_n(&bytes[y * thumb.width() * 3], thumb.width() * 3,
                &img.pixels[((y0 + y) * img.width + x0) * 3]);
  }
}

Frame thumbnail(const Frame& f, std::size_t h, std::size_t w) {
  if (h <= f.height() && w <= f.width()) return area_resize(f, h, w);
  return bilinear_resize(f, h, w);
}

}  // namespace

std::size_t SheetLayout::cell_x(std::size_t column) const {
  return margin + column * (thumb_width + margin);
}

std::size_t SheetLayout::cell_y(std::size_t row) const {
  return margin + label_height + row * (thumb_height + margin);
}

SheetLayout contact_sheet_layout(const ClipShape& shape, std::size_t n, std::size_t thumb_width) {
  if (thumb_width == 0) throw ParameterError("thumbnail width must be positive");
  SheetLayout l;
  l.margin = kMargin;
  l.label_height = kGlyphH * kGlyphScale + 6;
  l.thumb_width = thumb_width;
  l.thumb_height = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(static_cast<double>(thumb_width) *
                                              static_cast<double>(shape.height) /
                                              static_cast<double>(shape.width))));
  l.columns = n;
  l.width = l.margin + n * (l.thumb_width + l.margin);
  l.height = l.cell_y(2);
  return l;
}

RgbImage render_contact_sheet(const Clip& clean, const Clip& degraded, std::size_t n,
                              std::size_t thumb_width) {
  const ClipShape shape = shape_of(clean);
  if (!(shape == shape_of(degraded))) {
    throw ShapeError("clean clip is " + to_string(shape) + " but degraded clip is " +
                     to_string(shape_of(degraded)));
  }
  const std::vector<std::size_t> frames = uniform_frame_indices(shape.frames, n);
  const SheetLayout l = contact_sheet_layout(shape, n, thumb_width);

  RgbImage img;
  img.height = l.height;
  img.width = l.width;
  img.pixels.assign(img.height * img.width * 3, kBackground);
  for (std::size_t c = 0; c < frames.size(); ++c) {
    const std::size_t t = frames[c];
    draw_number(img, l.cell_x(c), l.margin, t);
    blit(img, thumbnail(clean[t], l.thumb_height, l.thumb_width), l.cell_x(c), l.cell_y(0));
    blit(img, thumbnail(degraded[t], l.thumb_height, l.thumb_width), l.cell_x(c), l.cell_y(1));
  }
  return img;
}

}  // namespace tempodeg::cli
