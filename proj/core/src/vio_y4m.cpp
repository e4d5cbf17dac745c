#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "tempodeg/error.hpp"
#include "tempodeg/vio.hpp"

namespace tempodeg {

namespace {

constexpr std::size_t kMaxHeaderLine = 4096;

std::uint8_t quantize(double v) {
  const double r = std::round(v);
  return static_cast<std::uint8_t>(r < 0.0 ? 0.0 : (r > 255.0 ? 255.0 : r));
}

bool read_line(std::istream& in, std::string& line) {
  line.clear();
  char c;
  while (in.get(c)) {
    if (c == '\n') return true;
    line.push_back(c);
    if (line.size() > kMaxHeaderLine) throw FormatError("y4m header line too long");
  }
  return !line.empty();
}

}  // namespace

void rgb_to_ycbcr(const std::uint8_t rgb[3], std::uint8_t ycc[3]) {
  const double r = rgb[0], g = rgb[1], b = rgb[2];
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  ycc[0] = quantize(y);
  ycc[1] = quantize(128.0 + (b - y) / 1.772);
  ycc[2] = quantize(128.0 + (r - y) / 1.402);
}

void ycbcr_to_rgb(const std::uint8_t ycc[3], std::uint8_t rgb[3]) {
  const double y = ycc[0];
  const double cb = ycc[1] - 128.0;
  const double cr = ycc[2] - 128.0;
  const double r = y + 1.402 * cr;
  const double b = y + 1.772 * cb;
  const double g = (y - 0.299 * r - 0.114 * b) / 0.587;
  rgb[0] = quantize(r);
  rgb[1] = quantize(g);
  rgb[2] = quantize(b);
}

std::string y4m_header_line(const Y4mHeader& h) {
  std::ostringstream ss;
  ss << "YUV4MPEG2 W" << h.width << " H" << h.height << " F" << h.fps_num << ':' << h.fps_den
     << " Ip A1:1 C444";
  return ss.str();
}

Y4mReader::Y4mReader(std::istream& in) : in_(in) {
  std::string line;
  if (!read_line(in_, line)) throw FormatError("empty y4m stream");
  std::istringstream ss(line);
  std::string tok;
  ss >> tok;
  if (tok != "YUV4MPEG2") throw FormatError("missing YUV4MPEG2 signature");
  std::string chroma = "420jpeg";  // the container's default when C is absent
  bool have_w = false, have_h = false;
  try {
    while (ss >> tok) {
      const std::string val = tok.substr(1);
      switch (tok[0]) {
        case 'W':
          header_.width = std::stoul(val);
          have_w = true;
          break;
        case 'H':
          header_.height = std::stoul(val);
          have_h = true;
          break;
        case 'F': {
          const auto colon = val.find(':');
          if (colon == std::string::npos) throw FormatError("bad frame rate " + tok);
          header_.fps_num = std::stoi(val.substr(0, colon));
          header_.fps_den = std::stoi(val.substr(colon + 1));
          break;
        }
        case 'C':
          chroma = val;
          break;
        case 'I':
          if (val != "p" && val != "?") throw FormatError("interlaced y4m is not supported");
          break;
        default:
          break;  // A, X and unknown tags carry nothing we need
      }
    }
  } catch (const std::logic_error&) {
    throw FormatError("malformed y4m header: " + line);
  }
  if (!have_w || !have_h || header_.width == 0 || header_.height == 0) {
    throw FormatError("y4m header lacks frame dimensions");
  }
  if (chroma.rfind("444", 0) != 0 || chroma == "444alpha") {
    throw FormatError("unsupported y4m chroma C" + chroma + " (only C444 is accepted)");
  }
}

std::optional<Frame> Y4mReader::next() {
  std::string line;
  if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;
  if (!read_line(in_, line) || line.rfind("FRAME", 0) != 0) {
    throw FormatError("expected FRAME marker before frame " + std::to_string(frames_read_));
  }
  const std::size_t plane = header_.width * header_.height;
  std::vector<std::uint8_t> payload(plane * 3);
  in_.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(in_.gcount()) != payload.size()) {
    throw FormatError("truncated y4m frame " + std::to_string(frames_read_));
  }
  std::vector<std::uint8_t> rgb(plane * 3);
  for (std::size_t i = 0; i < plane; ++i) {
    const std::uint8_t ycc[3] = {payload[i], payload[plane + i], payload[2 * plane + i]};
    ycbcr_to_rgb(ycc, &rgb[i * 3]);
  }
  ++frames_read_;
  return frame_from_bytes(rgb, header_.height, header_.width);
}

Clip read_y4m(std::istream& in) {
  Y4mReader reader(in);
  std::vector<Frame> frames;
  while (auto f = reader.next()) frames.push_back(std::move(*f));
  if (frames.empty()) throw FormatError("y4m stream has no frames");
  return Clip(std::move(frames));
}

void write_y4m(const Clip& clip, std::ostream& out, int fps_num, int fps_den) {
  const ClipShape shape = shape_of(clip);
  if (fps_num <= 0 || fps_den <= 0) throw ParameterError("frame rate must be positive");
  out << y4m_header_line({shape.width, shape.height, fps_num, fps_den}) << '\n';
  const std::size_t plane = shape.width * shape.height;
  std::vector<std::uint8_t> payload(plane * 3);
  for (const Frame& f : clip.frames()) {
    const auto rgb = frame_to_bytes(f);
    for (std::size_t i = 0; i < plane; ++i) {
      std::uint8_t ycc[3];
      rgb_to_ycbcr(&rgb[i * 3], ycc);
      payload[i] = ycc[0];
      payload[plane + i] = ycc[1];
      payload[2 * plane + i] = ycc[2];
    }
    out << "FRAME\n";
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
  }
}

Clip read_y4m_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_y4m(in);
}

void write_y4m_file(const Clip& clip, const std::filesystem::path& path, int fps_num,
                    int fps_den) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path.string());
  write_y4m(clip, out, fps_num, fps_den);
  out.flush();
  if (!out) throw IoError("writing " + path.string() + " failed");
}

}  // namespace tempodeg
