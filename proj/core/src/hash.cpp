#include "tempodeg/hash.hpp"

#include <cstdio>
#include <cstring>

namespace tempodeg {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t state) {
  for (std::uint8_t b : bytes) {
    state ^= b;
    state *= 0x100000001b3ULL;
  }
  return state;
}

namespace {

std::uint64_t feed_u64(std::uint64_t state, std::uint64_t v) {
  std::uint8_t buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return fnv1a64(buf, state);
}

}  // namespace

std::uint64_t clip_digest(const Clip& clip) {
  std::uint64_t h = feed_u64(kFnvOffset, clip.size());
  for (const Frame& f : clip.frames()) {
    h = feed_u64(h, f.height());
    h = feed_u64(h, f.width());
    const auto data = f.data();
    std::vector<std::uint8_t> bytes(data.size() * sizeof(float));
    // Little-endian byte order regardless of host.
    for (std::size_t i = 0; i < data.size(); ++i) {
      std::uint32_t bits;
      std::memcpy(&bits, &data[i], sizeof(bits));
      for (int k = 0; k < 4; ++k) bytes[i * 4 + k] = static_cast<std::uint8_t>(bits >> (8 * k));
    }
    h = fnv1a64(bytes, h);
  }
  return h;
}

std::uint64_t clip_byte_digest(const Clip& clip) {
  const auto bytes = clip_to_bytes(clip);
  return fnv1a64(bytes);
}

std::string hex_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

}  // namespace tempodeg
