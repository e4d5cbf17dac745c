#include "tempodeg/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tempodeg {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int RandomStream::uniform_int(int lo, int hi) {
  if (hi <= lo) return lo;
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
  // Multiply-shift range reduction; bias is below 2^-32 for the spans used here.
  const auto hi_bits = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * span) >> 64);
  return lo + static_cast<int>(hi_bits);
}

float RandomStream::uniform_float(double lo, double hi) {
  return float_within(uniform(lo, hi), lo, hi);
}

RandomStream RandomStream::fork(std::uint64_t index) const {
  return RandomStream(mix64(key_ ^ mix64(index + kGolden)));
}

RandomStream derive_stream(std::uint64_t seed, std::uint32_t op_index,
                           std::string_view purpose) {
  std::uint64_t k = mix64(seed + kGolden);
  k = mix64(k ^ (static_cast<std::uint64_t>(op_index) * 0xd1b54a32d192ed03ULL));
  k = mix64(k ^ fnv1a(purpose));
  return RandomStream(k);
}

RandomStream derive_stream(const StreamKey& key) {
  return derive_stream(key.seed, key.op_index, key.purpose);
}

float float_within(double v, double lo, double hi) {
  constexpr float kInf = std::numeric_limits<float>::infinity();
  float flo = static_cast<float>(lo);
  if (static_cast<double>(flo) < lo) flo = std::nextafter(flo, kInf);
  float fhi = static_cast<float>(hi);
  if (static_cast<double>(fhi) > hi) fhi = std::nextafter(fhi, -kInf);
  if (flo > fhi) return static_cast<float>(lo);
  return std::clamp(static_cast<float>(v), flo, fhi);
}

}  // namespace tempodeg
