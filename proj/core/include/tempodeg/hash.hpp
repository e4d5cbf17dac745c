#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "tempodeg/clip.hpp"

namespace tempodeg {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t state = kFnvOffset);

/// FNV-1a over the shape and the exact float bit patterns of every sample.
std::uint64_t clip_digest(const Clip& clip);
/// FNV-1a over clip_to_bytes(clip).
std::uint64_t clip_byte_digest(const Clip& clip);

/// 16 lowercase hex digits.
std::string hex_digest(std::uint64_t digest);

}  // namespace tempodeg
