#pragma once

#include <cstdint>

#include "tempodeg/clip.hpp"
#include "tempodeg/parallel.hpp"

namespace tempodeg {

/// Procedural test clip: a slowly drifting colour gradient, a moving
/// sinusoidal texture, a few moving discs with sharp edges, and fixed
/// per-pixel grain. Deterministic in (shape, seed).
Clip make_synthetic_clip(const ClipShape& shape, std::uint64_t seed,
                         const Executor& exec = sequential());

}  // namespace tempodeg
