#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tempodeg {

/// Identifies one random stream: the run seed, the slot of the operator that
/// consumes it (0 for recipe-level draws), and a purpose tag.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint32_t op_index = 0;
  std::string purpose;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Counter-based stream: draw i is a pure function of (key, i), so the value
/// of any draw does not depend on what other streams consumed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi] (inclusive).
  int uniform_int(int lo, int hi);
  /// Float drawn from [lo, hi] and nudged to a representable float inside
  /// the closed interval.
  float uniform_float(double lo, double hi);

  /// Independent child stream (e.g. one per control point).
  RandomStream fork(std::uint64_t index) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

RandomStream derive_stream(std::uint64_t seed, std::uint32_t op_index,
                           std::string_view purpose);
RandomStream derive_stream(const StreamKey& key);

/// SplitMix64 finalizer; exposed for hashing keys.
std::uint64_t mix64(std::uint64_t z);

/// Largest float <= hi and smallest float >= lo, then clamps v into them.
/// When the interval holds no float, returns the float nearest lo.
float float_within(double v, double lo, double hi);

}  // namespace tempodeg
