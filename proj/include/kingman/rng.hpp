#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace kingman {

/// Reproducible random stream keyed by (seed, stream_id).
///
/// xoshiro256** whose 256-bit state is expanded with SplitMix64 from a key
/// that mixes both identifiers. Every sampler in this library consumes only
/// next_u64(), so a given key yields the same draws on every platform.
/// Streams are single-owner; copy one to fork an identical replay.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1]; safe to pass to log().
  double uniform_pos();
  /// Uniform integer on [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
};

/// Stream id for trial `trial` of sub-experiment `block` in a suite; each block
/// owns 2^32 consecutive ids.
constexpr std::uint64_t block_stream(std::uint64_t block, std::uint64_t trial) {
  return (block << 32) + trial;
}

}  // namespace kingman
