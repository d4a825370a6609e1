#pragma once

#include <cstdint>

namespace splab {

// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014). A (seed, stream_id) pair selects the start
// state mix64(seed ^ mix64(stream_id ^ 0xD1B54A32D192ED03)); every draw is
// then fully specified by the 64-bit arithmetic below, so sequences are
// identical on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next();
  // Uniform on {0, ..., bound - 1} by rejection of the 2^64 mod bound lowest outputs.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
};

}  // namespace splab
