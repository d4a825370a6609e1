#include "splab/rng.hpp"

#include "splab/errors.hpp"

namespace splab {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t RngStream::mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), state_(mix64(seed ^ mix64(stream_id ^ kStreamSalt))) {}

std::uint64_t RngStream::next() {
  state_ += kGamma;
  return mix64(state_);
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw ParameterError("uniform_below needs a positive bound");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double RngStream::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace splab
