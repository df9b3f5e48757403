#pragma once

#include <cmath>
#include <cstdint>

namespace uavscf {

// 64-bit finalizer used both as the stream mixer and the output function.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Counter-based splitmix64 stream. Output i of a stream with key k is
// mix64(k + (i+1)*GOLDEN), so any draw is a pure function of (key, counter)
// and identical on every platform. Sub-streams are derived by hashing a tag
// into the key, which lets trials, UAVs and observers draw independently
// without sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key), counter_(0) {}

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ull;  // golden-ratio increment
    return mix64(key_ + counter_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Exponential with the given rate, via inversion.
  double exponential(double rate) {
    double u = next_unit();
    return -std::log1p(-u) / rate;
  }

  // Independent child stream; does not advance this stream.
  Rng fork(std::uint64_t tag) const {
    return Rng(mix64(key_ ^ mix64(tag + 0x6A09E667F3BCC909ull)));
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

// Canonical stream for a (seed, trial, purpose) triple.
inline Rng trial_stream(std::uint64_t seed, std::uint64_t trial,
                        std::uint64_t purpose) {
  return Rng(seed).fork(trial).fork(purpose);
}

// Purpose tags for trial sub-streams.
namespace stream {
inline constexpr std::uint64_t positions = 1;
inline constexpr std::uint64_t dispatch = 2;
inline constexpr std::uint64_t observers = 3;
inline constexpr std::uint64_t data_arrivals = 4;
}  // namespace stream

}  // namespace uavscf
