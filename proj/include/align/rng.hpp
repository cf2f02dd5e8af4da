#pragma once

#include <cstdint>

namespace align {

// SplitMix64 finalizer: bijective mix of a 64-bit word.
inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// SplitMix64 generator. Output i is mix64(seed + (i+1) * golden gamma), so
// the stream is a pure function of (seed, counter) and is reproducible
// independently of scheduling.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return mix64(state_ += 0x9E3779B97F4A7C15ull); }

  // uniform in [0, 1), 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // integer in [0, n)
  uint64_t below(uint64_t n) { return next_u64() % n; }

 private:
  uint64_t state_;
};

// Derives the seed of sub-stream (a, b) of a master seed by chaining the
// SplitMix64 step. Replicate r of cell c under master seed S always gets the
// same stream, no matter how work is scheduled across threads.
inline uint64_t derive_stream(uint64_t master, uint64_t a, uint64_t b = 0) {
  uint64_t k = mix64(master + 0x9E3779B97F4A7C15ull);
  k = mix64((k ^ a) + 0x9E3779B97F4A7C15ull);
  k = mix64((k ^ b) + 0x9E3779B97F4A7C15ull);
  return k;
}

}  // namespace align
