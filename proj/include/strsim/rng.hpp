#pragma once
// Deterministic random streams.
//
// Two flavours are used throughout the simulator:
//  - Stream: a SplitMix64 sequence. One per node/purpose, so consuming a
//    draw in one stream never shifts the draws of another.
//  - keyed_u01 / keyed_exp: counter-based draws addressed by
//    (seed, a, b, c). Used for per-link fading so paired runs observe
//    identical gains for the same (tx, rx, attempt) regardless of how
//    their slot histories diverge.

#include <cstdint>
#include <cmath>

namespace strsim {

inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive combine for deriving child seeds and keyed draws.
inline uint64_t hash_mix(uint64_t h, uint64_t v) {
  return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

struct Stream {
  uint64_t state = 0;

  Stream() = default;
  explicit Stream(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1).
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0,1]; safe as a log() argument.
  double u01_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, n); Lemire's multiply-shift rejection.
  uint64_t below(uint64_t n) {
    if (n == 0) return 0;
    while (true) {
      uint64_t x = next();
      __uint128_t m = static_cast<__uint128_t>(x) * n;
      uint64_t lo = static_cast<uint64_t>(m);
      if (lo >= n || lo >= (0 - n) % n) return static_cast<uint64_t>(m >> 64);
    }
  }

  // Exponential with unit mean.
  double exp1() { return -std::log(u01_pos()); }
};

inline Stream substream(uint64_t seed, uint64_t purpose, uint64_t index = 0) {
  uint64_t h = mix64(seed + 0x632be59bd9b4e019ULL);
  h = hash_mix(h, purpose);
  h = hash_mix(h, index);
  return Stream(h);
}

// Stateless keyed draws.
inline uint64_t keyed_u64(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
  h = hash_mix(h, a);
  h = hash_mix(h, b);
  h = hash_mix(h, c);
  return h;
}

inline double keyed_u01_pos(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return static_cast<double>((keyed_u64(seed, a, b, c) >> 11) + 1) * 0x1.0p-53;
}

// Unit-mean exponential fading gain for one (tx, rx, attempt) triple.
inline double keyed_exp(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  return -std::log(keyed_u01_pos(seed, a, b, c));
}

}  // namespace strsim
