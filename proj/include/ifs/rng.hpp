#pragma once

#include <cstdint>

namespace ifs {

// Deterministic pseudo-random source: PCG32 (XSH-RR 64/32, "setseq" variant,
// O'Neill 2014). Chosen because it is tiny, integer-only (bit-identical on
// every platform), and natively splittable: the stream selector picks one of
// 2^63 independent sequences for a common seed, which is how substreams are
// keyed by (seed, stream_index) throughout the library.
//
// Reference vector, frozen so independent implementations can match:
//   Pcg32 r(42, 54) produces
//     0xa15c02b7 0x7b47f409 0xba1d3330 0x83d2f293 0xbfa4784b 0xcbed606e
// (first six 32-bit outputs; identical to the published pcg32 demo output
// for initstate=42, initseq=54).
class Pcg32 {
 public:
  Pcg32(std::uint64_t seed, std::uint64_t stream) : state_(0), inc_((stream << 1u) | 1u) {
    next_u32();
    state_ += seed;
    next_u32();
  }

  std::uint32_t next_u32() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    std::uint32_t xsh = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xsh >> rot) | (xsh << ((-rot) & 31u));
  }

  std::uint64_t next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform double in [0, 1), 53 random bits: (u64 >> 11) * 2^-53.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, bound) by rejection.
  std::uint32_t next_below(std::uint32_t bound) {
    std::uint32_t threshold = (-bound) % bound;
    for (;;) {
      std::uint32_t r = next_u32();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

}  // namespace ifs
