#pragma once

#include <cstdint>

#include "fdrt/gauss.hpp"

namespace fdrt {

namespace rng_detail {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace rng_detail

// Counter-based stream generator. Output i of stream (seed, stream) is
//   mix64(base + (i+1) * GAMMA),   base = mix64(mix64(seed) + (stream+1) * GAMMA),
// with GAMMA the SplitMix64 golden-gamma increment. A draw is a pure function
// of (seed, stream, i), so replicate streams can be evaluated in any order and
// on any worker while reproducing bit for bit.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(rng_detail::mix64(rng_detail::mix64(seed) +
                                (stream + 1) * rng_detail::kGamma)) {}

  std::uint64_t next_u64() { return rng_detail::mix64(base_ + (++i_) * rng_detail::kGamma); }

  // Uniform on [2^-54, 1 - 2^-54]: the top 53 bits plus a half-ulp offset,
  // symmetric about 1/2 and never exactly 0 or 1.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  // Inverse-CDF transform; quantile() maps uniform draws to exact standard
  // normal variates within quantile's own tolerance.
  double next_gaussian() { return quantile(next_uniform()); }

 private:
  std::uint64_t base_;
  std::uint64_t i_ = 0;
};

}  // namespace fdrt
