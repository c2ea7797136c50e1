// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

// Counter-based randomness. Every random decision in the library is a pure
// function of (seed, stream, counter), so models and samples can be rebuilt
// bit-for-bit from the seed alone, with no generator state to carry around
// and no dependence on evaluation order or thread count.

namespace catsketch::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t chain(std::uint64_t h, std::uint64_t x) noexcept {
  return mix64(h + kGolden * (x + 1));
}

// k-th word of the named stream.
constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t k) noexcept {
  return chain(chain(seed, stream), k);
}

// Unbiased draw in [0, bound) via 128-bit multiply with rejection; rejected
// attempts fold the attempt counter back into the hash chain.
inline std::uint64_t bounded(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t k, std::uint64_t bound) {
  const std::uint64_t base = chain(chain(seed, stream), k);
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t r = attempt == 0 ? mix64(base) : chain(base, attempt);
    const unsigned __int128 m = static_cast<unsigned __int128>(r) * bound;
    if (static_cast<std::uint64_t>(m) >= threshold)
      return static_cast<std::uint64_t>(m >> 64);
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double unit_real(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t k) {
  return static_cast<double>(draw(seed, stream, k) >> 11) * 0x1.0p-53;
}

// Stream tags. Values are part of the on-disk model contract: a model built
// from (seed, n, c, d) must reproduce forever.
enum Stream : std::uint64_t {
  kPsi = 1,            // label -> bit table
  kPi = 2,             // position -> bucket table
  kFhBucket = 3,       // feature-hash bucket per position
  kFhSign = 4,         // feature-hash sign per position
  kShSign = 5,         // simhash sign per (output bit, position)
  kHlshSample = 6,     // coordinate subsample
  kDatasetSample = 7,  // point subsample
  kKmodesInit = 8,     // seeding choices
  kPairSample = 9,     // evaluation pair subsample
  kTrial = 10,         // per-trial model seeds in repeated experiments
};

}  // namespace catsketch::rng
