// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "catsketch/core.hpp"

namespace catsketch {

enum class BaselineMethod { FeatureHash, SimHash, HammingLsh };

// File tags: "FH", "SH", "HLSH".
const char* to_string(BaselineMethod method);
BaselineMethod baseline_method_from_string(std::string_view tag);

// One reduced-dimension baseline sketch. Exactly the payload matching
// `method` is populated; HLSH also carries the sampled coordinate list so a
// pair of sketches can prove they share one sample.
struct BaselineSketch {
  BaselineMethod method = BaselineMethod::FeatureHash;
  Index d = 0;
  Index n = 0;
  std::vector<std::int64_t> counts;  // FeatureHash buckets
  BinaryVector bits;                 // SimHash signs
  std::vector<Label> labels;         // HammingLsh values at sampled indices
  std::vector<Index> indices;        // HammingLsh sampled coordinates

  friend bool operator==(const BaselineSketch&, const BaselineSketch&) =
      default;
};

// Seed-derived coordinate maps, exposed so constructions are testable
// coordinate by coordinate.
Index fh_bucket(std::uint64_t seed, Index position, Index d);  // 1..d
int fh_sign(std::uint64_t seed, Index position);               // +1 or -1
int sh_sign(std::uint64_t seed, Index output_bit, Index position);
// Uniform sample of d coordinates from 1..n without replacement, ascending.
std::vector<Index> hlsh_sample_indices(Index n, Index d, std::uint64_t seed);

// Bucket j accumulates sign(i) * label over entries with bucket(i) == j.
BaselineSketch feature_hash_sketch(const CategoricalVector& u, Index d,
                                   std::uint64_t seed);
// Bit j is 1 iff the signed sum over entries with Rademacher signs r_j(i)
// is strictly positive; a zero sum resolves to 0.
BaselineSketch simhash_sketch(const CategoricalVector& u, Index d,
                              std::uint64_t seed);
// Restriction of u to the sampled coordinates (shared by every point
// sketched under one seed).
BaselineSketch hlsh_sketch(const CategoricalVector& u,
                           std::span<const Index> indices);
BaselineSketch hlsh_sketch(const CategoricalVector& u, Index d,
                           std::uint64_t seed);

// Uniform rule for all three methods: payload coordinate disagreements
// scaled by n/d back to the full dimension.
double baseline_estimate_hamming(const BaselineSketch& a,
                                 const BaselineSketch& b);

struct BaselineSketchSet {
  BaselineMethod method = BaselineMethod::FeatureHash;
  Index d = 0;
  Index n = 0;
  std::uint64_t seed = 0;
  std::vector<Index> sample_indices;  // HammingLsh only
  std::vector<BaselineSketch> rows;

  friend bool operator==(const BaselineSketchSet&, const BaselineSketchSet&) =
      default;
};

BaselineSketchSet baseline_sketch_dataset(const Dataset& ds,
                                          BaselineMethod method, Index d,
                                          std::uint64_t seed,
                                          unsigned workers = 1);

// Symmetric matrix of baseline estimates, zero diagonal.
SquareMatrix baseline_pairwise_estimates(const BaselineSketchSet& s,
                                         unsigned workers = 1);

}  // namespace catsketch
