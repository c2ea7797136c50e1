// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "catsketch/core.hpp"
#include "catsketch/model.hpp"

namespace catsketch {

// Batch of d-bit sketches, one row per source point, order-preserving.
struct SketchSet {
  Index n = 0;
  Label c = 0;
  Index d = 0;
  std::optional<std::uint64_t> model_seed;
  std::vector<BinaryVector> rows;

  friend bool operator==(const SketchSet&, const SketchSet&) = default;
};

// Stage 1: bit i of the output is psi[u_i] where u_i != 0, and 0 elsewhere.
BinaryVector bin_em(const CategoricalVector& u, const SketchModel& m);

// Stage 2: output bit j is the OR of input bits i with pi[i] == j.
BinaryVector bin_sketch(const BinaryVector& u_prime, const SketchModel& m);

// Both stages in one pass over the nonzero entries; never materializes the
// n-bit intermediate. Equal to bin_sketch(bin_em(u, m), m).
BinaryVector cabin(const CategoricalVector& u, const SketchModel& m);

// Sketch every point; output is independent of the worker count.
SketchSet sketch_dataset(const Dataset& ds, const SketchModel& m,
                         unsigned workers = 1);

}  // namespace catsketch
