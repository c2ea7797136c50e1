// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "catsketch/cabin.hpp"
#include "catsketch/core.hpp"
#include "catsketch/model.hpp"

namespace catsketch {

// Real-valued estimate. `saturated` is set when a logarithm argument had to
// be clamped (full sketch or no common zeros); the value is then the
// documented clamp output rather than a plug-in inverse.
struct DistanceEstimate {
  double value = 0.0;
  bool saturated = false;
};

// Inverts E[|sketch|] = d(1 - (1 - 1/d)^a): how many distinct set bits fed
// an OR-sketch of weight w. Fractional w is accepted so the expectation
// identity can be checked directly. The log argument 1 - w/d is floored at
// 1/(2d) (half a bin), which fires exactly at w == d for integer weights.
DistanceEstimate estimate_cardinality(double w, std::size_t d);

// Plug-in estimator from the sufficient statistics of a sketch pair:
//   a_hat = estimate_cardinality(wu),  b_hat = estimate_cardinality(wv),
//   u_hat = estimate_cardinality(d - z00)   (z00 = positions zero in both),
//   h_hat = max(0, 2*u_hat - a_hat - b_hat).
// Estimates the Hamming distance between the pre-compression binary vectors.
DistanceEstimate estimate_binary_hamming_from_counts(double wu, double wv,
                                                     double z00,
                                                     std::size_t d);
DistanceEstimate estimate_binary_hamming(const BinaryVector& u_s,
                                         const BinaryVector& v_s,
                                         std::size_t d);

// Estimated categorical Hamming distance: twice the binary estimate,
// undoing the expected halving of the bit-table stage.
DistanceEstimate cham(const BinaryVector& u_s, const BinaryVector& v_s,
                      std::size_t d);
DistanceEstimate cham(const BinaryVector& u_s, const BinaryVector& v_s,
                      const SketchModel& m);

// Symmetric matrix of cham values, zero diagonal, each unordered pair
// computed once. Worker count never changes the result.
SquareMatrix pairwise_estimates(const SketchSet& s, unsigned workers = 1);

}  // namespace catsketch
