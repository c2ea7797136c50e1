// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "catsketch/cabin.hpp"
#include "catsketch/core.hpp"

namespace catsketch {

struct ClusterAssignment {
  std::vector<Index> labels;  // per point, cluster ids 1..k
  std::size_t k = 0;
  double cost = 0.0;  // sum of Hamming distances to assigned modes
  std::vector<CategoricalVector> modes;
  std::vector<double> iteration_costs;  // cost after each Lloyd iteration
};

// Lloyd-style k-modes under Hamming distance. Assignment ties break to the
// lowest cluster id; each mode attribute is the most frequent value among
// members with 0 competing like any label, ties to the smallest value.
// Starting modes are sampled by distance-weighted (D^1) seeding. A cluster
// left empty by an assignment pass is reseeded with the point farthest from
// its assigned mode (ties to the lowest point index). Terminates on an
// assignment fixpoint or after max_iter rounds; cost never increases.
ClusterAssignment kmodes(const Dataset& ds, std::size_t k,
                         std::uint64_t seed, std::size_t max_iter = 100,
                         unsigned workers = 1);
// Same algorithm over sketch rows, which live in Hamming space as 0/1
// categorical vectors.
ClusterAssignment kmodes(const SketchSet& s, std::size_t k,
                         std::uint64_t seed, std::size_t max_iter = 100,
                         unsigned workers = 1);

// Labels-only assignment (e.g. parsed from a file); k is the largest id,
// cost and modes are empty.
ClusterAssignment assignment_from_labels(std::vector<Index> labels);

// Fraction of points covered by the best predicted cluster per truth
// cluster: (1/m) * sum_i max_j |truth_i intersect pred_j|.
double purity(const ClusterAssignment& truth, const ClusterAssignment& pred);

// Mutual information in nats, with 0*log(0) := 0.
double mutual_information(const ClusterAssignment& truth,
                          const ClusterAssignment& pred);

// Mutual information normalized by the mean of the two partition entropies;
// 1.0 by convention when both entropies are zero.
double nmi(const ClusterAssignment& truth, const ClusterAssignment& pred);

// Adjusted Rand index from the contingency table; 1.0 by convention when
// the denominator vanishes (both partitions trivial).
double ari(const ClusterAssignment& truth, const ClusterAssignment& pred);

}  // namespace catsketch
