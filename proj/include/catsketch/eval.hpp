// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catsketch/baselines.hpp"
#include "catsketch/cham.hpp"
#include "catsketch/core.hpp"

namespace catsketch {

enum class Method { Exact, Cabin, FeatureHash, SimHash, HammingLsh };
const char* to_string(Method method);
Method method_from_string(std::string_view tag);

struct EvalReport {
  std::string method;
  std::size_t d = 0;
  std::size_t pairs = 0;  // pair count, or trial count for trial reports
  double rmse = 0.0;
  double mae = 0.0;
  double mean_err = 0.0;  // mean signed error
  double variance = 0.0;  // rmse^2 - mean_err^2
  std::array<double, 5> quantiles{};  // 5/25/50/75/95% of signed error
  // Wall time; informational only, never written into report files so runs
  // stay byte-reproducible.
  double sketch_ms = 0.0;
  double estimate_ms = 0.0;
};

// Signed error: true Hamming distance minus the estimate.
double hamming_error(const CategoricalVector& u, const CategoricalVector& v,
                     double estimate);

// Order-fixed tree reduction; result is independent of how the inputs were
// produced, so multi-worker runs reproduce to the last bit.
double pairwise_sum(std::span<const double> xs);

// 5/25/50/75/95% by linear interpolation between order statistics.
std::array<double, 5> error_quantiles(std::vector<double> xs);

// All C(m,2) index pairs (i < j, lexicographic) when budget is 0 or covers
// them; otherwise a uniform seeded sample without replacement, ascending.
std::vector<std::pair<Index, Index>> sample_pairs(std::size_t m,
                                                  std::size_t budget,
                                                  std::uint64_t seed);

using PairEstimator = std::function<double(std::size_t, std::size_t)>;

// Error statistics of an arbitrary pair estimator over sampled pairs.
EvalReport evaluate_pairs(const Dataset& ds, const PairEstimator& estimate,
                          std::span<const std::pair<Index, Index>> pairs,
                          unsigned workers, std::string method_tag,
                          std::size_t d);

// Sketch the corpus with the named method, then evaluate its estimates.
// Exact uses the true distances (zero error) and ignores d.
EvalReport evaluate_method(const Dataset& ds, Method method, std::size_t d,
                           std::uint64_t seed, std::size_t pair_budget,
                           unsigned workers = 1);

double rmse(const Dataset& ds, Method method, std::size_t d,
            std::uint64_t seed, std::size_t pair_budget,
            unsigned workers = 1);
double mae(const Dataset& ds, Method method, std::size_t d,
           std::uint64_t seed, std::size_t pair_budget, unsigned workers = 1);

// True pairwise Hamming distances (the heatmap ground truth).
SquareMatrix exact_pairwise_distances(const Dataset& ds,
                                      unsigned workers = 1);

// Full matrix, row-major, 6 significant digits per cell.
void write_matrix_csv(const SquareMatrix& m, std::ostream& out);
// 8-bit binary PGM (P5), min-max normalized to 0..255 with ties-to-even
// rounding; a degenerate range renders all zeros.
void write_matrix_pgm(const SquareMatrix& m, std::ostream& out);

enum class TrialMethod { BinEm, Cabin, FeatureHash, SimHash, HammingLsh };
const char* to_string(TrialMethod method);
TrialMethod trial_method_from_string(std::string_view tag);

// Repeats the sketch-and-estimate experiment on one fixed pair with fresh
// seed-derived randomness per trial (fresh bit table for BinEm, fresh full
// model or baseline maps otherwise) and reports the signed-error spread.
EvalReport trial_statistics(const CategoricalVector& u,
                            const CategoricalVector& v, TrialMethod method,
                            std::size_t d, std::size_t trials,
                            std::uint64_t seed);

// Per-trial metric is the mean absolute error over sampled pairs of the
// corpus; statistics are taken across trials.
EvalReport trial_statistics_all_pairs(const Dataset& ds, TrialMethod method,
                                      std::size_t d, std::size_t trials,
                                      std::uint64_t seed,
                                      std::size_t pair_budget,
                                      unsigned workers = 1);

// Flat key=value block / CSV row. Timings are deliberately absent.
void write_report_block(const EvalReport& report, std::ostream& out);
void write_report_csv_header(std::ostream& out);
void write_report_csv_row(const EvalReport& report, std::ostream& out);

}  // namespace catsketch
