// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#include "catsketch/cham.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "catsketch/parallel.hpp"

namespace catsketch {

namespace {

void check_d(std::size_t d) {
  if (d < 2)
    throw InvalidArgument("estimation needs sketch dimension d >= 2");
}

}  // namespace

DistanceEstimate estimate_cardinality(double w, std::size_t d) {
  check_d(d);
  const double dd = static_cast<double>(d);
  if (!(w >= 0.0) || w > dd)
    throw InvalidArgument("sketch weight " + std::to_string(w) +
                          " outside 0.." + std::to_string(d));
  const double denom = std::log(1.0 - 1.0 / dd);
  const double floor_arg = 0.5 / dd;
  double arg = 1.0 - w / dd;
  bool saturated = false;
  if (arg < floor_arg) {
    arg = floor_arg;
    saturated = true;
  }
  return {std::log(arg) / denom, saturated};
}

DistanceEstimate estimate_binary_hamming_from_counts(double wu, double wv,
                                                     double z00,
                                                     std::size_t d) {
  check_d(d);
  const double dd = static_cast<double>(d);
  if (!(z00 >= 0.0) || z00 > dd)
    throw InvalidArgument("common-zeros count " + std::to_string(z00) +
                          " outside 0.." + std::to_string(d));
  const DistanceEstimate a = estimate_cardinality(wu, d);
  const DistanceEstimate b = estimate_cardinality(wv, d);
  // Union cardinality from the positions zero in both sketches; same
  // half-a-bin floor as above (z00 of 0 would otherwise blow up the log).
  const DistanceEstimate un = estimate_cardinality(dd - z00, d);
  // Grouped so the result is exactly symmetric under swapping u and v.
  double h = 2.0 * un.value - (a.value + b.value);
  if (h < 0.0) h = 0.0;
  return {h, a.saturated || b.saturated || un.saturated};
}

DistanceEstimate estimate_binary_hamming(const BinaryVector& u_s,
                                         const BinaryVector& v_s,
                                         std::size_t d) {
  if (u_s.dim() != d || v_s.dim() != d)
    throw InvalidArgument("sketch dimensions " + std::to_string(u_s.dim()) +
                          "/" + std::to_string(v_s.dim()) +
                          " do not match d=" + std::to_string(d));
  const double ip = static_cast<double>(sketch_inner_product(u_s, v_s));
  const double wu = static_cast<double>(u_s.weight());
  const double wv = static_cast<double>(v_s.weight());
  const double z00 = static_cast<double>(d) - (wu + wv) + ip;
  return estimate_binary_hamming_from_counts(wu, wv, z00, d);
}

DistanceEstimate cham(const BinaryVector& u_s, const BinaryVector& v_s,
                      std::size_t d) {
  const DistanceEstimate e = estimate_binary_hamming(u_s, v_s, d);
  return {2.0 * e.value, e.saturated};
}

DistanceEstimate cham(const BinaryVector& u_s, const BinaryVector& v_s,
                      const SketchModel& m) {
  return cham(u_s, v_s, m.d());
}

SquareMatrix pairwise_estimates(const SketchSet& s, unsigned workers) {
  if (s.rows.empty())
    throw InvalidArgument("pairwise estimation over an empty sketch set");
  check_d(s.d);
  for (const BinaryVector& row : s.rows)
    if (row.dim() != s.d)
      throw InvalidArgument("sketch row dimension " +
                            std::to_string(row.dim()) +
                            " does not match d=" + std::to_string(s.d));
  const std::size_t m = s.rows.size();
  const double dd = static_cast<double>(s.d);
  const double denom = std::log(1.0 - 1.0 / dd);
  const double floor_arg = 0.5 / dd;

  // Per-row cardinalities once; each pair then costs one AND-popcount pass
  // and a single log.
  std::vector<double> card(m);
  for (std::size_t i = 0; i < m; ++i)
    card[i] = estimate_cardinality(
                  static_cast<double>(s.rows[i].weight()), s.d)
                  .value;

  SquareMatrix out(m);
  parallel_for(0, m, workers, [&](std::size_t i) {
    const double wi = static_cast<double>(s.rows[i].weight());
    for (std::size_t j = i + 1; j < m; ++j) {
      const double ip =
          static_cast<double>(sketch_inner_product(s.rows[i], s.rows[j]));
      const double wj = static_cast<double>(s.rows[j].weight());
      double arg = (dd - (wi + wj) + ip) / dd;
      if (arg < floor_arg) arg = floor_arg;
      const double un = std::log(arg) / denom;
      double h = 2.0 * un - (card[i] + card[j]);
      if (h < 0.0) h = 0.0;
      out.at(i, j) = 2.0 * h;
      out.at(j, i) = out.at(i, j);
    }
  });
  return out;
}

}  // namespace catsketch
