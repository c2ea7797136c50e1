// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#include "catsketch/baselines.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>
#include <utility>

#include "catsketch/parallel.hpp"
#include "catsketch/rng.hpp"

namespace catsketch {

const char* to_string(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::FeatureHash:
      return "FH";
    case BaselineMethod::SimHash:
      return "SH";
    case BaselineMethod::HammingLsh:
      return "HLSH";
  }
  throw InvalidArgument("unknown baseline method");
}

BaselineMethod baseline_method_from_string(std::string_view tag) {
  if (tag == "FH") return BaselineMethod::FeatureHash;
  if (tag == "SH") return BaselineMethod::SimHash;
  if (tag == "HLSH") return BaselineMethod::HammingLsh;
  throw InvalidArgument("unknown baseline method '" + std::string(tag) + "'");
}

Index fh_bucket(std::uint64_t seed, Index position, Index d) {
  return static_cast<Index>(1 + rng::bounded(seed, rng::kFhBucket, position,
                                             d));
}

int fh_sign(std::uint64_t seed, Index position) {
  return (rng::draw(seed, rng::kFhSign, position) & 1) ? 1 : -1;
}

int sh_sign(std::uint64_t seed, Index output_bit, Index position) {
  const std::uint64_t k =
      (static_cast<std::uint64_t>(output_bit) << 32) | position;
  return (rng::draw(seed, rng::kShSign, k) & 1) ? 1 : -1;
}

std::vector<Index> hlsh_sample_indices(Index n, Index d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("sample size must be >= 1");
  if (d > n)
    throw InvalidArgument("sample size " + std::to_string(d) +
                          " exceeds dimension " + std::to_string(n));
  std::unordered_set<Index> chosen;
  chosen.reserve(d);
  for (Index j = n - d + 1; j <= n; ++j) {
    const Index t =
        static_cast<Index>(1 + rng::bounded(seed, rng::kHlshSample, j, j));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<Index> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

BaselineSketch feature_hash_sketch(const CategoricalVector& u, Index d,
                                   std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("sketch dimension d must be >= 1");
  BaselineSketch s;
  s.method = BaselineMethod::FeatureHash;
  s.d = d;
  s.n = u.dim();
  s.counts.assign(d, 0);
  for (const Entry& e : u.entries())
    s.counts[fh_bucket(seed, e.index, d) - 1] +=
        static_cast<std::int64_t>(fh_sign(seed, e.index)) * e.label;
  return s;
}

BaselineSketch simhash_sketch(const CategoricalVector& u, Index d,
                              std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("sketch dimension d must be >= 1");
  BaselineSketch s;
  s.method = BaselineMethod::SimHash;
  s.d = d;
  s.n = u.dim();
  s.bits = BinaryVector(d);
  for (Index j = 1; j <= d; ++j) {
    std::int64_t sum = 0;
    for (const Entry& e : u.entries())
      sum += static_cast<std::int64_t>(sh_sign(seed, j, e.index)) * e.label;
    if (sum > 0) s.bits.set(j);
  }
  return s;
}

BaselineSketch hlsh_sketch(const CategoricalVector& u,
                           std::span<const Index> indices) {
  BaselineSketch s;
  s.method = BaselineMethod::HammingLsh;
  s.d = static_cast<Index>(indices.size());
  s.n = u.dim();
  s.indices.assign(indices.begin(), indices.end());
  s.labels.reserve(indices.size());
  for (Index idx : indices) s.labels.push_back(u.at(idx));
  return s;
}

BaselineSketch hlsh_sketch(const CategoricalVector& u, Index d,
                           std::uint64_t seed) {
  return hlsh_sketch(u, hlsh_sample_indices(u.dim(), d, seed));
}

double baseline_estimate_hamming(const BaselineSketch& a,
                                 const BaselineSketch& b) {
  if (a.method != b.method)
    throw InvalidArgument("baseline method mismatch: " +
                          std::string(to_string(a.method)) + " vs " +
                          to_string(b.method));
  if (a.d != b.d || a.n != b.n)
    throw InvalidArgument("sketch shape mismatch");
  std::size_t disagree = 0;
  switch (a.method) {
    case BaselineMethod::FeatureHash:
      for (Index j = 0; j < a.d; ++j) disagree += a.counts[j] != b.counts[j];
      break;
    case BaselineMethod::SimHash:
      disagree = hamming_distance(a.bits, b.bits);
      break;
    case BaselineMethod::HammingLsh:
      if (a.indices != b.indices)
        throw InvalidArgument("sketches sampled different coordinates");
      for (Index j = 0; j < a.d; ++j) disagree += a.labels[j] != b.labels[j];
      break;
  }
  return static_cast<double>(disagree) * static_cast<double>(a.n) /
         static_cast<double>(a.d);
}

BaselineSketchSet baseline_sketch_dataset(const Dataset& ds,
                                          BaselineMethod method, Index d,
                                          std::uint64_t seed,
                                          unsigned workers) {
  BaselineSketchSet out;
  out.method = method;
  out.d = d;
  out.n = ds.dim;
  out.seed = seed;
  if (method == BaselineMethod::HammingLsh)
    out.sample_indices = hlsh_sample_indices(ds.dim, d, seed);
  else if (d < 1)
    throw InvalidArgument("sketch dimension d must be >= 1");
  out.rows.resize(ds.points.size());
  parallel_for(0, ds.points.size(), workers, [&](std::size_t i) {
    switch (method) {
      case BaselineMethod::FeatureHash:
        out.rows[i] = feature_hash_sketch(ds.points[i], d, seed);
        break;
      case BaselineMethod::SimHash:
        out.rows[i] = simhash_sketch(ds.points[i], d, seed);
        break;
      case BaselineMethod::HammingLsh:
        out.rows[i] = hlsh_sketch(ds.points[i], out.sample_indices);
        break;
    }
  });
  return out;
}

SquareMatrix baseline_pairwise_estimates(const BaselineSketchSet& s,
                                         unsigned workers) {
  if (s.rows.empty())
    throw InvalidArgument("pairwise estimation over an empty sketch set");
  const std::size_t m = s.rows.size();
  SquareMatrix out(m);
  parallel_for(0, m, workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      out.at(i, j) = baseline_estimate_hamming(s.rows[i], s.rows[j]);
      out.at(j, i) = out.at(i, j);
    }
  });
  return out;
}

}  // namespace catsketch
