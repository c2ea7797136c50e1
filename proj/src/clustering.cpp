// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#include "catsketch/clustering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catsketch/parallel.hpp"
#include "catsketch/rng.hpp"

namespace catsketch {

namespace {

// Attribute-wise majority over the members, 0 competing like any label.
// Iterating the ordered maps keeps ties on the smallest value.
CategoricalVector compute_mode(const std::vector<std::size_t>& members,
                               std::span<const CategoricalVector> pts,
                               Index dim) {
  std::map<Index, std::map<Label, std::size_t>> counts;
  for (std::size_t p : members)
    for (const Entry& e : pts[p].entries()) ++counts[e.index][e.label];
  std::vector<Entry> entries;
  for (const auto& [attr, label_counts] : counts) {
    std::size_t nonzero = 0;
    for (const auto& [label, count] : label_counts) nonzero += count;
    const std::size_t zeros = members.size() - nonzero;
    Label best = 0;
    std::size_t best_count = zeros;
    for (const auto& [label, count] : label_counts)
      if (count > best_count) {
        best = label;
        best_count = count;
      }
    if (best != 0) entries.push_back({attr, best});
  }
  return CategoricalVector(dim, std::move(entries));
}

ClusterAssignment kmodes_impl(std::span<const CategoricalVector> pts,
                              Index dim, std::size_t k, std::uint64_t seed,
                              std::size_t max_iter, unsigned workers) {
  const std::size_t m = pts.size();
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (k > m)
    throw InvalidArgument("k = " + std::to_string(k) +
                          " exceeds point count " + std::to_string(m));
  if (max_iter < 1) throw InvalidArgument("max_iter must be >= 1");

  // Distance-weighted seeding: the first mode is uniform, each further mode
  // is a point drawn with probability proportional to its distance from the
  // nearest mode so far.
  std::vector<CategoricalVector> modes;
  modes.reserve(k);
  std::vector<char> is_seed(m, 0);
  const std::size_t first = rng::bounded(seed, rng::kKmodesInit, 0, m);
  modes.push_back(pts[first]);
  is_seed[first] = 1;
  std::vector<double> dist(m);
  parallel_for(0, m, workers, [&](std::size_t p) {
    dist[p] = static_cast<double>(hamming_distance(pts[p], modes[0]));
  });
  for (std::size_t step = 1; step < k; ++step) {
    double total = 0.0;
    for (double w : dist) total += w;
    std::size_t chosen = m;
    if (total > 0.0) {
      const double r = rng::unit_real(seed, rng::kKmodesInit, step) * total;
      double cum = 0.0;
      for (std::size_t p = 0; p < m; ++p) {
        cum += dist[p];
        if (cum > r) {
          chosen = p;
          break;
        }
      }
      if (chosen == m)  // float round-off at the tail
        for (std::size_t p = m; p-- > 0;)
          if (dist[p] > 0.0) {
            chosen = p;
            break;
          }
    }
    if (chosen == m)  // remaining points duplicate the seeds
      for (std::size_t p = 0; p < m; ++p)
        if (!is_seed[p]) {
          chosen = p;
          break;
        }
    is_seed[chosen] = 1;
    modes.push_back(pts[chosen]);
    parallel_for(0, m, workers, [&](std::size_t p) {
      dist[p] = std::min(
          dist[p],
          static_cast<double>(hamming_distance(pts[p], modes.back())));
    });
  }

  std::vector<Index> assign(m, 0), prev;
  std::vector<std::size_t> pdist(m, 0);
  std::vector<double> point_costs(m, 0.0);
  std::vector<double> iter_costs;
  double cost = 0.0;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    parallel_for(0, m, workers, [&](std::size_t p) {
      std::size_t best = 0;
      std::size_t best_d = hamming_distance(pts[p], modes[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const std::size_t cand = hamming_distance(pts[p], modes[c]);
        if (cand < best_d) {
          best_d = cand;
          best = c;
        }
      }
      assign[p] = static_cast<Index>(best + 1);
      pdist[p] = best_d;
    });

    std::vector<std::size_t> sizes(k, 0);
    for (Index a : assign) ++sizes[a - 1];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      // Reseed with the point farthest from its assigned mode (lowest index
      // on ties), never draining a singleton cluster.
      std::size_t far = m;
      std::size_t far_d = 0;
      for (std::size_t p = 0; p < m; ++p) {
        if (sizes[assign[p] - 1] <= 1) continue;
        if (far == m || pdist[p] > far_d) {
          far = p;
          far_d = pdist[p];
        }
      }
      --sizes[assign[far] - 1];
      assign[far] = static_cast<Index>(c + 1);
      sizes[c] = 1;
      pdist[far] = 0;
    }

    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t p = 0; p < m; ++p) members[assign[p] - 1].push_back(p);
    for (std::size_t c = 0; c < k; ++c)
      modes[c] = compute_mode(members[c], pts, dim);

    parallel_for(0, m, workers, [&](std::size_t p) {
      point_costs[p] = static_cast<double>(
          hamming_distance(pts[p], modes[assign[p] - 1]));
    });
    cost = 0.0;
    for (double pc : point_costs) cost += pc;
    iter_costs.push_back(cost);

    if (!prev.empty() && prev == assign) break;
    prev = assign;
  }

  ClusterAssignment out;
  out.labels = std::move(assign);
  out.k = k;
  out.cost = cost;
  out.modes = std::move(modes);
  out.iteration_costs = std::move(iter_costs);
  return out;
}

}  // namespace

ClusterAssignment kmodes(const Dataset& ds, std::size_t k,
                         std::uint64_t seed, std::size_t max_iter,
                         unsigned workers) {
  return kmodes_impl(ds.points, ds.dim, k, seed, max_iter, workers);
}

ClusterAssignment kmodes(const SketchSet& s, std::size_t k,
                         std::uint64_t seed, std::size_t max_iter,
                         unsigned workers) {
  std::vector<CategoricalVector> pts;
  pts.reserve(s.rows.size());
  for (const BinaryVector& row : s.rows) {
    std::vector<Entry> entries;
    entries.reserve(row.weight());
    const auto words = row.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t word = words[w];
      while (word != 0) {
        const int b = std::countr_zero(word);
        word &= word - 1;
        entries.push_back({static_cast<Index>(w * 64 + b + 1), 1});
      }
    }
    pts.emplace_back(s.d, std::move(entries));
  }
  return kmodes_impl(pts, s.d, k, seed, max_iter, workers);
}

ClusterAssignment assignment_from_labels(std::vector<Index> labels) {
  ClusterAssignment out;
  for (Index l : labels) {
    if (l < 1) throw InvalidArgument("cluster ids must be >= 1");
    out.k = std::max<std::size_t>(out.k, l);
  }
  out.labels = std::move(labels);
  return out;
}

namespace {

struct Contingency {
  std::map<std::pair<Index, Index>, std::size_t> cells;
  std::map<Index, std::size_t> truth_sizes;
  std::map<Index, std::size_t> pred_sizes;
  std::size_t m = 0;
};

Contingency cross(const ClusterAssignment& truth,
                  const ClusterAssignment& pred) {
  if (truth.labels.size() != pred.labels.size())
    throw InvalidArgument("partition sizes differ: " +
                          std::to_string(truth.labels.size()) + " vs " +
                          std::to_string(pred.labels.size()));
  if (truth.labels.empty())
    throw InvalidArgument("metrics over empty partitions");
  Contingency t;
  t.m = truth.labels.size();
  for (std::size_t i = 0; i < t.m; ++i) {
    ++t.cells[{truth.labels[i], pred.labels[i]}];
    ++t.truth_sizes[truth.labels[i]];
    ++t.pred_sizes[pred.labels[i]];
  }
  return t;
}

double entropy(const std::map<Index, std::size_t>& sizes, std::size_t m) {
  double h = 0.0;
  for (const auto& [id, count] : sizes) {
    const double p = static_cast<double>(count) / static_cast<double>(m);
    h -= p * std::log(p);
  }
  return h;
}

double mi_of(const Contingency& t) {
  const double m = static_cast<double>(t.m);
  double mi = 0.0;
  for (const auto& [key, count] : t.cells) {
    const double nij = static_cast<double>(count);
    const double a = static_cast<double>(t.truth_sizes.at(key.first));
    const double b = static_cast<double>(t.pred_sizes.at(key.second));
    mi += (nij / m) * std::log(m * nij / (a * b));
  }
  return mi;
}

}  // namespace

double purity(const ClusterAssignment& truth, const ClusterAssignment& pred) {
  const Contingency t = cross(truth, pred);
  std::map<Index, std::size_t> best;
  for (const auto& [key, count] : t.cells) {
    std::size_t& slot = best[key.first];
    slot = std::max(slot, count);
  }
  std::size_t covered = 0;
  for (const auto& [id, count] : best) covered += count;
  return static_cast<double>(covered) / static_cast<double>(t.m);
}

double mutual_information(const ClusterAssignment& truth,
                          const ClusterAssignment& pred) {
  return mi_of(cross(truth, pred));
}

double nmi(const ClusterAssignment& truth, const ClusterAssignment& pred) {
  const Contingency t = cross(truth, pred);
  const double h_truth = entropy(t.truth_sizes, t.m);
  const double h_pred = entropy(t.pred_sizes, t.m);
  if (h_truth == 0.0 && h_pred == 0.0) return 1.0;
  return mi_of(t) / (0.5 * (h_truth + h_pred));
}

double ari(const ClusterAssignment& truth, const ClusterAssignment& pred) {
  const Contingency t = cross(truth, pred);
  const auto comb2 = [](std::size_t x) {
    return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1);
  };
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [key, count] : t.cells) index += comb2(count);
  for (const auto& [id, count] : t.truth_sizes) sum_a += comb2(count);
  for (const auto& [id, count] : t.pred_sizes) sum_b += comb2(count);
  const double total = comb2(t.m);
  if (total == 0.0) return 1.0;  // a single point: trivially identical
  const double expected = sum_a * sum_b / total;
  const double maximum = 0.5 * (sum_a + sum_b);
  const double den = maximum - expected;
  if (den == 0.0) return 1.0;  // both partitions trivial
  return (index - expected) / den;
}

}  // namespace catsketch
