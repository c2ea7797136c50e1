// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#include "catsketch/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_set>
#include <utility>

#include "catsketch/parallel.hpp"
#include "catsketch/rng.hpp"

namespace catsketch {

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double ms_between(std::chrono::steady_clock::time_point a,
                  std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

EvalReport report_from_errors(std::vector<double> errs, std::string tag,
                              std::size_t d) {
  const std::size_t n = errs.size();
  std::vector<double> sq(n), ab(n);
  for (std::size_t i = 0; i < n; ++i) {
    sq[i] = errs[i] * errs[i];
    ab[i] = std::fabs(errs[i]);
  }
  EvalReport r;
  r.method = std::move(tag);
  r.d = d;
  r.pairs = n;
  r.rmse = std::sqrt(pairwise_sum(sq) / static_cast<double>(n));
  r.mae = pairwise_sum(ab) / static_cast<double>(n);
  r.mean_err = pairwise_sum(errs) / static_cast<double>(n);
  r.variance = r.rmse * r.rmse - r.mean_err * r.mean_err;
  r.quantiles = error_quantiles(std::move(errs));
  return r;
}

BaselineMethod baseline_of(Method method) {
  switch (method) {
    case Method::FeatureHash:
      return BaselineMethod::FeatureHash;
    case Method::SimHash:
      return BaselineMethod::SimHash;
    case Method::HammingLsh:
      return BaselineMethod::HammingLsh;
    default:
      throw InvalidArgument("not a baseline method");
  }
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::Exact:
      return "exact";
    case Method::Cabin:
      return "cabin";
    case Method::FeatureHash:
      return "fh";
    case Method::SimHash:
      return "sh";
    case Method::HammingLsh:
      return "hlsh";
  }
  throw InvalidArgument("unknown method");
}

Method method_from_string(std::string_view tag) {
  if (tag == "exact") return Method::Exact;
  if (tag == "cabin") return Method::Cabin;
  if (tag == "fh") return Method::FeatureHash;
  if (tag == "sh") return Method::SimHash;
  if (tag == "hlsh") return Method::HammingLsh;
  throw InvalidArgument("unknown method '" + std::string(tag) + "'");
}

const char* to_string(TrialMethod method) {
  switch (method) {
    case TrialMethod::BinEm:
      return "binem";
    case TrialMethod::Cabin:
      return "cabin";
    case TrialMethod::FeatureHash:
      return "fh";
    case TrialMethod::SimHash:
      return "sh";
    case TrialMethod::HammingLsh:
      return "hlsh";
  }
  throw InvalidArgument("unknown trial method");
}

TrialMethod trial_method_from_string(std::string_view tag) {
  if (tag == "binem") return TrialMethod::BinEm;
  if (tag == "cabin") return TrialMethod::Cabin;
  if (tag == "fh") return TrialMethod::FeatureHash;
  if (tag == "sh") return TrialMethod::SimHash;
  if (tag == "hlsh") return TrialMethod::HammingLsh;
  throw InvalidArgument("unknown trial method '" + std::string(tag) + "'");
}

double hamming_error(const CategoricalVector& u, const CategoricalVector& v,
                     double estimate) {
  return static_cast<double>(hamming_distance(u, v)) - estimate;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  std::vector<double> buf(xs.begin(), xs.end());
  std::size_t n = buf.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n % 2 == 1) {
      buf[half] = buf[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return buf[0];
}

std::array<double, 5> error_quantiles(std::vector<double> xs) {
  if (xs.empty()) throw InvalidArgument("quantiles of an empty sample");
  std::sort(xs.begin(), xs.end());
  constexpr double kProbs[5] = {0.05, 0.25, 0.50, 0.75, 0.95};
  std::array<double, 5> qs{};
  for (std::size_t i = 0; i < 5; ++i) {
    const double h = kProbs[i] * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    qs[i] = lo + 1 < xs.size() ? xs[lo] + frac * (xs[lo + 1] - xs[lo])
                               : xs[lo];
  }
  return qs;
}

std::vector<std::pair<Index, Index>> sample_pairs(std::size_t m,
                                                  std::size_t budget,
                                                  std::uint64_t seed) {
  if (m < 2) throw InvalidArgument("pair sampling needs at least 2 points");
  const std::uint64_t total =
      static_cast<std::uint64_t>(m) * (m - 1) / 2;
  std::vector<std::pair<Index, Index>> out;
  if (budget == 0 || budget >= total) {
    out.reserve(total);
    for (std::size_t i = 0; i + 1 < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        out.push_back({static_cast<Index>(i), static_cast<Index>(j)});
    return out;
  }
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(budget);
  for (std::uint64_t j = total - budget; j < total; ++j) {
    const std::uint64_t t = rng::bounded(seed, rng::kPairSample, j, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> picks(chosen.begin(), chosen.end());
  std::sort(picks.begin(), picks.end());

  const auto row_offset = [m](std::uint64_t i) {
    return i * (2 * static_cast<std::uint64_t>(m) - i - 1) / 2;
  };
  out.reserve(picks.size());
  const double md = static_cast<double>(m);
  for (std::uint64_t linear : picks) {
    const double disc = (2.0 * md - 1.0) * (2.0 * md - 1.0) -
                        8.0 * static_cast<double>(linear);
    std::uint64_t i = static_cast<std::uint64_t>(
        (2.0 * md - 1.0 - std::sqrt(std::max(disc, 0.0))) / 2.0);
    if (i > m - 2) i = m - 2;
    while (i > 0 && row_offset(i) > linear) --i;
    while (row_offset(i + 1) <= linear) ++i;
    const std::uint64_t j = i + 1 + (linear - row_offset(i));
    out.push_back({static_cast<Index>(i), static_cast<Index>(j)});
  }
  return out;
}

EvalReport evaluate_pairs(const Dataset& ds, const PairEstimator& estimate,
                          std::span<const std::pair<Index, Index>> pairs,
                          unsigned workers, std::string method_tag,
                          std::size_t d) {
  if (pairs.empty()) throw InvalidArgument("no pairs to evaluate");
  std::vector<double> errs(pairs.size());
  parallel_for(0, pairs.size(), workers, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    errs[p] = static_cast<double>(
                  hamming_distance(ds.points[i], ds.points[j])) -
              estimate(i, j);
  });
  return report_from_errors(std::move(errs), std::move(method_tag), d);
}

EvalReport evaluate_method(const Dataset& ds, Method method, std::size_t d,
                           std::uint64_t seed, std::size_t pair_budget,
                           unsigned workers) {
  if (ds.points.size() < 2)
    throw InvalidArgument("evaluation needs at least 2 points");
  const auto pairs = sample_pairs(ds.points.size(), pair_budget, seed);

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  SketchSet cabin_set;
  BaselineSketchSet baseline_set;
  PairEstimator est;
  switch (method) {
    case Method::Exact:
      est = [&ds](std::size_t i, std::size_t j) {
        return static_cast<double>(
            hamming_distance(ds.points[i], ds.points[j]));
      };
      break;
    case Method::Cabin: {
      const Label c = std::max<Label>(ds.categories, 1);
      cabin_set = sketch_dataset(
          ds, SketchModel::build(ds.dim, c, static_cast<Index>(d), seed),
          workers);
      est = [&cabin_set, d](std::size_t i, std::size_t j) {
        return cham(cabin_set.rows[i], cabin_set.rows[j], d).value;
      };
      break;
    }
    default:
      baseline_set = baseline_sketch_dataset(
          ds, baseline_of(method), static_cast<Index>(d), seed, workers);
      est = [&baseline_set](std::size_t i, std::size_t j) {
        return baseline_estimate_hamming(baseline_set.rows[i],
                                         baseline_set.rows[j]);
      };
      break;
  }
  const auto t1 = clock::now();
  EvalReport r = evaluate_pairs(ds, est, pairs, workers, to_string(method),
                                method == Method::Exact ? 0 : d);
  const auto t2 = clock::now();
  r.sketch_ms = ms_between(t0, t1);
  r.estimate_ms = ms_between(t1, t2);
  return r;
}

double rmse(const Dataset& ds, Method method, std::size_t d,
            std::uint64_t seed, std::size_t pair_budget, unsigned workers) {
  return evaluate_method(ds, method, d, seed, pair_budget, workers).rmse;
}

double mae(const Dataset& ds, Method method, std::size_t d,
           std::uint64_t seed, std::size_t pair_budget, unsigned workers) {
  return evaluate_method(ds, method, d, seed, pair_budget, workers).mae;
}

SquareMatrix exact_pairwise_distances(const Dataset& ds, unsigned workers) {
  if (ds.points.empty())
    throw InvalidArgument("pairwise distances over an empty dataset");
  const std::size_t m = ds.points.size();
  SquareMatrix out(m);
  parallel_for(0, m, workers, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      out.at(i, j) =
          static_cast<double>(hamming_distance(ds.points[i], ds.points[j]));
      out.at(j, i) = out.at(i, j);
    }
  });
  return out;
}

void write_matrix_csv(const SquareMatrix& m, std::ostream& out) {
  char buf[40];
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.6g", m.at(i, j));
      out << buf << (j + 1 < m.size() ? ',' : '\n');
    }
  }
}

void write_matrix_pgm(const SquareMatrix& m, std::ostream& out) {
  if (m.size() == 0) throw InvalidArgument("heatmap of an empty matrix");
  double lo = m.at(0, 0), hi = m.at(0, 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      lo = std::min(lo, m.at(i, j));
      hi = std::max(hi, m.at(i, j));
    }
  out << "P5\n" << m.size() << " " << m.size() << "\n255\n";
  const double range = hi - lo;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      double pixel = 0.0;
      if (range > 0.0)
        pixel = std::nearbyint((m.at(i, j) - lo) / range * 255.0);
      out.put(static_cast<char>(static_cast<unsigned char>(pixel)));
    }
}

namespace {

// One fixed-ψ model per trial: the bit table varies, positions pass through.
SketchModel psi_only_model(Index n, Label c, std::uint64_t trial_seed,
                           const std::vector<Index>& pi_ones) {
  std::vector<std::uint8_t> psi(static_cast<std::size_t>(c) + 1, 0);
  for (Label l = 1; l <= c; ++l)
    psi[l] =
        static_cast<std::uint8_t>(rng::draw(trial_seed, rng::kPsi, l) & 1);
  (void)n;
  return SketchModel::from_tables(std::move(psi), pi_ones, 1);
}

Label max_label(std::initializer_list<const CategoricalVector*> vs) {
  Label c = 1;
  for (const CategoricalVector* v : vs)
    for (const Entry& e : v->entries()) c = std::max(c, e.label);
  return c;
}

}  // namespace

EvalReport trial_statistics(const CategoricalVector& u,
                            const CategoricalVector& v, TrialMethod method,
                            std::size_t d, std::size_t trials,
                            std::uint64_t seed) {
  if (u.dim() != v.dim())
    throw InvalidArgument("pair dimensions differ: " +
                          std::to_string(u.dim()) + " vs " +
                          std::to_string(v.dim()));
  if (trials < 2) throw InvalidArgument("trials must be >= 2");
  if (method != TrialMethod::BinEm && d < 1)
    throw InvalidArgument("trials need a sketch dimension d >= 1");
  const double truth = static_cast<double>(hamming_distance(u, v));
  const Label c = max_label({&u, &v});
  std::vector<Index> pi_ones;
  if (method == TrialMethod::BinEm) pi_ones.assign(u.dim(), 1);

  std::vector<double> errs(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t ts = rng::draw(seed, rng::kTrial, t);
    double est = 0.0;
    switch (method) {
      case TrialMethod::BinEm: {
        const SketchModel m = psi_only_model(u.dim(), c, ts, pi_ones);
        est = 2.0 * static_cast<double>(
                        hamming_distance(bin_em(u, m), bin_em(v, m)));
        break;
      }
      case TrialMethod::Cabin: {
        const SketchModel m =
            SketchModel::build(u.dim(), c, static_cast<Index>(d), ts);
        est = cham(cabin(u, m), cabin(v, m), d).value;
        break;
      }
      case TrialMethod::FeatureHash:
        est = baseline_estimate_hamming(
            feature_hash_sketch(u, static_cast<Index>(d), ts),
            feature_hash_sketch(v, static_cast<Index>(d), ts));
        break;
      case TrialMethod::SimHash:
        est = baseline_estimate_hamming(
            simhash_sketch(u, static_cast<Index>(d), ts),
            simhash_sketch(v, static_cast<Index>(d), ts));
        break;
      case TrialMethod::HammingLsh: {
        const auto indices =
            hlsh_sample_indices(u.dim(), static_cast<Index>(d), ts);
        est = baseline_estimate_hamming(hlsh_sketch(u, indices),
                                        hlsh_sketch(v, indices));
        break;
      }
    }
    errs[t] = truth - est;
  }
  return report_from_errors(std::move(errs), to_string(method),
                            method == TrialMethod::BinEm ? 0 : d);
}

EvalReport trial_statistics_all_pairs(const Dataset& ds, TrialMethod method,
                                      std::size_t d, std::size_t trials,
                                      std::uint64_t seed,
                                      std::size_t pair_budget,
                                      unsigned workers) {
  if (trials < 2) throw InvalidArgument("trials must be >= 2");
  const auto pairs = sample_pairs(ds.points.size(), pair_budget, seed);
  std::vector<double> truths(pairs.size());
  parallel_for(0, pairs.size(), workers, [&](std::size_t p) {
    truths[p] = static_cast<double>(
        hamming_distance(ds.points[pairs[p].first], ds.points[pairs[p].second]));
  });
  const Label c = std::max<Label>(ds.categories, 1);
  std::vector<Index> pi_ones;
  if (method == TrialMethod::BinEm) pi_ones.assign(ds.dim, 1);

  std::vector<double> per_trial(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t ts = rng::draw(seed, rng::kTrial, t);
    std::vector<double> abs_errs(pairs.size());
    const auto fill = [&](auto&& estimate) {
      parallel_for(0, pairs.size(), workers, [&](std::size_t p) {
        abs_errs[p] = std::fabs(
            truths[p] - estimate(pairs[p].first, pairs[p].second));
      });
    };
    switch (method) {
      case TrialMethod::BinEm: {
        const SketchModel m = psi_only_model(ds.dim, c, ts, pi_ones);
        std::vector<BinaryVector> rows(ds.points.size());
        parallel_for(0, ds.points.size(), workers, [&](std::size_t i) {
          rows[i] = bin_em(ds.points[i], m);
        });
        fill([&](std::size_t i, std::size_t j) {
          return 2.0 *
                 static_cast<double>(hamming_distance(rows[i], rows[j]));
        });
        break;
      }
      case TrialMethod::Cabin: {
        const SketchSet s = sketch_dataset(
            ds, SketchModel::build(ds.dim, c, static_cast<Index>(d), ts),
            workers);
        fill([&](std::size_t i, std::size_t j) {
          return cham(s.rows[i], s.rows[j], d).value;
        });
        break;
      }
      default: {
        BaselineMethod bm = method == TrialMethod::FeatureHash
                                ? BaselineMethod::FeatureHash
                                : method == TrialMethod::SimHash
                                      ? BaselineMethod::SimHash
                                      : BaselineMethod::HammingLsh;
        const BaselineSketchSet s = baseline_sketch_dataset(
            ds, bm, static_cast<Index>(d), ts, workers);
        fill([&](std::size_t i, std::size_t j) {
          return baseline_estimate_hamming(s.rows[i], s.rows[j]);
        });
        break;
      }
    }
    per_trial[t] =
        pairwise_sum(abs_errs) / static_cast<double>(abs_errs.size());
  }
  return report_from_errors(std::move(per_trial), to_string(method),
                            method == TrialMethod::BinEm ? 0 : d);
}

void write_report_block(const EvalReport& report, std::ostream& out) {
  out << "method=" << report.method << "\n";
  out << "d=" << report.d << "\n";
  out << "pairs=" << report.pairs << "\n";
  out << "rmse=" << fmt9(report.rmse) << "\n";
  out << "mae=" << fmt9(report.mae) << "\n";
  out << "mean_err=" << fmt9(report.mean_err) << "\n";
  out << "variance=" << fmt9(report.variance) << "\n";
  const char* names[5] = {"q05", "q25", "q50", "q75", "q95"};
  for (std::size_t i = 0; i < 5; ++i)
    out << names[i] << "=" << fmt9(report.quantiles[i]) << "\n";
}

void write_report_csv_header(std::ostream& out) {
  out << "method,d,pairs,rmse,mae,mean_err,variance,q05,q25,q50,q75,q95\n";
}

void write_report_csv_row(const EvalReport& report, std::ostream& out) {
  out << report.method << ',' << report.d << ',' << report.pairs << ','
      << fmt9(report.rmse) << ',' << fmt9(report.mae) << ','
      << fmt9(report.mean_err) << ',' << fmt9(report.variance);
  for (double q : report.quantiles) out << ',' << fmt9(q);
  out << '\n';
}

}  // namespace catsketch
