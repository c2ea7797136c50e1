// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catsketch/cham.hpp"
#include "catsketch/dataio.hpp"
#include "catsketch/eval.hpp"

namespace cs = catsketch;

namespace {

using Clock = std::chrono::steady_clock;

void log_timing(const char* what, Clock::time_point a, Clock::time_point b) {
  const double ms = std::chrono::duration<double, std::milli>(b - a).count();
  std::fprintf(stderr, "timing %s_ms=%.3f\n", what, ms);
}

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CATSKETCH_SEED")) {
    std::uint64_t value = 0;
    const char* end = env + std::string_view(env).size();
    auto [ptr, ec] = std::from_chars(env, end, value, 10);
    if (ec != std::errc() || ptr != end)
      throw cs::InvalidArgument(
          "CATSKETCH_SEED is not an unsigned integer: '" + std::string(env) +
          "'");
    return value;
  }
  return 0;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cs::InvalidArgument("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cs::InvalidArgument("cannot open output file: " + path);
  return out;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct DataFlags {
  std::string path;
  std::string format = "auto";  // auto | docword | csv
  bool csv_header = false;
  std::size_t sample = 0;  // 0 = whole corpus
};

void add_data_flags(CLI::App* cmd, DataFlags& flags) {
  cmd->add_option("--input", flags.path, "corpus file")->required();
  cmd->add_option("--format", flags.format, "docword|csv|auto")
      ->check(CLI::IsMember({"auto", "docword", "csv"}));
  cmd->add_flag("--csv-header", flags.csv_header,
                "skip the first line of a CSV corpus");
  cmd->add_option("--sample", flags.sample,
                  "uniform point subsample (0 = all points)");
}

cs::Dataset load_dataset(const DataFlags& flags, std::uint64_t seed) {
  std::string format = flags.format;
  if (format == "auto")
    format = ends_with(flags.path, ".csv") ? "csv" : "docword";
  std::ifstream in = open_input(flags.path);
  cs::Dataset ds = format == "csv"
                       ? cs::parse_csv_categorical(in, flags.csv_header,
                                                   flags.path)
                       : cs::parse_docword(in, flags.path);
  if (flags.sample != 0 && flags.sample < ds.points.size())
    ds = cs::sample_dataset(ds, flags.sample, seed);
  return ds;
}

// Sniffs line 2 for the baseline `method=` field.
bool sketch_file_is_baseline(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  return line.find(" method=") != std::string::npos;
}

int run(int argc, char** argv) {
  CLI::App app{
      "compact binary sketches for sparse categorical vectors, with "
      "Hamming-distance estimation, baselines, clustering, and evaluation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag,
                 "seed (falls back to $CATSKETCH_SEED, then 0)");
  unsigned workers = 1;
  app.add_option("--workers", workers, "worker threads (never changes output)")
      ->check(CLI::PositiveNumber);

  // build-model
  auto* bm = app.add_subcommand("build-model",
                                "draw and persist the random mappings");
  cs::Index bm_n = 0;
  cs::Label bm_c = 0;
  std::optional<cs::Index> bm_d;
  std::optional<std::size_t> bm_s;
  double bm_delta = 0.1;
  std::string bm_out;
  bm->add_option("--n", bm_n, "original dimension")->required();
  bm->add_option("--c", bm_c, "category count")->required();
  auto* bm_d_opt = bm->add_option("--d", bm_d, "sketch dimension");
  auto* bm_s_opt =
      bm->add_option("--s", bm_s, "density bound (chooses d with --delta)");
  bm->add_option("--delta", bm_delta, "failure probability for auto-d");
  bm->add_option("-o,--output", bm_out, "model file")->required();
  bm_d_opt->excludes(bm_s_opt);

  // sketch
  auto* sk = app.add_subcommand("sketch", "sketch a corpus");
  DataFlags sk_data;
  add_data_flags(sk, sk_data);
  std::string sk_method = "cabin";
  std::string sk_model;
  cs::Index sk_d = 0;
  std::string sk_out;
  sk->add_option("--method", sk_method, "cabin|fh|sh|hlsh")
      ->check(CLI::IsMember({"cabin", "fh", "sh", "hlsh"}));
  sk->add_option("--model", sk_model, "model file (cabin only)");
  sk->add_option("--d", sk_d, "sketch dimension (baselines only)");
  sk->add_option("-o,--output", sk_out, "sketch file")->required();

  // estimate
  auto* es = app.add_subcommand(
      "estimate", "pairwise distance estimates from a sketch file");
  std::string es_in, es_out;
  es->add_option("--sketches", es_in, "sketch file")->required();
  es->add_option("-o,--output", es_out, "matrix CSV")->required();

  // rmse / mae
  const auto add_eval_cmd = [&](const char* name, const char* blurb) {
    auto* cmd = app.add_subcommand(name, blurb);
    return cmd;
  };
  struct EvalFlags {
    DataFlags data;
    std::string method = "cabin";
    std::vector<std::size_t> dims;
    std::size_t pair_budget = 1999000;
    std::string out;
  };
  EvalFlags ev[2];
  CLI::App* ev_cmds[2] = {
      add_eval_cmd("rmse", "root-mean-square Hamming error over pairs"),
      add_eval_cmd("mae", "mean absolute Hamming error over pairs")};
  for (int i = 0; i < 2; ++i) {
    add_data_flags(ev_cmds[i], ev[i].data);
    ev_cmds[i]
        ->add_option("--method", ev[i].method, "cabin|fh|sh|hlsh|exact")
        ->check(CLI::IsMember({"cabin", "fh", "sh", "hlsh", "exact"}));
    ev_cmds[i]->add_option("--dims", ev[i].dims, "sketch dimensions to sweep")
        ->required()
        ->delimiter(',');
    ev_cmds[i]->add_option("--pairs", ev[i].pair_budget,
                           "pair budget (0 = all pairs)");
    ev_cmds[i]->add_option("-o,--output", ev[i].out, "report CSV");
  }

  // heatmap
  auto* hm = app.add_subcommand("heatmap",
                                "pairwise matrix as CSV plus grayscale PGM");
  DataFlags hm_data;
  add_data_flags(hm, hm_data);
  std::string hm_method = "cabin";
  std::string hm_mode = "estimates";
  cs::Index hm_d = 0;
  std::string hm_out;
  hm->add_option("--method", hm_method, "cabin|fh|sh|hlsh|exact")
      ->check(CLI::IsMember({"cabin", "fh", "sh", "hlsh", "exact"}));
  hm->add_option("--d", hm_d, "sketch dimension (ignored for exact)");
  hm->add_option("--mode", hm_mode,
                 "estimates, or errors for |true - estimate|")
      ->check(CLI::IsMember({"estimates", "errors"}));
  hm->add_option("-o,--output", hm_out, "output prefix (.csv and .pgm)")
      ->required();

  // cluster
  auto* cl = app.add_subcommand("cluster", "k-modes over a corpus or sketches");
  DataFlags cl_data;
  std::string cl_sketches;
  std::size_t cl_k = 0;
  std::size_t cl_max_iter = 100;
  std::string cl_out;
  cl->add_option("--input", cl_data.path, "corpus file");
  cl->add_option("--format", cl_data.format, "docword|csv|auto")
      ->check(CLI::IsMember({"auto", "docword", "csv"}));
  cl->add_flag("--csv-header", cl_data.csv_header,
               "skip the first line of a CSV corpus");
  cl->add_option("--sample", cl_data.sample,
                 "uniform point subsample (0 = all points)");
  cl->add_option("--sketches", cl_sketches, "sketch file (instead of --input)");
  cl->add_option("--k", cl_k, "cluster count")->required();
  cl->add_option("--max-iter", cl_max_iter, "iteration cap");
  cl->add_option("-o,--output", cl_out, "assignment CSV")->required();

  // eval-cluster
  auto* ec = app.add_subcommand("eval-cluster",
                                "purity/NMI/ARI of predicted vs truth");
  std::string ec_truth, ec_pred;
  ec->add_option("--truth", ec_truth, "truth assignment CSV")->required();
  ec->add_option("--pred", ec_pred, "predicted assignment CSV")->required();

  // trials
  auto* tr = app.add_subcommand(
      "trials", "repeated fresh-randomness error statistics for one pair");
  DataFlags tr_data;
  add_data_flags(tr, tr_data);
  std::string tr_method = "cabin";
  cs::Index tr_d = 0;
  std::size_t tr_trials = 1000;
  std::size_t tr_i = 0, tr_j = 1;
  bool tr_all_pairs = false;
  std::size_t tr_pairs = 0;
  std::string tr_out;
  tr->add_option("--method", tr_method, "binem|cabin|fh|sh|hlsh")
      ->check(CLI::IsMember({"binem", "cabin", "fh", "sh", "hlsh"}));
  tr->add_option("--d", tr_d, "sketch dimension");
  tr->add_option("--trials", tr_trials, "trial count");
  tr->add_option("--i", tr_i, "first point index (0-based)");
  tr->add_option("--j", tr_j, "second point index (0-based)");
  tr->add_flag("--all-pairs", tr_all_pairs,
               "per-trial mean |error| over sampled pairs instead of one pair");
  tr->add_option("--pairs", tr_pairs, "pair budget for --all-pairs");
  tr->add_option("-o,--output", tr_out, "report CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::uint64_t seed = resolve_seed(seed_flag);
  std::cout << "effective_seed=" << seed << "\n";

  if (app.got_subcommand(bm)) {
    cs::Index d = 0;
    if (bm_d) {
      d = *bm_d;
    } else if (bm_s) {
      d = static_cast<cs::Index>(
          cs::choose_dimension({.s = *bm_s, .delta = bm_delta}));
      std::cout << "delta=" << fmt9(bm_delta) << "\n";
    } else {
      throw cs::InvalidArgument("supply exactly one of --d or --s");
    }
    std::cout << "d=" << d << "\n";
    if (d > bm_n)
      std::fprintf(stderr,
                   "warning: d=%u exceeds n=%u; the sketch does not "
                   "compress\n",
                   d, bm_n);
    const cs::SketchModel model = cs::SketchModel::build(bm_n, bm_c, d, seed);
    std::ofstream out = open_output(bm_out);
    cs::serialize_model(model, out);
    return 0;
  }

  if (app.got_subcommand(sk)) {
    const cs::Dataset ds = load_dataset(sk_data, seed);
    std::ofstream out = open_output(sk_out);
    const auto t0 = Clock::now();
    if (sk_method == "cabin") {
      if (sk_model.empty())
        throw cs::InvalidArgument("cabin sketching needs --model");
      std::ifstream min = open_input(sk_model);
      const cs::SketchModel model = cs::parse_model(min);
      const cs::SketchSet s = cs::sketch_dataset(ds, model, workers);
      cs::write_sketches(s, out);
      std::cout << "rows=" << s.rows.size() << "\nd=" << s.d << "\n";
    } else {
      if (sk_d < 1)
        throw cs::InvalidArgument("baseline sketching needs --d >= 1");
      const cs::BaselineSketchSet s = cs::baseline_sketch_dataset(
          ds, cs::baseline_method_from_string(
                  sk_method == "fh" ? "FH" : sk_method == "sh" ? "SH"
                                                               : "HLSH"),
          sk_d, seed, workers);
      cs::write_baseline_sketches(s, out);
      std::cout << "rows=" << s.rows.size() << "\nd=" << s.d << "\n";
    }
    log_timing("sketch", t0, Clock::now());
    return 0;
  }

  if (app.got_subcommand(es)) {
    const auto t0 = Clock::now();
    cs::SquareMatrix matrix;
    if (sketch_file_is_baseline(es_in)) {
      std::ifstream in = open_input(es_in);
      matrix = cs::baseline_pairwise_estimates(cs::read_baseline_sketches(in),
                                               workers);
    } else {
      std::ifstream in = open_input(es_in);
      matrix = cs::pairwise_estimates(cs::read_sketches(in), workers);
    }
    std::ofstream out = open_output(es_out);
    cs::write_matrix_csv(matrix, out);
    std::cout << "rows=" << matrix.size() << "\npairs="
              << matrix.size() * (matrix.size() - 1) / 2 << "\n";
    log_timing("estimate", t0, Clock::now());
    return 0;
  }

  for (int i = 0; i < 2; ++i) {
    if (!app.got_subcommand(ev_cmds[i])) continue;
    const cs::Dataset ds = load_dataset(ev[i].data, seed);
    std::ostringstream csv;
    cs::write_report_csv_header(csv);
    for (std::size_t d : ev[i].dims) {
      const cs::EvalReport report = cs::evaluate_method(
          ds, cs::method_from_string(ev[i].method), d, seed,
          ev[i].pair_budget, workers);
      cs::write_report_block(report, std::cout);
      cs::write_report_csv_row(report, csv);
      std::fprintf(stderr, "timing sketch_ms=%.3f estimate_ms=%.3f\n",
                   report.sketch_ms, report.estimate_ms);
    }
    if (!ev[i].out.empty()) {
      std::ofstream out = open_output(ev[i].out);
      out << csv.str();
    }
    return 0;
  }

  if (app.got_subcommand(hm)) {
    const cs::Dataset ds = load_dataset(hm_data, seed);
    const cs::Method method = cs::method_from_string(hm_method);
    const auto t0 = Clock::now();
    cs::SquareMatrix matrix;
    if (method == cs::Method::Exact) {
      matrix = cs::exact_pairwise_distances(ds, workers);
    } else if (method == cs::Method::Cabin) {
      const cs::Label c = std::max<cs::Label>(ds.categories, 1);
      const cs::SketchSet s = cs::sketch_dataset(
          ds, cs::SketchModel::build(ds.dim, c, hm_d, seed), workers);
      matrix = cs::pairwise_estimates(s, workers);
    } else {
      const cs::BaselineMethod bmth =
          method == cs::Method::FeatureHash ? cs::BaselineMethod::FeatureHash
          : method == cs::Method::SimHash   ? cs::BaselineMethod::SimHash
                                            : cs::BaselineMethod::HammingLsh;
      matrix = cs::baseline_pairwise_estimates(
          cs::baseline_sketch_dataset(ds, bmth, hm_d, seed, workers),
          workers);
    }
    if (hm_mode == "errors") {
      if (method == cs::Method::Exact)
        throw cs::InvalidArgument("error mode needs an estimating method");
      const cs::SquareMatrix truth = cs::exact_pairwise_distances(ds, workers);
      for (std::size_t i = 0; i < matrix.size(); ++i)
        for (std::size_t j = 0; j < matrix.size(); ++j)
          matrix.at(i, j) = std::fabs(truth.at(i, j) - matrix.at(i, j));
    }
    std::ofstream csv = open_output(hm_out + ".csv");
    cs::write_matrix_csv(matrix, csv);
    std::ofstream pgm = open_output(hm_out + ".pgm");
    cs::write_matrix_pgm(matrix, pgm);
    std::cout << "rows=" << matrix.size() << "\nwrote=" << hm_out
              << ".csv\nwrote=" << hm_out << ".pgm\n";
    log_timing("heatmap", t0, Clock::now());
    return 0;
  }

  if (app.got_subcommand(cl)) {
    if (cl_data.path.empty() == cl_sketches.empty())
      throw cs::InvalidArgument("supply exactly one of --input or --sketches");
    const auto t0 = Clock::now();
    cs::ClusterAssignment assignment;
    if (!cl_sketches.empty()) {
      std::ifstream in = open_input(cl_sketches);
      assignment = cs::kmodes(cs::read_sketches(in), cl_k, seed, cl_max_iter,
                              workers);
    } else {
      assignment =
          cs::kmodes(load_dataset(cl_data, seed), cl_k, seed, cl_max_iter,
                     workers);
    }
    std::ofstream out = open_output(cl_out);
    cs::write_assignment_csv(assignment, out);
    std::cout << "k=" << assignment.k
              << "\niterations=" << assignment.iteration_costs.size()
              << "\ncost=" << fmt9(assignment.cost) << "\n";
    log_timing("cluster", t0, Clock::now());
    return 0;
  }

  if (app.got_subcommand(ec)) {
    std::ifstream tin = open_input(ec_truth);
    const cs::ClusterAssignment truth = cs::read_assignment_csv(tin);
    std::ifstream pin = open_input(ec_pred);
    const cs::ClusterAssignment pred = cs::read_assignment_csv(pin);
    std::cout << "purity=" << fmt9(cs::purity(truth, pred)) << "\n"
              << "nmi=" << fmt9(cs::nmi(truth, pred)) << "\n"
              << "mi=" << fmt9(cs::mutual_information(truth, pred)) << "\n"
              << "ari=" << fmt9(cs::ari(truth, pred)) << "\n";
    return 0;
  }

  if (app.got_subcommand(tr)) {
    const cs::Dataset ds = load_dataset(tr_data, seed);
    const cs::TrialMethod method = cs::trial_method_from_string(tr_method);
    const auto t0 = Clock::now();
    cs::EvalReport report;
    if (tr_all_pairs) {
      report = cs::trial_statistics_all_pairs(ds, method, tr_d, tr_trials,
                                              seed, tr_pairs, workers);
    } else {
      if (tr_i >= ds.points.size() || tr_j >= ds.points.size())
        throw cs::InvalidArgument("point index outside the corpus");
      report = cs::trial_statistics(ds.points[tr_i], ds.points[tr_j], method,
                                    tr_d, tr_trials, seed);
    }
    cs::write_report_block(report, std::cout);
    if (!tr_out.empty()) {
      std::ofstream out = open_output(tr_out);
      cs::write_report_csv_header(out);
      cs::write_report_csv_row(report, out);
    }
    log_timing("trials", t0, Clock::now());
    return 0;
  }

  throw cs::InvalidArgument("no subcommand dispatched");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cs::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
