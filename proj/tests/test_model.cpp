// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>
#include <string>
#include <vector>

#include "catsketch/model.hpp"
#include "doctest.h"

using namespace catsketch;

namespace {

// The worked-example tables: c = 4, d = 6.
SketchModel golden_model() {
  return SketchModel::from_tables(
      {0, 1, 0, 0, 1}, {5, 6, 1, 5, 6, 2, 6, 1, 3, 3, 4, 4, 2, 1}, 6);
}

const char* kGoldenFile =
    "CATSKETCH-MODEL v1\n"
    "n=14 c=4 d=6 seed=none\n"
    "PSI 01001\n"
    "PI 5 6 1 5 6 2 6 1 3 3 4 4 2 1\n";

}  // namespace

TEST_CASE("choose_dimension evaluates ceil(s*sqrt((s/2)ln(6/delta)))") {
  // s=2, delta=0.6: 2*sqrt(ln 10) = 3.034... -> 4.
  CHECK(choose_dimension({.s = 2, .delta = 0.6}) == 4);
  // s=457, delta=0.1: 457*sqrt(228.5*ln 60) = 13978.207927... -> 13979.
  CHECK(choose_dimension({.s = 457, .delta = 0.1}) == 13979);
  CHECK(choose_dimension({.s = 400, .delta = 0.1}) == 11447);
  CHECK(choose_dimension({.s = 1, .delta = 0.5}) == 2);

  CHECK_THROWS_AS(choose_dimension({.s = 0, .delta = 0.1}), InvalidArgument);
  CHECK_THROWS_AS(choose_dimension({.s = 2, .delta = 0.0}), InvalidArgument);
  CHECK_THROWS_AS(choose_dimension({.s = 2, .delta = 1.0}), InvalidArgument);
  CHECK_THROWS_AS(choose_dimension({.s = 2, .delta = -0.2}), InvalidArgument);
}

TEST_CASE("choose_dimension is monotone in s and delta and at least s") {
  std::size_t prev = 0;
  for (std::size_t s = 1; s <= 64; ++s) {
    const std::size_t d = choose_dimension({.s = s, .delta = 0.1});
    CHECK(d >= prev);
    CHECK(d >= s);  // admissible delta keeps ln(6/delta) > 1 here
    prev = d;
  }
  std::size_t prev_delta = choose_dimension({.s = 50, .delta = 0.001});
  for (double delta : {0.01, 0.1, 0.3, 0.6, 0.9}) {
    const std::size_t d = choose_dimension({.s = 50, .delta = delta});
    CHECK(d <= prev_delta);
    prev_delta = d;
  }
}

TEST_CASE("build is deterministic in (n, c, d, seed)") {
  const SketchModel a = SketchModel::build(100, 7, 12, 42);
  const SketchModel b = SketchModel::build(100, 7, 12, 42);
  CHECK(a == b);
  CHECK(a.n() == 100);
  CHECK(a.c() == 7);
  CHECK(a.d() == 12);
  CHECK(a.seed() == 42);
  CHECK_FALSE(a == SketchModel::build(100, 7, 12, 43));

  CHECK_FALSE(a.psi(0));  // pinned
  for (Index i = 1; i <= 100; ++i) {
    CHECK(a.pi(i) >= 1);
    CHECK(a.pi(i) <= 12);
  }
  CHECK_THROWS_AS(a.pi(0), InvalidArgument);
  CHECK_THROWS_AS(a.pi(101), InvalidArgument);
  CHECK_THROWS_AS(a.psi(8), InvalidArgument);

  CHECK_THROWS_AS(SketchModel::build(0, 1, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(SketchModel::build(1, 0, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(SketchModel::build(1, 1, 0, 0), InvalidArgument);
}

TEST_CASE("psi and pi marginals are uniform across seeds") {
  // 10,000 fresh models: psi[1] is Bernoulli(1/2), pi[1] uniform over 1..10.
  std::size_t psi_ones = 0;
  std::vector<std::size_t> bucket(10, 0);
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const SketchModel m = SketchModel::build(1, 1, 10, seed);
    psi_ones += m.psi(1) ? 1 : 0;
    bucket[m.pi(1) - 1]++;
  }
  const double psi_mean = double(psi_ones) / 10000.0;
  CHECK(psi_mean >= 0.47);
  CHECK(psi_mean <= 0.53);
  for (int j = 0; j < 10; ++j) {
    const double freq = double(bucket[j]) / 10000.0;
    CHECK(freq >= 0.09);
    CHECK(freq <= 0.11);
  }
}

TEST_CASE("from_tables wraps explicit tables and enforces ranges") {
  const SketchModel m = golden_model();
  CHECK(m.n() == 14);
  CHECK(m.c() == 4);
  CHECK(m.d() == 6);
  CHECK_FALSE(m.seed().has_value());
  CHECK(m.psi(1));
  CHECK_FALSE(m.psi(2));
  CHECK(m.psi(4));
  CHECK(m.pi(1) == 5);
  CHECK(m.pi(14) == 1);

  // pi entry past d.
  CHECK_THROWS_AS(SketchModel::from_tables({0, 1}, {7}, 6), InvalidArgument);
  // pi entry 0.
  CHECK_THROWS_AS(SketchModel::from_tables({0, 1}, {0}, 6), InvalidArgument);
  // psi[0] must stay 0.
  CHECK_THROWS_AS(SketchModel::from_tables({1, 1}, {1}, 6), InvalidArgument);
  // psi entries are bits.
  CHECK_THROWS_AS(SketchModel::from_tables({0, 2}, {1}, 6), InvalidArgument);
  // empty psi has no psi[0].
  CHECK_THROWS_AS(SketchModel::from_tables({}, {1}, 6), InvalidArgument);
}

TEST_CASE("model serialization round-trips and is canonical") {
  const SketchModel built = SketchModel::build(14, 4, 6, 7);
  std::ostringstream out;
  serialize_model(built, out);
  std::istringstream in(out.str());
  const SketchModel parsed = parse_model(in);
  CHECK(parsed == built);

  std::ostringstream again;
  serialize_model(parsed, again);
  CHECK(again.str() == out.str());  // canonical bytes

  // The hand-written golden file parses to the golden model exactly.
  std::istringstream golden(kGoldenFile);
  CHECK(parse_model(golden) == golden_model());
  std::ostringstream golden_out;
  serialize_model(golden_model(), golden_out);
  CHECK(golden_out.str() == kGoldenFile);
}

TEST_CASE("model parse errors carry the offending line") {
  const auto expect_error = [](const std::string& text,
                               const std::string& needle) {
    std::istringstream in(text);
    try {
      parse_model(in);
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_error("BOGUS v1\nn=1 c=1 d=1 seed=none\nPSI 00\nPI 1\n", "line 1");
  expect_error("CATSKETCH-MODEL v1\nn=1 c=1 seed=none\nPSI 00\nPI 1\n",
               "line 2");
  expect_error("CATSKETCH-MODEL v1\nn=1 c=1 d=1 seed=none\nPSI 00\n",
               "line 4");  // PI section missing
  expect_error("CATSKETCH-MODEL v1\nn=1 c=1 d=1 seed=none\nPSI 001\nPI 1\n",
               "line 3");  // psi length != c+1
  expect_error("CATSKETCH-MODEL v1\nn=1 c=1 d=1 seed=none\nPSI 10\nPI 1\n",
               "line 3");  // psi[0] violated
  expect_error("CATSKETCH-MODEL v1\nn=2 c=1 d=1 seed=none\nPSI 00\nPI 1\n",
               "line 4");  // pi count != n
  expect_error("CATSKETCH-MODEL v1\nn=1 c=1 d=6 seed=none\nPSI 00\nPI 7\n",
               "line 4");  // pi range
  expect_error(
      "CATSKETCH-MODEL v1\nn=1 c=1 d=1 seed=none\nPSI 00\nPI 1\nextra\n",
      "line 5");  // trailing content
}
