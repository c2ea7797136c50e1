// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "catsketch/baselines.hpp"
#include "catsketch/cabin.hpp"
#include "catsketch/clustering.hpp"
#include "catsketch/core.hpp"

namespace catsketch {

// UCI bag-of-words: three integer header lines D, W, NNZ, then exactly NNZ
// lines of `docID wordID count` (1-based, docID nondecreasing). Yields D
// vectors of dimension W with the count as the category label. Malformed
// input fails with a line-numbered error.
Dataset parse_docword(std::istream& in, std::string name = "docword");

// Rectangular CSV of nonnegative integers, one point per row.
Dataset parse_csv_categorical(std::istream& in, bool has_header = false,
                              std::string name = "csv");
void write_csv_categorical(const Dataset& ds, std::ostream& out);

// Uniform sample of m points without replacement, original order,
// seed-deterministic.
Dataset sample_dataset(const Dataset& ds, std::size_t m, std::uint64_t seed);

// Sketch file, LF line endings:
//   CATSKETCH-SKETCHES v1
//   d=<int> m=<row count> model_seed=<int|none>
//   <one lowercase-hex row per point, zero-padded to ceil(d/8) bytes>
void write_sketches(const SketchSet& s, std::ostream& out);
SketchSet read_sketches(std::istream& in);

// Baseline sketches share the header with `method=<FH|SH|HLSH> n=<int>`
// appended to line 2 (the estimation rule needs n). HLSH adds one
// `INDICES <d ascending 1-based ints>` line; FH rows are signed decimals,
// HLSH rows decimal labels, SH rows hex as above.
void write_baseline_sketches(const BaselineSketchSet& s, std::ostream& out);
BaselineSketchSet read_baseline_sketches(std::istream& in);

// Assignment CSV: header `point_index,cluster_id`, 0-based point index.
void write_assignment_csv(const ClusterAssignment& a, std::ostream& out);
ClusterAssignment read_assignment_csv(std::istream& in);

}  // namespace catsketch
