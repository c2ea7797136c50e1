// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#include "catsketch/dataio.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <unordered_set>
#include <utility>

#include "catsketch/rng.hpp"
#include "text_util.hpp"

namespace catsketch {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xf]);
  }
  return out;
}

int hex_nibble(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  return -1;
}

BinaryVector row_from_hex(std::string_view hex, Index d, std::size_t line) {
  const std::size_t want = ((static_cast<std::size_t>(d) + 7) / 8) * 2;
  if (hex.size() != want)
    throw ParseError(line, "hex row has " + std::to_string(hex.size()) +
                               " digits, want " + std::to_string(want) +
                               " for d=" + std::to_string(d));
  std::vector<std::uint8_t> bytes(want / 2);
  for (std::size_t k = 0; k < bytes.size(); ++k) {
    const int hi = hex_nibble(hex[2 * k]);
    const int lo = hex_nibble(hex[2 * k + 1]);
    if (hi < 0 || lo < 0)
      throw ParseError(line, "row is not lowercase hex");
    bytes[k] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  try {
    return BinaryVector::from_packed(d, bytes);
  } catch (const InvalidArgument& e) {
    throw ParseError(line, e.what());
  }
}

std::optional<std::uint64_t> parse_seed_field(std::string_view text,
                                              std::size_t line) {
  if (text == "none") return std::nullopt;
  return detail::require_int<std::uint64_t>(text, line, "model_seed");
}

void write_seed_field(std::ostream& out,
                      const std::optional<std::uint64_t>& seed) {
  if (seed)
    out << *seed;
  else
    out << "none";
}

}  // namespace

Dataset parse_docword(std::istream& in, std::string name) {
  detail::LineReader reader(in);
  const auto header_int = [&](const char* what) {
    const std::string line = reader.require(what);
    const auto value = detail::require_int<std::uint64_t>(
        line, reader.lineno(), what);
    if (value == 0)
      throw ParseError(reader.lineno(),
                       std::string(what) + " must be positive");
    return value;
  };
  const std::uint64_t docs = header_int("document count D");
  const std::uint64_t words = header_int("vocabulary size W");
  const std::uint64_t nnz = header_int("nonzero count NNZ");
  if (docs > 0xffffffffull)
    throw ParseError(1, "document count D exceeds the supported range");
  if (words > 0xffffffffull)
    throw ParseError(2, "vocabulary size W exceeds the supported range");
  if (nnz > docs * words)  // both bounded by 2^32-1, product cannot wrap
    throw ParseError(3, "NNZ exceeds D*W");

  std::vector<std::vector<Entry>> rows(docs);
  std::uint64_t last_doc = 1;
  for (std::uint64_t k = 0; k < nnz; ++k) {
    const std::string line = reader.require("docID wordID count triple");
    const std::size_t ln = reader.lineno();
    const auto fields = detail::split(line, ' ');
    if (fields.size() != 3)
      throw ParseError(ln, "expected 'docID wordID count', got '" + line +
                               "'");
    const auto doc =
        detail::require_int<std::uint64_t>(fields[0], ln, "docID");
    const auto word =
        detail::require_int<std::uint64_t>(fields[1], ln, "wordID");
    // A zero or negative count never survives the unsigned strict parse, so
    // report it as the count-range error the grammar promises.
    std::uint64_t count = 0;
    if (!detail::parse_int(fields[2], count) || count == 0)
      throw ParseError(ln, "count must be a positive integer, got '" +
                               std::string(fields[2]) + "'");
    if (doc < 1 || doc > docs)
      throw ParseError(ln, "docID " + std::to_string(doc) + " outside 1.." +
                               std::to_string(docs));
    if (word < 1 || word > words)
      throw ParseError(ln, "wordID " + std::to_string(word) + " outside 1.." +
                               std::to_string(words));
    if (count > 0xffffffffull)
      throw ParseError(ln, "count exceeds the supported label range");
    if (doc < last_doc)
      throw ParseError(ln, "docID " + std::to_string(doc) +
                               " decreases after " +
                               std::to_string(last_doc));
    last_doc = doc;
    rows[doc - 1].push_back(
        {static_cast<Index>(word), static_cast<Label>(count)});
  }
  {
    std::string extra;
    if (reader.next(extra))
      throw ParseError(reader.lineno(),
                       "more triples than the NNZ header promises");
  }

  std::vector<CategoricalVector> points;
  points.reserve(docs);
  for (std::uint64_t docidx = 0; docidx < docs; ++docidx) {
    auto& entries = rows[docidx];
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (entries[i].index == entries[i - 1].index)
        throw ParseError("document " + std::to_string(docidx + 1) +
                         " repeats wordID " +
                         std::to_string(entries[i].index));
    points.emplace_back(static_cast<Index>(words), std::move(entries));
  }
  return make_dataset(std::move(name), static_cast<Index>(words),
                      std::move(points));
}

Dataset parse_csv_categorical(std::istream& in, bool has_header,
                              std::string name) {
  detail::LineReader reader(in);
  std::string line;
  if (has_header && !reader.next(line))
    throw ParseError(1, "missing header row");
  std::vector<CategoricalVector> points;
  std::size_t width = 0;
  while (reader.next(line)) {
    const std::size_t ln = reader.lineno();
    const auto cells = detail::split(line, ',');
    if (points.empty()) {
      width = cells.size();
    } else if (cells.size() != width) {
      throw ParseError(ln, "row has " + std::to_string(cells.size()) +
                               " cells, previous rows have " +
                               std::to_string(width));
    }
    std::vector<Label> values(cells.size());
    for (std::size_t col = 0; col < cells.size(); ++col) {
      if (!detail::parse_int(cells[col], values[col]))
        throw ParseError(ln, "cell at column " + std::to_string(col + 1) +
                                 " is not a nonnegative integer: '" +
                                 std::string(cells[col]) + "'");
    }
    points.push_back(CategoricalVector::from_dense(values));
  }
  const Index dim = points.empty() ? 0 : static_cast<Index>(width);
  return make_dataset(std::move(name), dim, std::move(points));
}

void write_csv_categorical(const Dataset& ds, std::ostream& out) {
  for (const CategoricalVector& p : ds.points) {
    std::size_t next = 0;
    const auto entries = p.entries();
    for (Index col = 1; col <= ds.dim; ++col) {
      Label value = 0;
      if (next < entries.size() && entries[next].index == col)
        value = entries[next++].label;
      out << value << (col < ds.dim ? ',' : '\n');
    }
  }
}

Dataset sample_dataset(const Dataset& ds, std::size_t m, std::uint64_t seed) {
  if (m > ds.points.size())
    throw InvalidArgument("sample of " + std::to_string(m) + " from " +
                          std::to_string(ds.points.size()) + " points");
  std::unordered_set<std::size_t> chosen;
  chosen.reserve(m);
  for (std::size_t j = ds.points.size() - m; j < ds.points.size(); ++j) {
    const std::size_t t = rng::bounded(seed, rng::kDatasetSample, j, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::size_t> picks(chosen.begin(), chosen.end());
  std::sort(picks.begin(), picks.end());
  Dataset out;
  out.name = ds.name;
  out.dim = ds.dim;
  out.categories = ds.categories;
  out.points.reserve(m);
  for (std::size_t p : picks) out.points.push_back(ds.points[p]);
  return out;
}

void write_sketches(const SketchSet& s, std::ostream& out) {
  out << "CATSKETCH-SKETCHES v1\n";
  out << "d=" << s.d << " m=" << s.rows.size() << " model_seed=";
  write_seed_field(out, s.model_seed);
  out << "\n";
  for (const BinaryVector& row : s.rows) out << to_hex(row.packed_bytes())
                                             << "\n";
}

namespace {

struct SketchHeader {
  Index d = 0;
  std::size_t rows = 0;
  std::optional<std::uint64_t> model_seed;
  std::optional<BaselineMethod> method;
  Index n = 0;  // baseline files only
};

SketchHeader parse_sketch_header(detail::LineReader& reader,
                                 bool expect_baseline) {
  if (reader.require("magic line") != "CATSKETCH-SKETCHES v1")
    throw ParseError(1, "bad magic: expected 'CATSKETCH-SKETCHES v1'");
  const std::string header = reader.require("sketch header");
  const auto fields = detail::split(header, ' ');
  const std::size_t want = expect_baseline ? 5 : 3;
  if (fields.size() != want)
    throw ParseError(2, expect_baseline
                            ? "header needs d= m= model_seed= method= n="
                            : "header needs d= m= model_seed=");
  SketchHeader h;
  h.d = detail::require_int<Index>(detail::field_value(fields[0], "d", 2), 2,
                                   "d");
  h.rows = detail::require_int<std::size_t>(
      detail::field_value(fields[1], "m", 2), 2, "m");
  h.model_seed = parse_seed_field(
      detail::field_value(fields[2], "model_seed", 2), 2);
  if (h.d < 1) throw ParseError(2, "d must be >= 1");
  if (expect_baseline) {
    const std::string_view tag = detail::field_value(fields[3], "method", 2);
    try {
      h.method = baseline_method_from_string(tag);
    } catch (const InvalidArgument& e) {
      throw ParseError(2, e.what());
    }
    h.n = detail::require_int<Index>(detail::field_value(fields[4], "n", 2),
                                     2, "n");
    if (h.n < 1) throw ParseError(2, "n must be >= 1");
  }
  return h;
}

}  // namespace

SketchSet read_sketches(std::istream& in) {
  detail::LineReader reader(in);
  const SketchHeader h = parse_sketch_header(reader, false);
  SketchSet s;
  s.d = h.d;
  s.model_seed = h.model_seed;
  s.rows.reserve(h.rows);
  for (std::size_t r = 0; r < h.rows; ++r) {
    const std::string line = reader.require("sketch row");
    s.rows.push_back(row_from_hex(line, h.d, reader.lineno()));
  }
  reader.require_eof("sketch rows");
  return s;
}

void write_baseline_sketches(const BaselineSketchSet& s, std::ostream& out) {
  out << "CATSKETCH-SKETCHES v1\n";
  out << "d=" << s.d << " m=" << s.rows.size() << " model_seed=" << s.seed
      << " method=" << to_string(s.method) << " n=" << s.n << "\n";
  if (s.method == BaselineMethod::HammingLsh) {
    out << "INDICES";
    for (Index idx : s.sample_indices) out << ' ' << idx;
    out << "\n";
  }
  for (const BaselineSketch& row : s.rows) {
    switch (s.method) {
      case BaselineMethod::FeatureHash:
        for (Index j = 0; j < s.d; ++j)
          out << row.counts[j] << (j + 1 < s.d ? ' ' : '\n');
        break;
      case BaselineMethod::SimHash:
        out << to_hex(row.bits.packed_bytes()) << "\n";
        break;
      case BaselineMethod::HammingLsh:
        for (Index j = 0; j < s.d; ++j)
          out << row.labels[j] << (j + 1 < s.d ? ' ' : '\n');
        break;
    }
  }
}

BaselineSketchSet read_baseline_sketches(std::istream& in) {
  detail::LineReader reader(in);
  const SketchHeader h = parse_sketch_header(reader, true);
  if (!h.model_seed)
    throw ParseError(2, "baseline sketches always carry a model_seed");
  BaselineSketchSet s;
  s.method = *h.method;
  s.d = h.d;
  s.n = h.n;
  s.seed = *h.model_seed;
  if (s.method == BaselineMethod::HammingLsh) {
    const std::string line = reader.require("INDICES line");
    const std::size_t ln = reader.lineno();
    if (line.size() < 8 || line.substr(0, 8) != "INDICES ")
      throw ParseError(ln, "missing INDICES line");
    const auto tokens = detail::split(std::string_view(line).substr(8), ' ');
    if (tokens.size() != h.d)
      throw ParseError(ln, "INDICES carries " +
                               std::to_string(tokens.size()) +
                               " entries, header promises " +
                               std::to_string(h.d));
    s.sample_indices.resize(tokens.size());
    Index prev = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      s.sample_indices[i] = detail::require_int<Index>(
          tokens[i], ln, "INDICES entry " + std::to_string(i + 1));
      if (s.sample_indices[i] < 1 || s.sample_indices[i] > h.n)
        throw ParseError(ln, "sampled index " +
                                 std::to_string(s.sample_indices[i]) +
                                 " outside 1.." + std::to_string(h.n));
      if (s.sample_indices[i] <= prev)
        throw ParseError(ln, "INDICES must be strictly increasing");
      prev = s.sample_indices[i];
    }
  }
  s.rows.reserve(h.rows);
  for (std::size_t r = 0; r < h.rows; ++r) {
    const std::string line = reader.require("sketch row");
    const std::size_t ln = reader.lineno();
    BaselineSketch row;
    row.method = s.method;
    row.d = s.d;
    row.n = s.n;
    switch (s.method) {
      case BaselineMethod::FeatureHash: {
        const auto tokens = detail::split(line, ' ');
        if (tokens.size() != s.d)
          throw ParseError(ln, "row carries " +
                                   std::to_string(tokens.size()) +
                                   " buckets, header promises " +
                                   std::to_string(s.d));
        row.counts.resize(tokens.size());
        for (std::size_t j = 0; j < tokens.size(); ++j)
          row.counts[j] = detail::require_int<std::int64_t>(
              tokens[j], ln, "bucket " + std::to_string(j + 1));
        break;
      }
      case BaselineMethod::SimHash:
        row.bits = row_from_hex(line, s.d, ln);
        break;
      case BaselineMethod::HammingLsh: {
        const auto tokens = detail::split(line, ' ');
        if (tokens.size() != s.d)
          throw ParseError(ln, "row carries " +
                                   std::to_string(tokens.size()) +
                                   " labels, header promises " +
                                   std::to_string(s.d));
        row.labels.resize(tokens.size());
        for (std::size_t j = 0; j < tokens.size(); ++j)
          row.labels[j] = detail::require_int<Label>(
              tokens[j], ln, "label " + std::to_string(j + 1));
        row.indices = s.sample_indices;
        break;
      }
    }
    s.rows.push_back(std::move(row));
  }
  reader.require_eof("sketch rows");
  return s;
}

void write_assignment_csv(const ClusterAssignment& a, std::ostream& out) {
  out << "point_index,cluster_id\n";
  for (std::size_t p = 0; p < a.labels.size(); ++p)
    out << p << ',' << a.labels[p] << "\n";
}

ClusterAssignment read_assignment_csv(std::istream& in) {
  detail::LineReader reader(in);
  if (reader.require("assignment header") != "point_index,cluster_id")
    throw ParseError(1, "expected header 'point_index,cluster_id'");
  std::vector<Index> labels;
  std::string line;
  while (reader.next(line)) {
    const std::size_t ln = reader.lineno();
    const auto cells = detail::split(line, ',');
    if (cells.size() != 2)
      throw ParseError(ln, "expected 'point_index,cluster_id'");
    const auto point = detail::require_int<std::size_t>(cells[0], ln,
                                                        "point_index");
    if (point != labels.size())
      throw ParseError(ln, "point_index " + std::to_string(point) +
                               " out of order, expected " +
                               std::to_string(labels.size()));
    const auto cluster =
        detail::require_int<Index>(cells[1], ln, "cluster_id");
    if (cluster < 1) throw ParseError(ln, "cluster_id must be >= 1");
    labels.push_back(cluster);
  }
  return assignment_from_labels(std::move(labels));
}

}  // namespace catsketch
