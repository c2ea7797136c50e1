// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "catsketch/core.hpp"

namespace catsketch {

// Density upper bound s and failure probability delta; together they fix the
// sketch width.
struct SketchParams {
  std::size_t s = 1;
  double delta = 0.1;
};

// d = ceil(s * sqrt((s/2) * ln(6/delta)))
std::size_t choose_dimension(const SketchParams& params);

// The frozen random mappings behind a sketch: psi sends labels {0..c} to
// bits (psi[0] pinned to 0 so empty attributes stay empty), pi sends
// positions {1..n} to buckets {1..d}. Immutable once built; safe to share
// across threads.
class SketchModel {
 public:
  // Tables are drawn counter-based from the seed: entry k is a pure function
  // of (seed, k), so identical parameters rebuild identical tables.
  static SketchModel build(Index n, Label c, Index d, std::uint64_t seed);
  // Wraps explicit tables (psi has c+1 entries, pi has n). Seed recorded as
  // absent.
  static SketchModel from_tables(std::vector<std::uint8_t> psi,
                                 std::vector<Index> pi, Index d);

  Index n() const noexcept { return static_cast<Index>(pi_.size()); }
  Label c() const noexcept { return static_cast<Label>(psi_.size() - 1); }
  Index d() const noexcept { return d_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  bool psi(Label label) const {
    if (label >= psi_.size())
      throw InvalidArgument("label " + std::to_string(label) +
                            " exceeds category count " +
                            std::to_string(psi_.size() - 1));
    return psi_[label] != 0;
  }
  Index pi(Index position) const {
    if (position < 1 || position > pi_.size())
      throw InvalidArgument("position " + std::to_string(position) +
                            " outside 1.." + std::to_string(pi_.size()));
    return pi_[position - 1];
  }

  std::span<const std::uint8_t> psi_table() const noexcept { return psi_; }
  std::span<const Index> pi_table() const noexcept { return pi_; }

  friend bool operator==(const SketchModel&, const SketchModel&) = default;

 private:
  SketchModel() = default;
  static SketchModel make(std::optional<std::uint64_t> seed,
                          std::vector<std::uint8_t> psi,
                          std::vector<Index> pi, Index d);
  friend SketchModel parse_model(std::istream& in);

  Index d_ = 0;
  std::optional<std::uint64_t> seed_;
  std::vector<std::uint8_t> psi_;  // c+1 entries of 0/1
  std::vector<Index> pi_;         // n entries in 1..d
};

// Text format, LF line endings:
//   CATSKETCH-MODEL v1
//   n=<int> c=<int> d=<int> seed=<int|none>
//   PSI <c+1 characters of 0/1>
//   PI <n space-separated 1-based integers>
// Files are canonical: parse followed by serialize reproduces the bytes.
void serialize_model(const SketchModel& m, std::ostream& out);
SketchModel parse_model(std::istream& in);

}  // namespace catsketch
