// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "catsketch/error.hpp"

namespace catsketch {

using Index = std::uint32_t;  // 1-based attribute / bit positions
using Label = std::uint32_t;  // category labels; 0 means "missing"

struct Entry {
  Index index;  // 1-based
  Label label;  // nonzero
  friend bool operator==(const Entry&, const Entry&) = default;
};

// Sparse vector over {0, 1, ..., c}^n. Only nonzero coordinates are stored,
// sorted by index. Coordinates absent from `entries` hold label 0.
class CategoricalVector {
 public:
  CategoricalVector() = default;
  // Entries must be strictly increasing in index, with 1 <= index <= dim and
  // label != 0.
  CategoricalVector(Index dim, std::vector<Entry> entries);
  static CategoricalVector from_dense(std::span<const Label> values);

  Index dim() const noexcept { return dim_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t density() const noexcept { return entries_.size(); }
  Label at(Index position) const;  // 1-based; 0 when missing

  friend bool operator==(const CategoricalVector&,
                         const CategoricalVector&) = default;

 private:
  Index dim_ = 0;
  std::vector<Entry> entries_;
};

std::size_t density(const CategoricalVector& u) noexcept;

// Number of coordinates where the labels differ (zeros included).
std::size_t hamming_distance(const CategoricalVector& u,
                             const CategoricalVector& v);

// Packed bit vector with a cached population count. Positions are 1-based to
// match attribute indexing. Storage is LSB-first: position p lives at bit
// (p-1) % 8 of byte (p-1) / 8, so <1,1,0,1,1,0> packs to 0x1b.
class BinaryVector {
 public:
  BinaryVector() = default;
  explicit BinaryVector(Index dim);
  static BinaryVector from_positions(Index dim, std::span<const Index> ones);
  static BinaryVector from_packed(Index dim,
                                  std::span<const std::uint8_t> bytes);

  Index dim() const noexcept { return dim_; }
  std::size_t weight() const noexcept { return weight_; }
  bool test(Index position) const;
  void set(Index position);  // idempotent
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::vector<std::uint8_t> packed_bytes() const;
  // Popcount over the raw words; equals weight() unless the cache is broken.
  std::size_t recount() const noexcept;

  friend bool operator==(const BinaryVector&, const BinaryVector&) = default;

 private:
  Index dim_ = 0;
  std::size_t weight_ = 0;
  std::vector<std::uint64_t> words_;
};

std::size_t hamming_distance(const BinaryVector& u, const BinaryVector& v);
// Number of shared set bits.
std::size_t sketch_inner_product(const BinaryVector& u,
                                 const BinaryVector& v);

struct Dataset {
  std::string name;
  Index dim = 0;
  Label categories = 0;  // largest label in any point
  std::vector<CategoricalVector> points;
};

// Validates that every point has dimension `dim` and records the largest
// label as `categories`.
Dataset make_dataset(std::string name, Index dim,
                     std::vector<CategoricalVector> points);

class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0)
      : n_(n), cells_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  double& at(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> cells_;
};

}  // namespace catsketch
