// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#include "catsketch/core.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

namespace catsketch {

CategoricalVector::CategoricalVector(Index dim, std::vector<Entry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  Index prev = 0;
  for (const Entry& e : entries_) {
    if (e.index < 1 || e.index > dim_)
      throw InvalidArgument("entry index " + std::to_string(e.index) +
                            " outside 1.." + std::to_string(dim_));
    if (e.index <= prev)
      throw InvalidArgument("entry indices must be strictly increasing");
    if (e.label == 0)
      throw InvalidArgument("explicit zero label at index " +
                            std::to_string(e.index));
    prev = e.index;
  }
}

CategoricalVector CategoricalVector::from_dense(
    std::span<const Label> values) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != 0)
      entries.push_back({static_cast<Index>(i + 1), values[i]});
  return CategoricalVector(static_cast<Index>(values.size()),
                           std::move(entries));
}

Label CategoricalVector::at(Index position) const {
  if (position < 1 || position > dim_)
    throw InvalidArgument("position " + std::to_string(position) +
                          " outside 1.." + std::to_string(dim_));
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), position,
      [](const Entry& e, Index p) { return e.index < p; });
  return (it != entries_.end() && it->index == position) ? it->label : 0;
}

std::size_t density(const CategoricalVector& u) noexcept {
  return u.density();
}

std::size_t hamming_distance(const CategoricalVector& u,
                             const CategoricalVector& v) {
  if (u.dim() != v.dim())
    throw InvalidArgument("dimension mismatch: " + std::to_string(u.dim()) +
                          " vs " + std::to_string(v.dim()));
  const auto a = u.entries();
  const auto b = v.entries();
  std::size_t h = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].index < b[j].index) {
      ++h;
      ++i;
    } else if (a[i].index > b[j].index) {
      ++h;
      ++j;
    } else {
      h += a[i].label != b[j].label;
      ++i;
      ++j;
    }
  }
  return h + (a.size() - i) + (b.size() - j);
}

BinaryVector::BinaryVector(Index dim)
    : dim_(dim), words_((static_cast<std::size_t>(dim) + 63) / 64, 0) {}

BinaryVector BinaryVector::from_positions(Index dim,
                                          std::span<const Index> ones) {
  BinaryVector v(dim);
  for (Index p : ones) v.set(p);
  return v;
}

BinaryVector BinaryVector::from_packed(Index dim,
                                       std::span<const std::uint8_t> bytes) {
  const std::size_t expect = (static_cast<std::size_t>(dim) + 7) / 8;
  if (bytes.size() != expect)
    throw InvalidArgument("packed length " + std::to_string(bytes.size()) +
                          " for dimension " + std::to_string(dim) +
                          " (want " + std::to_string(expect) + ")");
  BinaryVector v(dim);
  for (std::size_t k = 0; k < bytes.size(); ++k)
    v.words_[k / 8] |= static_cast<std::uint64_t>(bytes[k]) << ((k % 8) * 8);
  const unsigned spare = expect * 8 - dim;
  if (spare != 0) {
    const std::uint8_t pad_mask = static_cast<std::uint8_t>(0xffu << (8 - spare));
    if (bytes.back() & pad_mask)
      throw InvalidArgument("padding bits beyond position " +
                            std::to_string(dim) + " must be zero");
  }
  v.weight_ = v.recount();
  return v;
}

bool BinaryVector::test(Index position) const {
  if (position < 1 || position > dim_)
    throw InvalidArgument("position " + std::to_string(position) +
                          " outside 1.." + std::to_string(dim_));
  const std::size_t p = position - 1;
  return (words_[p >> 6] >> (p & 63)) & 1u;
}

void BinaryVector::set(Index position) {
  if (position < 1 || position > dim_)
    throw InvalidArgument("position " + std::to_string(position) +
                          " outside 1.." + std::to_string(dim_));
  const std::size_t p = position - 1;
  const std::uint64_t bit = 1ull << (p & 63);
  std::uint64_t& word = words_[p >> 6];
  if (!(word & bit)) {
    word |= bit;
    ++weight_;
  }
}

std::vector<std::uint8_t> BinaryVector::packed_bytes() const {
  std::vector<std::uint8_t> out((static_cast<std::size_t>(dim_) + 7) / 8);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = static_cast<std::uint8_t>(words_[k / 8] >> ((k % 8) * 8));
  return out;
}

std::size_t BinaryVector::recount() const noexcept {
  std::size_t w = 0;
  for (std::uint64_t word : words_) w += std::popcount(word);
  return w;
}

std::size_t hamming_distance(const BinaryVector& u, const BinaryVector& v) {
  if (u.dim() != v.dim())
    throw InvalidArgument("dimension mismatch: " + std::to_string(u.dim()) +
                          " vs " + std::to_string(v.dim()));
  const auto a = u.words();
  const auto b = v.words();
  std::size_t h = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    h += std::popcount(a[k] ^ b[k]);
  return h;
}

std::size_t sketch_inner_product(const BinaryVector& u,
                                 const BinaryVector& v) {
  if (u.dim() != v.dim())
    throw InvalidArgument("dimension mismatch: " + std::to_string(u.dim()) +
                          " vs " + std::to_string(v.dim()));
  const auto a = u.words();
  const auto b = v.words();
  std::size_t n = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    n += std::popcount(a[k] & b[k]);
  return n;
}

Dataset make_dataset(std::string name, Index dim,
                     std::vector<CategoricalVector> points) {
  Dataset ds;
  ds.name = std::move(name);
  ds.dim = dim;
  ds.points = std::move(points);
  for (std::size_t i = 0; i < ds.points.size(); ++i) {
    const auto& p = ds.points[i];
    if (p.dim() != dim)
      throw InvalidArgument("point " + std::to_string(i) + " has dimension " +
                            std::to_string(p.dim()) + ", dataset has " +
                            std::to_string(dim));
    for (const Entry& e : p.entries())
      ds.categories = std::max(ds.categories, e.label);
  }
  return ds;
}

}  // namespace catsketch
