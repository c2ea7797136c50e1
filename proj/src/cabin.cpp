// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#include "catsketch/cabin.hpp"

#include <bit>
#include <string>

#include "catsketch/parallel.hpp"

namespace catsketch {

namespace {

void check_dims(Index have, Index want) {
  if (have != want)
    throw InvalidArgument("vector dimension " + std::to_string(have) +
                          ", model expects " + std::to_string(want));
}

void check_label(Label label, Label c) {
  if (label > c)
    throw InvalidArgument("label " + std::to_string(label) +
                          " exceeds model category count " +
                          std::to_string(c));
}

}  // namespace

BinaryVector bin_em(const CategoricalVector& u, const SketchModel& m) {
  check_dims(u.dim(), m.n());
  BinaryVector out(m.n());
  for (const Entry& e : u.entries()) {
    check_label(e.label, m.c());
    if (m.psi(e.label)) out.set(e.index);
  }
  return out;
}

BinaryVector bin_sketch(const BinaryVector& u_prime, const SketchModel& m) {
  check_dims(u_prime.dim(), m.n());
  BinaryVector out(m.d());
  const auto words = u_prime.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = words[w];
    while (word != 0) {
      const int b = std::countr_zero(word);
      word &= word - 1;
      out.set(m.pi(static_cast<Index>(w * 64 + b + 1)));
    }
  }
  return out;
}

BinaryVector cabin(const CategoricalVector& u, const SketchModel& m) {
  check_dims(u.dim(), m.n());
  BinaryVector out(m.d());
  for (const Entry& e : u.entries()) {
    check_label(e.label, m.c());
    if (m.psi(e.label)) out.set(m.pi(e.index));
  }
  return out;
}

SketchSet sketch_dataset(const Dataset& ds, const SketchModel& m,
                         unsigned workers) {
  check_dims(ds.dim, m.n());
  // Validate ahead of the parallel section so a bad row is always reported
  // as the first offending index, independent of worker count.
  for (std::size_t i = 0; i < ds.points.size(); ++i)
    for (const Entry& e : ds.points[i].entries())
      if (e.label > m.c())
        throw InvalidArgument("row " + std::to_string(i) + ": label " +
                              std::to_string(e.label) +
                              " exceeds model category count " +
                              std::to_string(m.c()));
  SketchSet out;
  out.n = m.n();
  out.c = m.c();
  out.d = m.d();
  out.model_seed = m.seed();
  out.rows.resize(ds.points.size());
  parallel_for(0, ds.points.size(), workers,
               [&](std::size_t i) { out.rows[i] = cabin(ds.points[i], m); });
  return out;
}

}  // namespace catsketch
