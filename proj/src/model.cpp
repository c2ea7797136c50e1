// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#include "catsketch/model.hpp"

#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "catsketch/rng.hpp"
#include "text_util.hpp"

namespace catsketch {

std::size_t choose_dimension(const SketchParams& params) {
  if (params.s < 1)
    throw InvalidArgument("density bound s must be >= 1");
  if (!(params.delta > 0.0 && params.delta < 1.0))
    throw InvalidArgument("delta must lie in (0, 1)");
  const double s = static_cast<double>(params.s);
  const double raw = s * std::sqrt(0.5 * s * std::log(6.0 / params.delta));
  return static_cast<std::size_t>(std::ceil(raw));
}

SketchModel SketchModel::make(std::optional<std::uint64_t> seed,
                              std::vector<std::uint8_t> psi,
                              std::vector<Index> pi, Index d) {
  if (d < 1) throw InvalidArgument("sketch dimension d must be >= 1");
  if (psi.size() < 2)
    throw InvalidArgument("psi table needs entries for labels 0..c, c >= 1");
  if (pi.empty()) throw InvalidArgument("pi table must cover positions 1..n");
  if (psi[0] != 0) throw InvalidArgument("psi[0] must be 0");
  for (std::size_t l = 0; l < psi.size(); ++l)
    if (psi[l] > 1)
      throw InvalidArgument("psi[" + std::to_string(l) + "] must be 0 or 1");
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] < 1 || pi[i] > d)
      throw InvalidArgument("pi[" + std::to_string(i + 1) + "] = " +
                            std::to_string(pi[i]) + " outside 1.." +
                            std::to_string(d));
  SketchModel m;
  m.d_ = d;
  m.seed_ = seed;
  m.psi_ = std::move(psi);
  m.pi_ = std::move(pi);
  return m;
}

SketchModel SketchModel::build(Index n, Label c, Index d,
                               std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("original dimension n must be >= 1");
  if (c < 1) throw InvalidArgument("category count c must be >= 1");
  if (d < 1) throw InvalidArgument("sketch dimension d must be >= 1");
  std::vector<std::uint8_t> psi(static_cast<std::size_t>(c) + 1);
  psi[0] = 0;
  for (Label l = 1; l <= c; ++l)
    psi[l] = static_cast<std::uint8_t>(rng::draw(seed, rng::kPsi, l) & 1);
  std::vector<Index> pi(n);
  for (Index i = 1; i <= n; ++i)
    pi[i - 1] = static_cast<Index>(1 + rng::bounded(seed, rng::kPi, i, d));
  return make(seed, std::move(psi), std::move(pi), d);
}

SketchModel SketchModel::from_tables(std::vector<std::uint8_t> psi,
                                     std::vector<Index> pi, Index d) {
  return make(std::nullopt, std::move(psi), std::move(pi), d);
}

void serialize_model(const SketchModel& m, std::ostream& out) {
  out << "CATSKETCH-MODEL v1\n";
  out << "n=" << m.n() << " c=" << m.c() << " d=" << m.d() << " seed=";
  if (m.seed())
    out << *m.seed();
  else
    out << "none";
  out << "\nPSI ";
  for (std::uint8_t bit : m.psi_table()) out << (bit ? '1' : '0');
  out << "\nPI";
  for (Index bucket : m.pi_table()) out << ' ' << bucket;
  out << "\n";
}

SketchModel parse_model(std::istream& in) {
  detail::LineReader reader(in);

  if (reader.require("magic line") != "CATSKETCH-MODEL v1")
    throw ParseError(1, "bad magic: expected 'CATSKETCH-MODEL v1'");

  const std::string header = reader.require("model header");
  const auto fields = detail::split(header, ' ');
  if (fields.size() != 4)
    throw ParseError(2, "header needs exactly n= c= d= seed= fields");
  const Index n =
      detail::require_int<Index>(detail::field_value(fields[0], "n", 2), 2,
                                 "n");
  const Label c =
      detail::require_int<Label>(detail::field_value(fields[1], "c", 2), 2,
                                 "c");
  const Index d =
      detail::require_int<Index>(detail::field_value(fields[2], "d", 2), 2,
                                 "d");
  const std::string_view seed_text = detail::field_value(fields[3], "seed", 2);
  std::optional<std::uint64_t> seed;
  if (seed_text != "none")
    seed = detail::require_int<std::uint64_t>(seed_text, 2, "seed");
  if (n < 1) throw ParseError(2, "n must be >= 1");
  if (c < 1) throw ParseError(2, "c must be >= 1");
  if (d < 1) throw ParseError(2, "d must be >= 1");

  const std::string psi_line = reader.require("PSI section");
  if (psi_line.size() < 4 || psi_line.substr(0, 4) != "PSI ")
    throw ParseError(3, "missing PSI section");
  const std::string_view psi_text = std::string_view(psi_line).substr(4);
  if (psi_text.size() != static_cast<std::size_t>(c) + 1)
    throw ParseError(3, "PSI carries " + std::to_string(psi_text.size()) +
                            " bits, header promises " + std::to_string(c + 1));
  std::vector<std::uint8_t> psi(psi_text.size());
  for (std::size_t l = 0; l < psi_text.size(); ++l) {
    if (psi_text[l] != '0' && psi_text[l] != '1')
      throw ParseError(3, "PSI entries must be 0 or 1");
    psi[l] = psi_text[l] == '1';
  }
  if (psi[0] != 0) throw ParseError(3, "psi[0] must be 0");

  const std::string pi_line = reader.require("PI section");
  if (pi_line.size() < 3 || pi_line.substr(0, 3) != "PI ")
    throw ParseError(4, "missing PI section");
  const auto tokens = detail::split(std::string_view(pi_line).substr(3), ' ');
  if (tokens.size() != n)
    throw ParseError(4, "PI carries " + std::to_string(tokens.size()) +
                            " entries, header promises " + std::to_string(n));
  std::vector<Index> pi(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    pi[i] = detail::require_int<Index>(tokens[i], 4,
                                       "PI entry " + std::to_string(i + 1));
    if (pi[i] < 1 || pi[i] > d)
      throw ParseError(4, "PI entry " + std::to_string(i + 1) + " = " +
                              std::to_string(pi[i]) + " outside 1.." +
                              std::to_string(d));
  }
  reader.require_eof("PI section");

  SketchModel m = SketchModel::make(seed, std::move(psi), std::move(pi), d);
  return m;
}

}  // namespace catsketch
