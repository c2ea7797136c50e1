// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "catsketch/error.hpp"

// Strict, locale-free text helpers shared by the file-format code. All
// integer parses require the whole token to be consumed; formats are LF-only
// and any stray byte (including '\r') surfaces as a located parse error.

namespace catsketch::detail {

template <typename T>
bool parse_int(std::string_view text, T& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out, 10);
  return ec == std::errc() && ptr == last;
}

template <typename T>
T require_int(std::string_view text, std::size_t line,
              const std::string& what) {
  T value{};
  if (!parse_int(text, value))
    throw ParseError(line, what + ": bad integer '" + std::string(text) + "'");
  return value;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Value of a `key=value` token; the token must carry exactly this key.
inline std::string_view field_value(std::string_view token,
                                    std::string_view key, std::size_t line) {
  if (token.size() < key.size() + 1 || token.substr(0, key.size()) != key ||
      token[key.size()] != '=')
    throw ParseError(line, "expected " + std::string(key) + "=<value>, got '" +
                               std::string(token) + "'");
  return token.substr(key.size() + 1);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++lineno_;
    return true;
  }
  std::string require(const std::string& what) {
    std::string line;
    if (!next(line))
      throw ParseError(lineno_ + 1, "unexpected end of file: expected " + what);
    return line;
  }
  void require_eof(const std::string& format) {
    std::string line;
    if (next(line))
      throw ParseError(lineno_, "trailing content after " + format);
  }
  std::size_t lineno() const noexcept { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

}  // namespace catsketch::detail
