/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/// @file report.hpp
/// @brief Tabular reports written as CSV or JSON with fixed 12-digit
/// formatting, so identical runs give identical bytes.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace btcert::report {

struct Infinite {};

using Cell = std::variant<std::string, double, std::int64_t, bool, Infinite>;

struct Report {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
  bool pass = true;
};

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Value rounded to 12 significant digits.
inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::stod(format_double(v));
}

inline std::string cell_text(const Cell& c) {
  struct V {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(Infinite) const { return "inf"; }
  };
  return std::visit(V{}, c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  struct V {
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return format_double(d);
      return round12(d);
    }
    nlohmann::ordered_json operator()(std::int64_t i) const { return i; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(Infinite) const { return "inf"; }
  };
  return std::visit(V{}, c);
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

/// Configuration and summary go in leading/trailing '#' comment lines; the
/// first non-comment line is the header.
inline void write_csv(const Report& r, std::ostream& os) {
  os << "# report=" << r.kind << '\n';
  for (const auto& [k, v] : r.config) os << "# config " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    os << (i ? "," : "") << detail::csv_escape(r.columns[i]);
  }
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << detail::csv_escape(cell_text(row[i]));
    }
    os << '\n';
  }
  for (const auto& [k, v] : r.summary) os << "# summary " << k << '=' << cell_text(v) << '\n';
  os << "# summary pass=" << (r.pass ? "true" : "false") << '\n';
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["report"] = r.kind;
  auto& cfg = j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) o[r.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(o));
  }
  auto& sum = j["summary"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.summary) sum[k] = cell_json(v);
  sum["pass"] = r.pass;
  return j;
}

inline void write_json(const Report& r, std::ostream& os) { os << to_json(r).dump(2) << '\n'; }

}  // namespace btcert::report
