/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

// Shared fixtures: the reference density table and a lazily built table.

#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "btcert/density_third.hpp"

namespace btcert::testing {

// Reference cell: "-" before the column starts, "inf" or blank after the
// conditions fail, otherwise the integer bound.
struct RefCell {
  enum Kind { kDash, kInf, kValue } kind = kDash;
  long value = 0;
};

// (column, lambda hundredths) -> reference cell.
inline std::map<std::pair<int, int>, RefCell> load_reference_table() {
  std::ifstream in(std::string(BTCERT_TEST_DATA) + "/density_table_reference.csv");
  if (!in) throw std::runtime_error("missing density_table_reference.csv");
  std::map<std::pair<int, int>, RefCell> out;
  std::string line;
  while (std::getline(in, line) && line.rfind('#', 0) == 0) {
  }
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    while (f.size() < 8) f.emplace_back();
    const int h = static_cast<int>(std::lround(std::stod(f[0]) * 100));
    for (int col = 0; col < 7; ++col) {
      RefCell c;
      const auto& v = f[col + 1];
      if (v == "-") c.kind = RefCell::kDash;
      else if (v == "inf" || v.empty()) c.kind = RefCell::kInf;
      else {
        c.kind = RefCell::kValue;
        c.value = std::stol(v);
      }
      out[{col, h}] = c;
    }
  }
  return out;
}

inline const density::DensityTable& shared_table() {
  static const density::DensityTable t = density::build_table1();
  return t;
}

}  // namespace btcert::testing
