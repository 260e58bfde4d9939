/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/// @file density_third.hpp
/// @brief Near-one zero counts N*(lambda) from the quintic kernel, and the
/// density table built from them.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "btcert/errors.hpp"
#include "btcert/kernels.hpp"
#include "btcert/numerics.hpp"

namespace btcert::density {

/// Integer bound, or INFINITE when the kernel conditions fail.
struct NStarBound {
  std::optional<std::int64_t> value;

  static NStarBound infinite() { return {}; }
  static NStarBound finite(std::int64_t v) { return {v}; }
  bool is_infinite() const { return !value.has_value(); }

  friend bool operator==(const NStarBound& a, const NStarBound& b) { return a.value == b.value; }
};

struct G3Breakdown {
  double center = 0;            // G(-lambda11) - g(0)/6
  std::array<double, 5> near{};  // c = 1..5, each 2 max(sup |Re G| - g(0)/6, 0)
  double tail = 0;              // c >= 6 via the G4 majorant
  int tail_end = 6;             // first c whose G4 term is <= g(0)/6
  double total = 0;
};

inline constexpr int kG3TailCap = 1000000;

/// Bound for G3 at a lower limit lambda11 of the extremal zero.
inline G3Breakdown G3_breakdown(double lambda11, const kernels::QuinticKernelParams& p,
                                double tol = numerics::kDefaultTol,
                                std::size_t grid = numerics::kMin1dGrid) {
  if (!(lambda11 > 0.0)) throw DomainError("G3_bound: lambda11 must be > 0");
  p.validate();
  const double sixth = kernels::kernel_g0(p) / 6.0;
  G3Breakdown out;
  out.center = kernels::laplace_G_real(-lambda11, p) - sixth;
  out.total = out.center;
  for (int c = 1; c <= 5; ++c) {
    auto r = numerics::max1d(
        [&](double t) { return std::abs(kernels::laplace_G({-lambda11, t}, p).real()); },
        {c - 1.0, c + 1.0}, tol, grid);
    out.near[c - 1] = 2.0 * std::max(r.value + tol - sixth, 0.0);
    out.total += out.near[c - 1];
  }
  int c = 6;
  for (; c < kG3TailCap; ++c) {
    const double g4 = kernels::majorant_G4(-lambda11, c - 1.0, p);
    if (g4 <= sixth) break;
    out.tail += 2.0 * (g4 - sixth);
  }
  if (c >= kG3TailCap) throw DomainError("G3_bound: majorant tail did not terminate");
  out.tail_end = c;
  out.total += out.tail;
  return out;
}

inline double G3_bound(double lambda11, const kernels::QuinticKernelParams& p,
                       double tol = numerics::kDefaultTol,
                       std::size_t grid = numerics::kMin1dGrid) {
  return G3_breakdown(lambda11, p, tol, grid).total;
}

/// N*(lambda) for one gamma, given a precomputed G3. INFINITE when
/// G(lambda - lambda11) <= g(0)/6 or the squared margin does not exceed
/// G(-lambda11) g(0)/6.
inline NStarBound Nstar_from_G3(double lambda, double lambda11, double g3,
                                const kernels::QuinticKernelParams& p) {
  if (!(lambda >= 0.0 && lambda <= 2.0)) throw DomainError("Nstar_bound: lambda must lie in [0, 2]");
  if (!(lambda11 > 0.0)) throw DomainError("Nstar_bound: lambda11 must be > 0");
  const double sixth = kernels::kernel_g0(p) / 6.0;
  const double a = kernels::laplace_G_real(lambda - lambda11, p);
  const double gm = kernels::laplace_G_real(-lambda11, p);
  if (!(a > sixth)) return NStarBound::infinite();
  const double den = (a - sixth) * (a - sixth) - gm * sixth;
  if (!(den > 0.0)) return NStarBound::infinite();
  const double q = gm * g3 / den;
  if (!std::isfinite(q) || q > 9.0e18) return NStarBound::infinite();
  return NStarBound::finite(static_cast<std::int64_t>(std::floor(q + 1e-9)));
}

inline NStarBound Nstar_bound(double lambda, double lambda11, const kernels::QuinticKernelParams& p,
                              double tol = numerics::kDefaultTol) {
  if (!(lambda >= 0.0 && lambda <= 2.0)) throw DomainError("Nstar_bound: lambda must lie in [0, 2]");
  return Nstar_from_G3(lambda, lambda11, G3_bound(lambda11, p, tol), p);
}

/// gamma grid {1.00, 1.01, ..., 1.60} as integer hundredths.
inline std::vector<int> default_gamma_grid() {
  std::vector<int> g;
  for (int k = 100; k <= 160; ++k) g.push_back(k);
  return g;
}

struct GammaChoice {
  NStarBound bound;
  double gamma = 0;  // 0 when every gamma fails
};

/// Smallest N* over the gamma grid; ties go to the smallest gamma.
/// `g3_by_gamma[i]` must hold G3 at gamma = gammas[i] / 100.
inline GammaChoice best_over_gamma(double lambda, double lambda11, const std::vector<int>& gammas,
                                   const std::vector<double>& g3_by_gamma) {
  GammaChoice best;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const kernels::QuinticKernelParams p{gammas[i] / 100.0};
    const auto b = Nstar_from_G3(lambda, lambda11, g3_by_gamma[i], p);
    if (b.is_infinite()) continue;
    if (best.bound.is_infinite() || *b.value < *best.bound.value) {
      best.bound = b;
      best.gamma = p.gamma;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Density table

enum class CellState { kNotStarted, kFinite, kInfinite };

struct DensityCell {
  CellState state = CellState::kNotStarted;
  std::int64_t bound = 0;  // meaningful when kFinite
  double gamma = 0;        // gamma that attains the bound

  NStarBound as_bound() const {
    return state == CellState::kFinite ? NStarBound::finite(bound) : NStarBound::infinite();
  }
};

inline std::vector<double> default_thresholds() {
  return {0.35, 0.40, 0.44, 0.52, 0.60, 0.66, 6.0 / 7.0};
}

/// Threshold labels as printed in reports.
inline std::string threshold_label(double t) {
  if (std::abs(t - 6.0 / 7.0) < 1e-12) return "6/7";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", t);
  return buf;
}

struct TableConfig {
  std::vector<double> thresholds = default_thresholds();
  int lambda_lo = 74;  // hundredths
  int lambda_hi = 145;
  std::vector<int> gammas = default_gamma_grid();
  double tol = numerics::kDefaultTol;
  std::size_t grid = numerics::kMin1dGrid;  // per G3 sub-supremum
};

/// N* bounds indexed by (column, lambda in hundredths).
class DensityTable {
 public:
  DensityTable() = default;
  explicit DensityTable(TableConfig cfg) : cfg_(std::move(cfg)) {}

  const TableConfig& config() const { return cfg_; }
  const std::vector<double>& thresholds() const { return cfg_.thresholds; }
  int lambda_lo() const { return cfg_.lambda_lo; }
  int lambda_hi() const { return cfg_.lambda_hi; }

  void set(std::size_t col, int hundredths, DensityCell cell) { cells_[{col, hundredths}] = cell; }

  bool has(std::size_t col, int hundredths) const { return cells_.count({col, hundredths}) != 0; }

  const DensityCell& at(std::size_t col, int hundredths) const {
    auto it = cells_.find({col, hundredths});
    if (it == cells_.end()) throw CoverageError("density table has no cell " + cell_name(col, hundredths));
    return it->second;
  }

  /// Finite bound needed by an assembly; anything else is a coverage gap.
  std::int64_t require_finite(std::size_t col, int hundredths) const {
    const auto& c = at(col, hundredths);
    if (c.state == CellState::kNotStarted) {
      throw CoverageError("density table cell " + cell_name(col, hundredths) + " lies before the column start");
    }
    if (c.state == CellState::kInfinite) {
      throw CoverageError("density table cell " + cell_name(col, hundredths) + " is infinite");
    }
    return c.bound;
  }

  /// Largest threshold <= lambda11.
  std::size_t column_for(double lambda11) const {
    std::optional<std::size_t> col;
    for (std::size_t i = 0; i < cfg_.thresholds.size(); ++i) {
      if (cfg_.thresholds[i] <= lambda11 + 1e-12) col = i;
    }
    if (!col) throw CoverageError("no density table column covers lambda11 = " + std::to_string(lambda11));
    return *col;
  }

  std::string cell_name(std::size_t col, int hundredths) const {
    char buf[96];
    const std::string th = col < cfg_.thresholds.size() ? threshold_label(cfg_.thresholds[col]) : "?";
    std::snprintf(buf, sizeof buf, "(threshold %s, lambda %d.%02d)", th.c_str(), hundredths / 100,
                  hundredths % 100);
    return buf;
  }

 private:
  TableConfig cfg_;
  std::map<std::pair<std::size_t, int>, DensityCell> cells_;
};

/// First row (hundredths) where a column applies: strictly above the
/// threshold rounded to two decimals.
inline int column_start(double threshold) {
  return static_cast<int>(std::lround(threshold * 100.0)) + 1;
}

/// Fill every cell. G3 is computed once per (column, gamma), one task per
/// column; assembly order is fixed.
inline DensityTable build_table1(const TableConfig& cfg = {}) {
  DensityTable table(cfg);
  const std::size_t ncol = cfg.thresholds.size();
  std::vector<std::future<std::vector<double>>> jobs;
  jobs.reserve(ncol);
  for (std::size_t col = 0; col < ncol; ++col) {
    jobs.push_back(std::async(std::launch::async, [&cfg, col] {
      std::vector<double> g3;
      g3.reserve(cfg.gammas.size());
      for (int g : cfg.gammas) {
        g3.push_back(G3_bound(cfg.thresholds[col], kernels::QuinticKernelParams{g / 100.0}, cfg.tol, cfg.grid));
      }
      return g3;
    }));
  }
  for (std::size_t col = 0; col < ncol; ++col) {
    const auto g3 = jobs[col].get();
    const double l11 = cfg.thresholds[col];
    const int start = column_start(l11);
    for (int h = cfg.lambda_lo; h <= cfg.lambda_hi; ++h) {
      DensityCell cell;
      if (h >= start) {
        const auto best = best_over_gamma(h / 100.0, l11, cfg.gammas, g3);
        if (best.bound.is_infinite()) {
          cell.state = CellState::kInfinite;
        } else {
          cell.state = CellState::kFinite;
          cell.bound = *best.bound.value;
          cell.gamma = best.gamma;
        }
      }
      table.set(col, h, cell);
    }
  }
  return table;
}

/// Structural checks on a built table; returns one message per violation.
///  - within a column, finite bounds never decrease as lambda grows;
///  - once a column is infinite it stays infinite;
///  - at fixed lambda, a larger threshold never gives a larger bound.
inline std::vector<std::string> table_violations(const DensityTable& t) {
  std::vector<std::string> out;
  const std::size_t ncol = t.thresholds().size();
  for (std::size_t col = 0; col < ncol; ++col) {
    std::optional<std::int64_t> prev;
    bool seen_inf = false;
    for (int h = t.lambda_lo(); h <= t.lambda_hi(); ++h) {
      const auto& c = t.at(col, h);
      if (c.state == CellState::kNotStarted) continue;
      if (c.state == CellState::kInfinite) {
        seen_inf = true;
        continue;
      }
      if (seen_inf) out.push_back("finite after infinite at " + t.cell_name(col, h));
      if (prev && c.bound < *prev) out.push_back("column decreases at " + t.cell_name(col, h));
      prev = c.bound;
    }
  }
  for (int h = t.lambda_lo(); h <= t.lambda_hi(); ++h) {
    for (std::size_t col = 1; col < ncol; ++col) {
      const auto& a = t.at(col - 1, h);
      const auto& b = t.at(col, h);
      if (b.state == CellState::kNotStarted || a.state == CellState::kNotStarted) continue;
      const bool b_worse = (a.state == CellState::kFinite && b.state == CellState::kInfinite) ||
                           (a.state == CellState::kFinite && b.state == CellState::kFinite && b.bound > a.bound);
      if (b_worse) out.push_back("larger threshold gives larger bound at " + t.cell_name(col, h));
    }
  }
  return out;
}

}  // namespace btcert::density
