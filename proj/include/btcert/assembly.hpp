/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/// @file assembly.hpp
/// @brief Final certificates: the ladder bound over ranges of lambda1, the
/// Siegel-zero curve, and the scalar psi inequality.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "btcert/density_first.hpp"
#include "btcert/density_second.hpp"
#include "btcert/density_third.hpp"
#include "btcert/errors.hpp"

namespace btcert::assembly {

using density::CharacterClass;
using density::DensityTable;
using density::SieveWeights;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// M used for the certificate rows.
inline constexpr double kCertificateM = 7.999;
/// M at which the reference right-hand sides were tabulated.
inline constexpr double kReferenceM = 7.8;
inline constexpr double kRhsThreshold = 0.99;
inline constexpr double kReferenceTolerance = 0.01;

/// Everything the bound functions share.
struct Context {
  double K = 0.66;
  CharacterClass cls = CharacterClass::general();
  double delta = 0.0;
  SieveWeights weights = SieveWeights::defaults();
  double c2 = 0.0;

  /// C2 from the computed G2 at the configured weights.
  static Context with_computed_c2(double K = 0.66, CharacterClass cls = CharacterClass::general(),
                                  SieveWeights w = SieveWeights::defaults(),
                                  double tol = numerics::kDefaultTol) {
    Context ctx{K, cls, 0.0, w, 0.0};
    ctx.c2 = density::C2(w, density::G2_total(w, tol));
    return ctx;
  }

  double min_M() const { return K + 2.0 * weights.x1; }
};

/// exp(-M lambda) C1(lambda) / (B1(lambda) B2(lambda)).
inline double weighted_ratio(double lambda, double M, const Context& ctx) {
  return std::exp(-M * lambda) * density::C1(lambda, ctx.K, ctx.cls, ctx.delta) /
         (density::B1(lambda, ctx.K) * density::B2(lambda, ctx.weights));
}

inline double D(double lambda, double Lambda, double M, const Context& ctx) {
  if (!(lambda > 0.0)) throw DomainError("D: lambda must be > 0");
  if (lambda == Lambda) return 0.0;
  return (weighted_ratio(lambda, M, ctx) - weighted_ratio(Lambda, M, ctx)) *
         density::B2(lambda, ctx.weights);
}

struct AssemblyRow {
  double lambda11 = 0;
  double lambda12 = 0;  // +inf for the open last range
  double lambda21 = 0;
  double lambda11p = 0;
  double Lambda = 0;
  double M = kCertificateM;

  void validate(const Context& ctx) const {
    auto fail = [](const std::string& what) { throw DomainError("AssemblyRow: " + what); };
    if (!(lambda11 > 0.0)) fail("lambda11 must be > 0");
    if (!(lambda11 < lambda12)) fail("require lambda11 < lambda12");
    if (!(lambda21 >= lambda11)) fail("require lambda21 >= lambda11");
    if (!(lambda11p >= lambda11)) fail("require lambda11' >= lambda11");
    if (!(Lambda > 0.0)) fail("Lambda must be > 0");
    if (!(M >= ctx.min_M())) fail("require M >= K + 2 x1");
  }
};

struct RhsBreakdown {
  std::size_t column = 0;
  int s = -1;            // ladder length; -1 when lambda* >= Lambda
  double lambda_star = 0;
  double leading = 0;    // exp(-M Lambda) C1(Lambda) C2 / (B1 B2)(Lambda)
  double ladder = 0;     // sum (N(r) - N(r+1)) D(Lambda_{r+1})
  double last = 0;       // N(s) D(lambda*)
  double a1_first = 0;   // B1(l11) (e^{-M l11}/B1(l11) - e^{-M l11'}/B1(l11'))
  double a1_bracket = 0;
  int n1n2 = 2;          // multiplier of a1_first in the maximizing configuration
  int n4 = 2;            // multiplier of a1_bracket
  double a1 = 0;
  double total = 0;
};

/// Right-hand side of the final inequality for one lambda1 range.
inline RhsBreakdown final_rhs_breakdown(const AssemblyRow& row, const DensityTable& table,
                                        const Context& ctx) {
  row.validate(ctx);
  const double M = row.M;
  RhsBreakdown out;
  out.column = table.column_for(row.lambda11);

  const int L = static_cast<int>(std::lround(row.Lambda * 100.0));
  out.lambda_star = std::min({row.lambda11p, row.lambda21, row.Lambda});
  if (out.lambda_star >= row.Lambda) {
    out.s = -1;
  } else {
    out.s = static_cast<int>(std::ceil(L - 100.0 * out.lambda_star - 1e-9)) - 1;
  }
  auto N = [&](int r) { return static_cast<double>(table.require_finite(out.column, L - r)); };
  auto Dl = [&](double l) { return D(l, row.Lambda, M, ctx); };

  out.leading = weighted_ratio(row.Lambda, M, ctx) * ctx.c2;
  for (int r = 0; r < out.s; ++r) {
    out.ladder += (N(r) - N(r + 1)) * Dl((L - r - 1) / 100.0);
  }
  const double d_star = out.s >= 0 ? Dl(out.lambda_star) : 0.0;
  if (out.s >= 0) out.last = N(out.s) * d_star;

  const double K = ctx.K;
  const double b11 = density::B1(row.lambda11, K);
  const double b11p = density::B1(row.lambda11p, K);
  out.a1_first = b11 * (std::exp(-M * row.lambda11) / b11 - std::exp(-M * row.lambda11p) / b11p);
  out.a1_bracket = std::exp(-M * row.lambda11p) / b11p * density::C1(row.lambda11, K, ctx.cls, ctx.delta) -
                   weighted_ratio(row.Lambda, M, ctx) * density::B2(row.lambda12, ctx.weights) - d_star;
  // (n1 n2, n1 n3) over complex character / real character with real,
  // complex-in-first-rectangle, or complex-elsewhere extremal zero.
  constexpr std::array<std::array<int, 2>, 3> configs{{{2, 2}, {1, 1}, {2, 1}}};
  out.a1 = -std::numeric_limits<double>::infinity();
  for (const auto& c : configs) {
    const double v = c[0] * out.a1_first + c[1] * out.a1_bracket;
    if (v > out.a1) {
      out.a1 = v;
      out.n1n2 = c[0];
      out.n4 = c[1];
    }
  }
  out.total = out.leading + out.ladder + out.last + out.a1;
  return out;
}

inline double final_rhs(const AssemblyRow& row, const DensityTable& table, const Context& ctx) {
  return final_rhs_breakdown(row, table, ctx).total;
}

struct CertificateRow {
  AssemblyRow inputs;
  RhsBreakdown detail;
  double computed_rhs = 0;
  std::optional<double> reference_rhs;
  double tolerance = kReferenceTolerance;
  bool pass = false;
};

struct ReferenceRow {
  AssemblyRow row;
  double rhs = 0;
};

/// The 23 lambda1 ranges covering lambda1 >= 0.35, with the tabulated
/// right-hand side (computed at kReferenceM). `M` sets the rows' M.
inline std::vector<ReferenceRow> reference_table2_rows(double M = kCertificateM) {
  const double inf = kInfinity;
  std::vector<ReferenceRow> rows = {
      {{0.35, 0.40, 1.29, 2.10, 1.29}, 0.8579},  {{0.40, 0.44, 1.18, 2.03, 1.27}, 0.9821},
      {{0.44, 0.46, 1.08, 1.66, 1.28}, 0.9213},  {{0.46, 0.48, 1.08, 1.53, 1.28}, 0.9120},
      {{0.48, 0.50, 1.08, 1.47, 1.28}, 0.9041},  {{0.50, 0.52, 1.00, 1.40, 1.28}, 0.9304},
      {{0.52, 0.54, 1.00, 1.34, 1.31}, 0.8049},  {{0.54, 0.56, 0.92, 1.28, 1.31}, 0.8427},
      {{0.56, 0.58, 0.92, 1.23, 1.31}, 0.8385},  {{0.58, 0.60, 0.92, 1.18, 1.31}, 0.8349},
      {{0.60, 0.62, 0.85, 1.13, 1.34}, 0.7782},  {{0.62, 0.64, 0.85, 1.09, 1.34}, 0.7756},
      {{0.64, 0.66, 0.79, 1.04, 1.34}, 0.8363},  {{0.66, 0.68, 0.79, 1.00, 1.36}, 0.7652},
      {{0.68, 0.70, 0.79, 0.96, 1.36}, 0.7636},  {{0.70, 0.72, 0.745, 0.93, 1.36}, 0.8241},
      {{0.72, 0.74, 0.745, 0.91, 1.36}, 0.8229}, {{0.74, 0.76, 0.745, 0.89, 1.36}, 0.8219},
      {{0.76, 0.78, 0.76, 0.86, 1.36}, 0.7988},  {{0.78, 0.80, 0.78, 0.84, 1.36}, 0.7708},
      {{0.80, 0.82, 0.80, 0.83, 1.36}, 0.7463},  {{0.82, 0.86, 0.82, 0.827, 1.36}, 0.7243},
      {{0.86, inf, 0.86, 0.86, 1.44}, 0.5110},
  };
  for (auto& r : rows) r.row.M = M;
  return rows;
}

/// Certify each row. A reference value is compared only when the row's M is
/// the M it was tabulated at, unless `compare_always` is set.
inline std::vector<CertificateRow> build_table2(const std::vector<ReferenceRow>& rows,
                                                const DensityTable& table, const Context& ctx,
                                                bool compare_always = false) {
  std::vector<CertificateRow> out;
  out.reserve(rows.size());
  for (const auto& ref : rows) {
    CertificateRow c;
    c.inputs = ref.row;
    c.detail = final_rhs_breakdown(ref.row, table, ctx);
    c.computed_rhs = c.detail.total;
    if (compare_always || std::abs(ref.row.M - kReferenceM) < 1e-12) c.reference_rhs = ref.rhs;
    c.pass = c.computed_rhs < kRhsThreshold &&
             (!c.reference_rhs || std::abs(c.computed_rhs - *c.reference_rhs) <= c.tolerance);
    out.push_back(c);
  }
  return out;
}

inline std::vector<CertificateRow> build_table2(const std::vector<AssemblyRow>& rows,
                                                const DensityTable& table, const Context& ctx) {
  std::vector<CertificateRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    CertificateRow c;
    c.inputs = r;
    c.detail = final_rhs_breakdown(r, table, ctx);
    c.computed_rhs = c.detail.total;
    c.pass = c.computed_rhs < kRhsThreshold;
    out.push_back(c);
  }
  return out;
}

inline bool all_pass(const std::vector<CertificateRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CertificateRow& r) { return r.pass; });
}

// ---------------------------------------------------------------------------
// Siegel branch

struct SiegelCaseParams {
  double B = 1.0;
  double delta = 0.01;
  double K = 0.66;
  double M = 7.5;
  double lambda2_floor = 1.42;   // lower bound for lambda2
  double lambda1p_floor = 2.19;  // lower bound for lambda1'

  void validate(const SieveWeights& w) const {
    if (!(B >= 0.0 && B <= M - K - 2.0 * w.x1)) {
      throw DomainError("SiegelCaseParams: require 0 <= B <= M - K - 2 x1");
    }
    if (!(K > 0.0)) throw DomainError("SiegelCaseParams: K must be > 0");
    if (!(delta >= 0.0)) throw DomainError("SiegelCaseParams: delta must be >= 0");
  }
};

struct SiegelCoefficient {
  double coeff = 0;
  double exponent = 0;
  double ratio_lambda2 = 0;   // the lambda2 candidate (before c2)
  double ratio_lambda1p = 0;  // the lambda1' candidate (before c2)
};

inline SiegelCoefficient siegel_coefficient(const SiegelCaseParams& sp, CharacterClass cls,
                                            const SieveWeights& w, double c2) {
  sp.validate(w);
  const double mb = sp.M - sp.B;
  auto denom = [&](double l) { return density::B1(l, sp.K) * density::B2(l, w); };
  SiegelCoefficient out;
  out.ratio_lambda2 = std::exp(-mb * sp.lambda2_floor) * density::C1(sp.lambda2_floor, sp.K, cls) /
                      denom(sp.lambda2_floor);
  out.ratio_lambda1p =
      std::exp(-mb * sp.lambda1p_floor) * density::C1(0.0, sp.K, cls) / denom(sp.lambda1p_floor);
  out.coeff = c2 * std::max(out.ratio_lambda2, out.ratio_lambda1p);
  out.exponent = (12.0 / 11.0 - sp.delta) * sp.B;
  return out;
}

/// S(lambda1) = exp(-M lambda1) + coeff lambda1^exponent.
inline double siegel_curve(double lambda1, double M, const SiegelCoefficient& sc) {
  if (!(lambda1 > 0.0)) throw DomainError("siegel_curve: lambda1 must be > 0");
  return std::exp(-M * lambda1) + sc.coeff * std::pow(lambda1, sc.exponent);
}

/// True iff exp(-M t) + 4t < 1 - t on the grid eta k / n, k = 1..n, with
/// step at most 1e-4 (and n >= 1000). t = 0 is excluded: equality there.
inline bool siegel_psi_check(double M, double eta) {
  if (!(M >= 1.0)) throw DomainError("siegel_psi_check: require M >= 1");
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("siegel_psi_check: require 0 < eta < 1");
  const long n = std::max(1000L, static_cast<long>(std::ceil(eta / 1e-4)));
  for (long k = 1; k <= n; ++k) {
    const double t = eta * static_cast<double>(k) / static_cast<double>(n);
    if (!(std::exp(-M * t) + 4.0 * t < 1.0 - t)) return false;
  }
  return true;
}

}  // namespace btcert::assembly
