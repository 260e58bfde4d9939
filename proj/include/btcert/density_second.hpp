/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/// @file density_second.hpp
/// @brief Weighted character-sum bound: B2, the G2 supremum and C2.
///
/// G2 splits by the rectangle offset c = |m1 - m2|:
///   c = 0       one-dimensional supremum over lambda >= lambda_min;
///   1 <= c <= 6 two-dimensional supremum over lambda and t in [c-1, c+1];
///   c >= 7      closed form 2/(4 lambda_min^2 + (c-1)^2), summed exactly
///               up to c = 101 and by an arctan integral comparison beyond.
/// The lambda axis is truncated at 10; an explicit bound on the objective
/// beyond 10 is checked against the box maximum at run time.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <future>
#include <string>

#include "btcert/errors.hpp"
#include "btcert/numerics.hpp"

namespace btcert::density {

/// Exponents (of q) of the sieve and mollifier lengths, plus the lower
/// cut-off lambda_min of the zeros being weighted.
struct SieveWeights {
  double w = 0.115;
  double u0 = 0.564;
  double u1 = 0.620;
  double v = 0.964;
  double x0 = 1.413;
  double x1 = 1.623;
  double lambda_min = 0.35;

  static SieveWeights defaults() { return {}; }

  void validate() const {
    auto fail = [](const char* what) { throw DomainError(std::string("SieveWeights: ") + what); };
    if (!(w > 0 && u0 > 0 && u1 > 0 && v > 0 && x0 > 0 && x1 > 0)) fail("exponents must be > 0");
    if (!(x1 > x0)) fail("require x1 > x0");
    if (!(x0 > v + w + 1.0 / 3.0)) fail("require x0 > v + w + 1/3");
    if (!(v > u1)) fail("require v > u1");
    if (!(u1 > u0)) fail("require u1 > u0");
    if (!(u0 > 2.0 * w + 1.0 / 3.0)) fail("require u0 > 2w + 1/3");
    if (!(lambda_min > 0)) fail("require lambda_min > 0");
  }
};

/// prefactor * G2 is the default; prefactor * (1 + G2) is kept for comparison.
enum class C2Form { kTimesG2, kTimesOnePlusG2 };

inline constexpr double kLambdaTruncation = 10.0;

namespace detail {

/// (e^{2 x1 l} + e^{2 x0 l})/(x1 - x0) + (e^{2 u1 l} + e^{2 u0 l})/(u1 - u0)
inline double weight_sum(double lambda, const SieveWeights& p) {
  return (std::exp(2 * p.x1 * lambda) + std::exp(2 * p.x0 * lambda)) / (p.x1 - p.x0) +
         (std::exp(2 * p.u1 * lambda) + std::exp(2 * p.u0 * lambda)) / (p.u1 - p.u0);
}

/// The c = 0 objective: difference-over-sum ratio times (2 lambda)^-2.
inline double g2_diagonal(double lambda, const SieveWeights& p) {
  const double diff = (std::exp(2 * p.x1 * lambda) - std::exp(2 * p.x0 * lambda)) / (p.x1 - p.x0) -
                      (std::exp(2 * p.u1 * lambda) - std::exp(2 * p.u0 * lambda)) / (p.u1 - p.u0);
  return diff / weight_sum(lambda, p) / (4.0 * lambda * lambda);
}

/// The 1 <= c <= 6 objective (factor 2 included).
inline double g2_offdiagonal(double lambda, double t, const SieveWeights& p) {
  const std::complex<double> z(2.0 * lambda, t);
  const auto num = (std::exp(p.x1 * z) - std::exp(p.x0 * z)) / (p.x1 - p.x0) -
                   (std::exp(p.u1 * z) - std::exp(p.u0 * z)) / (p.u1 - p.u0);
  return 2.0 * std::abs(num) / (4.0 * lambda * lambda + t * t) / weight_sum(lambda, p);
}

/// Bound on the objective for every lambda >= 10: the difference of
/// exponentials is at most their sum, so c = 0 is at most 1/(4 lambda^2) and
/// c >= 1 at most 2/(4 lambda^2 + (c-1)^2). Truncating at 10 is valid when
/// this sits below the maximum found on the box.
inline double beyond_truncation_bound(int c) {
  const double l2 = 4.0 * kLambdaTruncation * kLambdaTruncation;
  if (c == 0) return 1.0 / l2;
  const double t = c - 1.0;
  return 2.0 / (l2 + t * t);
}

inline void check_truncation(int c, double box_max) {
  if (!(beyond_truncation_bound(c) < box_max)) {
    throw DomainError("G2 term c=" + std::to_string(c) +
                      ": objective beyond lambda=10 may exceed the box maximum; truncation invalid");
  }
}

}  // namespace detail

/// B2(lambda) = 1 / weight_sum(lambda). Returns 0 for lambda = +inf.
inline double B2(double lambda, const SieveWeights& p) {
  if (std::isinf(lambda) && lambda > 0) return 0.0;
  if (!(lambda >= 0.0)) throw DomainError("B2: lambda must be >= 0");
  return 1.0 / detail::weight_sum(lambda, p);
}

/// Closed-form bound for offsets c >= 7.
inline double G2_closed_form(int c, double lambda_min) {
  const double m = static_cast<double>(c - 1);
  return 2.0 / (4.0 * lambda_min * lambda_min + m * m);
}

/// Supremum bound G_{2,c} for a single rectangle offset c (not inflated).
inline double G2_term(int c, const SieveWeights& p, double tol = numerics::kDefaultTol) {
  if (c < 0) throw DomainError("G2_term: c must be >= 0");
  if (c >= 7) return G2_closed_form(c, p.lambda_min);
  if (c == 0) {
    auto r = numerics::max1d([&](double l) { return detail::g2_diagonal(l, p); },
                             {p.lambda_min, kLambdaTruncation}, tol);
    detail::check_truncation(c, r.value);
    return r.value;
  }
  const double t_lo = c - 1.0, t_hi = c + 1.0;
  numerics::BoxDomain box{{p.lambda_min, t_lo}, {kLambdaTruncation, t_hi}};
  auto r = numerics::max2d([&](double l, double t) { return detail::g2_offdiagonal(l, t, p); },
                           box, tol);
  detail::check_truncation(c, r.value);
  return r.value;
}

/// Each piece of the G2 bound, as summed.
struct G2Breakdown {
  double diagonal = 0;                // G_{2,0} + tol
  std::array<double, 6> near{};       // G_{2,c} + tol, c = 1..6
  double middle = 0;                  // sum_{6 <= m <= 100} 2/(4 lmin^2 + m^2)
  double tail = 0;                    // arctan(lmin/50)/lmin
  double total = 0;
};

/// Tail of the c >= 102 terms bounded by an integral from 100.
inline double G2_tail(double lambda_min) { return std::atan(lambda_min / 50.0) / lambda_min; }

/// Full G2 bound. The seven suprema are computed concurrently; the sum is
/// taken in fixed index order.
inline G2Breakdown G2_breakdown(const SieveWeights& p, double tol = numerics::kDefaultTol) {
  p.validate();
  std::array<std::future<double>, 7> parts;
  for (int c = 0; c <= 6; ++c) {
    parts[c] = std::async(std::launch::async, [c, &p, tol] { return G2_term(c, p, tol); });
  }
  G2Breakdown out;
  out.diagonal = parts[0].get() + tol;
  for (int c = 1; c <= 6; ++c) out.near[c - 1] = parts[c].get() + tol;
  for (int m = 6; m <= 100; ++m) {
    out.middle += 2.0 / (4.0 * p.lambda_min * p.lambda_min + static_cast<double>(m) * m);
  }
  out.tail = G2_tail(p.lambda_min);
  out.total = out.diagonal;
  for (double x : out.near) out.total += x;
  out.total += out.middle + out.tail;
  return out;
}

inline double G2_total(const SieveWeights& p, double tol = numerics::kDefaultTol) {
  return G2_breakdown(p, tol).total;
}

/// (x1 + x0 - u1 - v) / (2 w (v - u1)).
inline double C2_prefactor(const SieveWeights& p) {
  return (p.x1 + p.x0 - p.u1 - p.v) / (2.0 * p.w * (p.v - p.u1));
}

inline double C2(const SieveWeights& p, double g2, C2Form form = C2Form::kTimesG2) {
  if (!(g2 >= 0.0)) throw DomainError("C2: g2 must be >= 0");
  const double factor = form == C2Form::kTimesG2 ? g2 : 1.0 + g2;
  return C2_prefactor(p) * factor;
}

}  // namespace btcert::density
