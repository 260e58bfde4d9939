/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/// @file kernels.hpp
/// @brief Smoothing weights and their Laplace transforms.
///
/// Three families:
///  - the trapezoid cutoff f and its transform F (prime-sum smoothing);
///  - the sinh mollifier h1 with transform H1, and the companion H2
///    (per-rectangle zero bound);
///  - the quintic self-convolution g with transform G, and the explicit
///    majorant G4 of |Re G| used for large imaginary parts.
///
/// All transforms are closed forms. Removable singularities are handled by
/// series branches inside a fixed switch radius.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "btcert/errors.hpp"

namespace btcert::kernels {

using cplx = std::complex<double>;

/// Width parameters of the trapezoid cutoff: ramps of width eps/log_x.
struct RampParams {
  double log_x = 0.0;
  double eps = 0.0;

  double ramp() const { return eps / log_x; }

  void validate() const {
    if (!(log_x > 0.0) || !(eps > 0.0)) throw DomainError("RampParams: log_x and eps must be > 0");
    if (!(ramp() < 0.25)) throw DomainError("RampParams: eps/log_x must be < 1/4");
  }
};

struct MollifierParams {
  double K = 0.0;       // support length
  double lambda = 0.0;  // rate

  void validate() const {
    if (!(K > 0.0)) throw DomainError("MollifierParams: K must be > 0");
  }
};

struct QuinticKernelParams {
  double gamma = 1.0;  // half-width; g is supported on [0, 2*gamma)

  void validate() const {
    if (!(gamma > 0.0)) throw DomainError("QuinticKernelParams: gamma must be > 0");
  }
  /// True when gamma lies in the range searched for the density table.
  bool in_table_range() const { return gamma >= 1.0 - 1e-12 && gamma <= 1.6 + 1e-12; }
};

namespace detail {

/// (e^z - 1)/z with the removable singularity at 0 filled in.
inline cplx expm1_over(cplx z) {
  if (std::abs(z) < 1e-4) {
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0)));
  }
  return (std::exp(z) - 1.0) / z;
}

/// (1 - e^{-w})/w, equal to 1 at w = 0.
inline cplx one_minus_exp_over(cplx w) { return expm1_over(-w); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Trapezoid cutoff

inline double smooth_cutoff_f(double t, const RampParams& p) {
  const double r = p.ramp();
  if (t <= 0.5) return 0.0;
  if (t <= 0.5 + r) return std::min((t - 0.5) / r, 1.0);
  if (t <= 1.0) return 1.0;
  if (t <= 1.0 + r) return std::max(1.0 - (t - 1.0) / r, 0.0);
  return 0.0;
}

/// F(s) = int_0^inf e^{-st} f(t) dt
///      = e^{-s} ((1 - e^{s/2})/(-s)) ((1 - e^{rs})/(-rs)) e^{-rs},  r = eps/log x.
inline cplx laplace_F(cplx s, const RampParams& p) {
  const double r = p.ramp();
  // (1 - e^{s/2})/(-s) = (e^{s/2} - 1)/s = expm1_over(s/2) / 2
  const cplx half = 0.5 * detail::expm1_over(0.5 * s);
  const cplx ramp = detail::expm1_over(r * s);
  return std::exp(-s) * half * ramp * std::exp(-r * s);
}

// ---------------------------------------------------------------------------
// sinh mollifier

inline double kernel_h1(double t, const MollifierParams& p) {
  if (t < 0.0 || t >= p.K) return 0.0;
  return std::sinh((p.K - t) * p.lambda);
}

/// H1(z) = int_0^K e^{-zt} sinh((K-t)lambda) dt
///       = (1/2) (e^{K lambda}/(lambda+z) + e^{-K lambda}/(lambda-z)
///                - 2 lambda e^{-Kz}/(lambda^2 - z^2)).
///
/// Within 1e-4 of z = +-lambda the three-term form is replaced by the
/// equivalent
///   (K/2) (e^{K lambda} E(K(z+lambda)) - e^{-K lambda} E(K(z-lambda))),
/// E(w) = (1 - e^{-w})/w, which has no poles.
inline cplx kernel_H1(cplx z, const MollifierParams& p) {
  const double K = p.K;
  const double lam = p.lambda;
  const double ep = std::exp(K * lam);
  const double em = std::exp(-K * lam);
  if (std::abs(z - lam) < 1e-4 || std::abs(z + lam) < 1e-4) {
    return 0.5 * K *
           (ep * detail::one_minus_exp_over(K * (z + lam)) -
            em * detail::one_minus_exp_over(K * (z - lam)));
  }
  return 0.5 * (ep / (lam + z) + em / (lam - z) - 2.0 * lam * std::exp(-K * z) / (lam * lam - z * z));
}

/// H2(z) = ((1 - e^{-Kz})/z)^2, with H2(0) = K^2.
inline cplx kernel_H2(cplx z, double K) {
  if (!(K > 0.0)) throw DomainError("kernel_H2: K must be > 0");
  const cplx e = K * detail::one_minus_exp_over(K * z);
  return e * e;
}

// ---------------------------------------------------------------------------
// Quintic kernel

namespace detail {

/// Coefficients c_j of g(t) = sum_j c_j t^j on [0, 2 gamma).
inline std::array<double, 6> quintic_coefficients(double gamma) {
  const double g2 = gamma * gamma;
  const double g3 = g2 * gamma;
  const double g5 = g3 * g2;
  return {16.0 * g5 / 15.0, 0.0, -4.0 * g3 / 3.0, 2.0 * g2 / 3.0, 0.0, -1.0 / 30.0};
}

/// Switch radius for the Taylor branch of G. The closed form loses about
/// |z|^-4 relative digits to cancellation, so below this radius the series
/// (exact moments of g) is used instead.
inline constexpr double kGSeriesRadius = 1.0;

inline cplx laplace_G_series(cplx z, double gamma) {
  const auto c = quintic_coefficients(gamma);
  const double L = 2.0 * gamma;
  // G(z) = sum_k (-z)^k / k! * m_k,  m_k = int_0^L t^k g(t) dt
  cplx sum = 0.0;
  cplx zpow = 1.0;  // (-z)^k / k!
  for (int k = 0; k < 80; ++k) {
    double mk = 0.0;
    for (int j = 0; j < 6; ++j) {
      if (c[j] == 0.0) continue;
      const int n = k + j + 1;
      mk += c[j] * std::pow(L, n) / n;
    }
    const cplx term = zpow * mk;
    sum += term;
    if (k > 8 && std::abs(term) < 1e-18 * std::abs(sum)) break;
    zpow *= -z / static_cast<double>(k + 1);
  }
  return sum;
}

}  // namespace detail

/// g(t) = int_{t-gamma}^{gamma} (gamma^2 - x^2)(gamma^2 - (t-x)^2) dx
///      = -t^5/30 + 2 gamma^2 t^3/3 - 4 gamma^3 t^2/3 + 16 gamma^5/15 on [0, 2 gamma).
inline double kernel_g(double t, const QuinticKernelParams& p) {
  if (t < 0.0) throw DomainError("kernel_g: t must be >= 0");
  const double gamma = p.gamma;
  if (t >= 2.0 * gamma) return 0.0;
  const auto c = detail::quintic_coefficients(gamma);
  return c[0] + t * t * (c[2] + t * (c[3] + t * t * c[5]));
}

/// g(0) = 16 gamma^5 / 15.
inline double kernel_g0(const QuinticKernelParams& p) {
  return detail::quintic_coefficients(p.gamma)[0];
}

/// Laplace transform of g:
///   G(z) = 16 g^5/15 z^-1 - 8 g^3/3 z^-3 + 4 g^2 (1 + e^{-2gz}) z^-4
///          + 4 (-1 + e^{-2gz} + 2gz e^{-2gz}) z^-6,       G(0) = 8 g^6/9.
namespace detail {

inline cplx laplace_G_closed(cplx z, double g) {
  const cplx e = std::exp(-2.0 * g * z);
  const cplx zi = 1.0 / z;
  const cplx zi2 = zi * zi;
  const cplx zi3 = zi2 * zi;
  const cplx zi4 = zi2 * zi2;
  const cplx zi6 = zi4 * zi2;
  return 16.0 * std::pow(g, 5) / 15.0 * zi - 8.0 * g * g * g / 3.0 * zi3 +
         4.0 * g * g * (1.0 + e) * zi4 + 4.0 * (-1.0 + e + 2.0 * g * z * e) * zi6;
}

}  // namespace detail

inline cplx laplace_G(cplx z, const QuinticKernelParams& p) {
  if (std::abs(z) < detail::kGSeriesRadius) return detail::laplace_G_series(z, p.gamma);
  return detail::laplace_G_closed(z, p.gamma);
}

/// Real argument convenience: G is real on the real axis.
inline double laplace_G_real(double x, const QuinticKernelParams& p) {
  return laplace_G(cplx(x, 0.0), p).real();
}

/// Explicit majorant of |Re G(x + iy)|, decreasing in y > 0.
inline double majorant_G4(double x, double y, const QuinticKernelParams& p) {
  if (x == 0.0 && y == 0.0) throw DomainError("majorant_G4: undefined at (0, 0)");
  const double g = p.gamma;
  const double ax = std::abs(x);
  const double r2 = x * x + y * y;
  const double r = std::sqrt(r2);
  const double e = std::exp(-2.0 * g * x);
  return 16.0 * std::pow(g, 5) * ax / (15.0 * r2) +
         8.0 * g * g * g * (ax * ax * ax + 3.0 * ax * y * y) / (3.0 * r2 * r2 * r2) +
         4.0 * g * g * (1.0 + e) / (r2 * r2) +
         4.0 * (1.0 + e + 2.0 * g * r * e) / (r2 * r2 * r2);
}

}  // namespace btcert::kernels
