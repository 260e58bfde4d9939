/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>

#include "btcert/errors.hpp"

namespace btcert::density {

/// Character-dependent constant phi in C1: 1/4 for real characters (or q
/// cube-free, or small order), 1/3 otherwise. 1/3 is the worst case.
struct CharacterClass {
  double phi = 1.0 / 3.0;

  static constexpr CharacterClass real() { return {0.25}; }
  static constexpr CharacterClass general() { return {1.0 / 3.0}; }

  void validate() const {
    if (std::abs(phi - 0.25) > 1e-15 && std::abs(phi - 1.0 / 3.0) > 1e-15) {
      throw DomainError("CharacterClass: phi must be 1/4 or 1/3");
    }
  }
};

/// B1(lambda) = (1 - e^{-K lambda})^2 / (lambda^2 + 1/4).
inline double B1(double lambda, double K) {
  if (!(lambda > 0.0)) throw DomainError("B1: lambda must be > 0");
  const double e = -std::expm1(-K * lambda);
  return e * e / (lambda * lambda + 0.25);
}

/// C1(lambda) = phi (1 - e^{-2K lambda})/(2 lambda)
///            + (2K lambda - 1 + e^{-2K lambda})/(2 lambda^2) + delta,
/// continuous at lambda = 0 with value phi K + K^2 + delta.
inline double C1(double lambda, double K, CharacterClass cls = CharacterClass::general(),
                 double delta = 0.0) {
  if (!(lambda >= 0.0)) throw DomainError("C1: lambda must be >= 0");
  const double w = 2.0 * K * lambda;
  if (w < 1e-3) {
    // (1 - e^{-w})/(2 lambda) = K (1 - w/2 + w^2/6 - w^3/24 + ...)
    // (w - 1 + e^{-w})/(2 lambda^2) = K^2 (1 - w/3 + w^2/12 - w^3/60 + ...)
    const double first = K * (1.0 - w / 2.0 + w * w / 6.0 - w * w * w / 24.0);
    const double second = K * K * (1.0 - w / 3.0 + w * w / 12.0 - w * w * w / 60.0);
    return cls.phi * first + second + delta;
  }
  const double one_minus = -std::expm1(-w);
  return cls.phi * one_minus / (2.0 * lambda) + (w - one_minus) / (2.0 * lambda * lambda) + delta;
}

}  // namespace btcert::density
