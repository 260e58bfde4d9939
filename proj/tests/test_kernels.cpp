/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "btcert/kernels.hpp"
#include "btcert/numerics.hpp"

using namespace btcert;
using kernels::cplx;

namespace {

// Laplace transform by quadrature of the defining integral on [0, b].
template <class F>
cplx laplace_quad(F f, cplx s, double b, std::vector<double> knots = {}) {
  return numerics::integrate_complex([&](double t) { return std::exp(-s * t) * f(t); }, 0, b, 1e-12,
                                     knots);
}

const kernels::RampParams kRamp{10.0, 0.5};  // ramp width 0.05

}  // namespace

// ---------------------------------------------------------------------------
// cutoff f and F

TEST(SmoothCutoff, Pieces) {
  EXPECT_EQ(kernels::smooth_cutoff_f(0.75, kRamp), 1.0);
  EXPECT_EQ(kernels::smooth_cutoff_f(0.25, kRamp), 0.0);
  EXPECT_NEAR(kernels::smooth_cutoff_f(0.5 + kRamp.ramp() / 2, kRamp), 0.5, 1e-12);
  EXPECT_EQ(kernels::smooth_cutoff_f(1.0 + kRamp.ramp(), kRamp), 0.0);
  EXPECT_EQ(kernels::smooth_cutoff_f(2.0, kRamp), 0.0);
}

TEST(SmoothCutoff, RangeAndPlateau) {
  const double r = kRamp.ramp();
  for (int i = 0; i <= 20000; ++i) {
    const double t = -0.5 + 2.0 * i / 20000;
    const double v = kernels::smooth_cutoff_f(t, kRamp);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    if (t >= 0.5 + r && t <= 1.0) {
      ASSERT_EQ(v, 1.0);
    }
    if ((t > 0.5 && t < 0.5 + r) || (t > 1.0 && t < 1.0 + r)) {
      ASSERT_LT(v, 1.0);
    }
  }
}

TEST(RampParams, Validation) {
  EXPECT_NO_THROW(kRamp.validate());
  EXPECT_THROW((kernels::RampParams{1.0, 0.3}.validate()), DomainError);
  EXPECT_THROW((kernels::RampParams{0.0, 0.1}.validate()), DomainError);
}

TEST(LaplaceF, AtZero) {
  EXPECT_NEAR(kernels::laplace_F(0.0, kRamp).real(), 0.5, 1e-15);
  EXPECT_NEAR(kernels::laplace_F(0.0, kRamp).imag(), 0.0, 1e-15);
}

TEST(LaplaceF, ContinuousAtZero) {
  EXPECT_LT(std::abs(kernels::laplace_F(1e-6, kRamp) - kernels::laplace_F(0.0, kRamp)), 1e-5);
  // both sides of the series switch
  const cplx a = kernels::laplace_F(0.99e-4, kRamp), b = kernels::laplace_F(1.01e-4, kRamp);
  EXPECT_LT(std::abs(a - b), 1e-5);
}

TEST(LaplaceF, MatchesQuadrature) {
  const double r = kRamp.ramp();
  auto f = [&](double t) { return kernels::smooth_cutoff_f(t, kRamp); };
  int n = 0;
  for (double re : {0.0, 0.3, 1.0, 4.0, 10.0}) {
    for (double im : {0.0, 0.7, 2.5, -6.0, 15.0}) {
      const cplx s(re, im);
      const cplx q = laplace_quad(f, s, 2.0, {0.5, 0.5 + r, 1.0, 1.0 + r});
      EXPECT_LT(std::abs(kernels::laplace_F(s, kRamp) - q), 1e-7) << s;
      ++n;
    }
  }
  EXPECT_GE(n, 20);
}

// ---------------------------------------------------------------------------
// h1, H1, H2

TEST(KernelH1, VanishesAtSupportEnd) {
  const kernels::MollifierParams p{0.66, 0.7};
  EXPECT_EQ(kernels::kernel_h1(p.K, p), 0.0);
  EXPECT_EQ(kernels::kernel_h1(-0.1, p), 0.0);
  EXPECT_NEAR(kernels::kernel_h1(0.0, p), std::sinh(0.66 * 0.7), 1e-15);
}

TEST(KernelH1, ImaginaryAxisIdentity) {
  const kernels::MollifierParams p{0.66, 0.7};
  for (double t : {0.0, 0.5, 1.0, 3.0}) {
    const double lhs = kernels::kernel_H1({0.0, t}, p).real();
    const double rhs = p.lambda * std::exp(p.K * p.lambda) / 2 * std::abs(kernels::kernel_H2({p.lambda, t}, p.K));
    EXPECT_NEAR(lhs, rhs, 1e-9) << t;
  }
}

TEST(KernelH1, MatchesQuadrature) {
  const kernels::MollifierParams p{1.0, 0.5};
  auto h = [&](double t) { return kernels::kernel_h1(t, p); };
  EXPECT_LT(std::abs(kernels::kernel_H1(2.0, p) - laplace_quad(h, 2.0, p.K)), 1e-8);
  const kernels::MollifierParams q{0.66, 0.9};
  auto hq = [&](double t) { return kernels::kernel_h1(t, q); };
  const std::vector<cplx> zs = {{0.3, 0.0}, {1.0, 1.0}, {-0.4, 2.0}, {0.0, 5.0}, {3.0, -1.0},
                                {0.9, 0.0}, {-0.9, 0.0}, {0.90001, 0.0}, {0.9, 1e-5}, {-0.9 + 5e-5, 0.0}};
  for (const auto& z : zs) {
    EXPECT_LT(std::abs(kernels::kernel_H1(z, q) - laplace_quad(hq, z, q.K)), 1e-7) << z;
  }
}

TEST(KernelH1, BranchContinuity) {
  const kernels::MollifierParams p{0.66, 0.9};
  for (double sgn : {1.0, -1.0}) {
    const cplx in = kernels::kernel_H1(sgn * 0.9 + 0.99e-4, p);
    const cplx out = kernels::kernel_H1(sgn * 0.9 + 1.01e-4, p);
    EXPECT_LT(std::abs(in - out), 1e-6);
  }
}

TEST(KernelH2, Values) {
  EXPECT_NEAR(kernels::kernel_H2(0.0, 0.66).real(), 0.4356, 1e-15);
  const double e = 1 - std::exp(-1.0);
  EXPECT_NEAR(kernels::kernel_H2(1.0, 1.0).real(), e * e, 1e-14);
  EXPECT_THROW(kernels::kernel_H2(1.0, 0.0), DomainError);
}

TEST(KernelH2, BoundedInRightHalfPlane) {
  const double K = 0.66;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const cplx z(0.5 * i, -10.0 + 2.2 * j);
      EXPECT_LE(std::abs(kernels::kernel_H2(z, K)), K * K + 1e-15) << z;
    }
  }
}

// ---------------------------------------------------------------------------
// g, G, G4

TEST(KernelG, Values) {
  const kernels::QuinticKernelParams p{1.0};
  EXPECT_NEAR(kernels::kernel_g(0.0, p), 16.0 / 15.0, 1e-15);
  EXPECT_EQ(kernels::kernel_g(2.0, p), 0.0);
  EXPECT_EQ(kernels::kernel_g0(p), kernels::kernel_g(0.0, p));
  EXPECT_THROW(kernels::kernel_g(-1e-9, p), DomainError);
}

TEST(KernelG, MatchesConvolution) {
  for (double gamma : {1.0, 1.3}) {
    const kernels::QuinticKernelParams p{gamma};
    for (double t : {gamma, 0.0, 0.4 * gamma, 1.7 * gamma}) {
      const double conv = numerics::integrate(
          [&](double x) { return (gamma * gamma - x * x) * (gamma * gamma - (t - x) * (t - x)); }, t - gamma,
          gamma, 1e-13);
      EXPECT_NEAR(kernels::kernel_g(t, p), conv, 1e-9) << gamma << " " << t;
    }
  }
}

TEST(KernelG, NonNegative) {
  const kernels::QuinticKernelParams p{1.37};
  for (int i = 0; i <= 10000; ++i) ASSERT_GE(kernels::kernel_g(2 * p.gamma * i / 10000, p), 0.0);
}

TEST(LaplaceG, AtZero) {
  EXPECT_NEAR(kernels::laplace_G(0.0, {1.0}).real(), 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(kernels::laplace_G(0.0, {1.4}).real(), 8 * std::pow(1.4, 6) / 9, 1e-13);
}

TEST(LaplaceG, MatchesQuadrature) {
  int n = 0;
  for (double gamma : {1.0, 1.25, 1.6}) {
    const kernels::QuinticKernelParams p{gamma};
    auto g = [&](double t) { return kernels::kernel_g(t, p); };
    const std::vector<cplx> zs = {{-2.0, 0.0}, {-0.35, 0.0}, {-0.35, 3.0}, {0.0, 0.5}, {0.5, 0.5},
                                  {1.0, 0.0}, {2.0, -4.0}, {-1.2, 7.0}, {1e-3, 0.0}, {0.0, -1.0}};
    for (const auto& z : zs) {
      const cplx q = laplace_quad(g, z, 2 * gamma);
      EXPECT_LT(std::abs(kernels::laplace_G(z, p) - q), 1e-8) << gamma << " " << z;
      ++n;
    }
  }
  EXPECT_GE(n, 20);
}

TEST(LaplaceG, BranchesAgreeOnSwitchCircle) {
  const kernels::QuinticKernelParams p{1.2};
  for (int k = 0; k < 64; ++k) {
    const cplx z = std::polar(kernels::detail::kGSeriesRadius, 2 * M_PI * k / 64);
    const cplx a = kernels::detail::laplace_G_series(z, p.gamma);
    const cplx b = kernels::detail::laplace_G_closed(z, p.gamma);
    EXPECT_LT(std::abs(a - b), 1e-9) << z;
  }
}

TEST(LaplaceG, SeriesAccurateNearOrigin) {
  const kernels::QuinticKernelParams p{1.2};
  auto g = [&](double t) { return kernels::kernel_g(t, p); };
  for (int k = 0; k < 8; ++k) {
    const cplx z = std::polar(1e-3, 2 * M_PI * k / 8);
    EXPECT_LT(std::abs(kernels::laplace_G(z, p) - laplace_quad(g, z, 2 * p.gamma)), 1e-9) << z;
  }
}

TEST(LaplaceG, RealPartNonNegativeInRightHalfPlane) {
  int n = 0;
  for (double gamma : {1.0, 1.6}) {
    const kernels::QuinticKernelParams p{gamma};
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const cplx z(0.4 * i, -20.0 + 4.0 * j + 0.37);
        EXPECT_GE(kernels::laplace_G(z, p).real(), 0.0) << z;
        ++n;
      }
    }
  }
  EXPECT_GE(n, 200);
}

TEST(MajorantG4, Dominates) {
  const kernels::QuinticKernelParams p{1.2};
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double x = -1.5 + 3.0 * (i + 0.5) / 50;
      const double y = 0.2 + 15.0 * j / 49;
      EXPECT_LE(std::abs(kernels::laplace_G({x, y}, p).real()), kernels::majorant_G4(x, y, p)) << x << " " << y;
    }
  }
}

TEST(MajorantG4, DecreasingInY) {
  const kernels::QuinticKernelParams p{1.2};
  for (double x : {-0.9, -0.35, 0.4}) {
    for (int j = 0; j < 200; ++j) {
      const double y1 = 0.05 + 0.1 * j;
      EXPECT_GE(kernels::majorant_G4(x, y1, p), kernels::majorant_G4(x, y1 + 0.1, p));
    }
  }
}

TEST(MajorantG4, HandEvaluation) {
  const double g = 1.2, x = -0.35, y = 5.0;
  const double r2 = x * x + y * y;
  const double e = std::exp(0.7 * g);
  const double t1 = 16 * std::pow(g, 5) * 0.35 / 15 / r2;
  const double t2 = 8 * std::pow(g, 3) * (std::pow(0.35, 3) + 3 * 0.35 * 25) / 3 / std::pow(r2, 3);
  const double t3 = 4 * g * g * (1 + e) / (r2 * r2);
  const double t4 = 4 * (1 + e + 2 * g * std::sqrt(r2) * e) / std::pow(r2, 3);
  EXPECT_NEAR(kernels::majorant_G4(x, y, {g}), t1 + t2 + t3 + t4, 1e-12);
}

TEST(MajorantG4, UndefinedAtOrigin) {
  EXPECT_THROW(kernels::majorant_G4(0.0, 0.0, {1.2}), DomainError);
}

TEST(QuinticParams, Range) {
  EXPECT_TRUE((kernels::QuinticKernelParams{1.0}.in_table_range()));
  EXPECT_TRUE((kernels::QuinticKernelParams{1.6}.in_table_range()));
  EXPECT_FALSE((kernels::QuinticKernelParams{1.7}.in_table_range()));
  EXPECT_THROW((kernels::QuinticKernelParams{0.0}.validate()), DomainError);
}
