/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "btcert/density_second.hpp"
#include "btcert/kernels.hpp"
#include "btcert/numerics.hpp"

using namespace btcert;
using numerics::BoxDomain;
using numerics::Interval;

TEST(Max1d, QuadraticPeak) {
  auto r = numerics::max1d([](double x) { return x * (1 - x); }, {0, 1}, 1e-9);
  EXPECT_NEAR(r.value, 0.25, 1e-9);
  EXPECT_NEAR(r.argmax[0], 0.5, 1e-4);
  EXPECT_GE(r.grid_points_evaluated, 10000u);
}

TEST(Max1d, Constant) {
  auto r = numerics::max1d([](double) { return 3.0; }, {2, 5});
  EXPECT_EQ(r.value, 3.0);
  EXPECT_GE(r.argmax[0], 2.0);
  EXPECT_LE(r.argmax[0], 5.0);
}

TEST(Max1d, MatchesDenseScanOnKernel) {
  const kernels::QuinticKernelParams p{1.2};
  auto f = [&](double x) { return std::abs(kernels::laplace_G({-0.35, x}, p).real()); };
  auto r = numerics::max1d(f, {0, 2}, 1e-9);
  double scan = -1;
  const int n = 1000000;
  for (int i = 0; i <= n; ++i) scan = std::max(scan, f(2.0 * i / n));
  EXPECT_NEAR(r.value, scan, 1e-6);
  EXPECT_GE(r.value, scan - 1e-12);
}

TEST(Max1d, NeverBelowGridPoints) {
  auto f = [](double x) { return std::sin(7 * x) * std::exp(-x); };
  auto r = numerics::max1d(f, {0, 3});
  const std::size_t n = numerics::kMin1dGrid;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? 3.0 : 3.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    ASSERT_GE(r.value, f(x));
  }
}

TEST(Max1d, RefiningGridDoesNotLoseValue) {
  auto f = [](double x) { return std::cos(13 * x) + 0.3 * x; };
  const double tol = 1e-8;
  auto a = numerics::max1d(f, {0, 4}, tol, 10000);
  auto b = numerics::max1d(f, {0, 4}, tol, 20000);
  EXPECT_GE(b.value, a.value - tol);
}

TEST(Max1d, Deterministic) {
  auto f = [](double x) { return std::sin(x * x); };
  auto a = numerics::max1d(f, {0, 5});
  auto b = numerics::max1d(f, {0, 5});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.argmax, b.argmax);
}

TEST(Max1d, NonFiniteIsDomainError) {
  EXPECT_THROW(numerics::max1d([](double x) { return 1.0 / x; }, {0, 1}), DomainError);
  EXPECT_THROW(numerics::max1d([](double x) { return x; }, {1, 1}), DomainError);
  EXPECT_THROW(numerics::max1d([](double x) { return x; }, {0, 1}, 0.0), DomainError);
}

TEST(Max2d, NegativeParaboloid) {
  auto r = numerics::max2d([](double x, double y) { return -(x * x + y * y); }, BoxDomain{{-1, -1}, {1, 1}});
  EXPECT_NEAR(r.value, 0.0, 1e-8);
  EXPECT_NEAR(r.argmax[0], 0.0, 1e-3);
  EXPECT_NEAR(r.argmax[1], 0.0, 1e-3);
}

TEST(Max2d, LinearCorner) {
  auto r = numerics::max2d([](double x, double y) { return x + y; }, BoxDomain{{0, 0}, {1, 1}});
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  EXPECT_DOUBLE_EQ(r.argmax[0], 1.0);
  EXPECT_DOUBLE_EQ(r.argmax[1], 1.0);
}

TEST(Max2d, MatchesDenseScanOnWeightObjective) {
  const auto w = density::SieveWeights::defaults();
  auto f = [&](double l, double t) { return density::detail::g2_offdiagonal(l, t, w); };
  auto r = numerics::max2d(f, BoxDomain{{0.35, 0}, {10, 2}});
  double scan = -1;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) scan = std::max(scan, f(0.35 + 9.65 * i / (n - 1), 2.0 * j / (n - 1)));
  }
  EXPECT_NEAR(r.value, scan, 1e-5);
  EXPECT_GE(r.value, scan - 1e-12);
}

TEST(Max2d, RejectsBadBoxes) {
  auto f = [](double x, double y) { return x + y; };
  EXPECT_THROW(numerics::max2d(f, BoxDomain{{0}, {1}}), DomainError);
  EXPECT_THROW(numerics::max2d(f, BoxDomain{{0, 1}, {1, 1}}), DomainError);
  EXPECT_THROW(numerics::max2d([](double, double) { return std::nan(""); }, BoxDomain{{0, 0}, {1, 1}}),
               DomainError);
}

TEST(Integrate, Polynomial) {
  EXPECT_NEAR(numerics::integrate([](double t) { return t; }, 0, 1), 0.5, 1e-12);
}

TEST(Integrate, EmptyInterval) {
  EXPECT_EQ(numerics::integrate([](double t) { return t; }, 0, 0), 0.0);
}

TEST(Integrate, KernelMass) {
  const kernels::QuinticKernelParams p{1.0};
  const double v = numerics::integrate([&](double t) { return kernels::kernel_g(t, p); }, 0, 2, 1e-12);
  EXPECT_NEAR(v, 8.0 / 9.0, 1e-10);
}

TEST(Integrate, Linearity) {
  const double tol = 1e-9;
  auto f = [](double t) { return std::exp(-t) * std::sin(3 * t); };
  auto g = [](double t) { return 1.0 / (1.0 + t * t); };
  const double a = numerics::integrate(f, 0, 7, tol);
  const double b = numerics::integrate(g, 0, 7, tol);
  const double ab = numerics::integrate([&](double t) { return f(t) + g(t); }, 0, 7, tol);
  EXPECT_LT(std::abs(ab - a - b), 2 * tol);
}

TEST(Integrate, KinkAtKnot) {
  auto f = [](double t) { return std::abs(t - 0.3); };
  EXPECT_NEAR(numerics::integrate(f, 0, 1, 1e-12, {0.3}), 0.045 + 0.245, 1e-12);
}

TEST(Integrate, Errors) {
  EXPECT_THROW(numerics::integrate([](double t) { return t; }, 1, 0), DomainError);
  EXPECT_THROW(numerics::integrate([](double t) { return 1.0 / (t - 0.5); }, 0, 1), DomainError);
}

TEST(Integrate, Complex) {
  auto v = numerics::integrate_complex([](double t) { return std::complex<double>(t, t * t); }, 0, 1);
  EXPECT_NEAR(v.real(), 0.5, 1e-12);
  EXPECT_NEAR(v.imag(), 1.0 / 3.0, 1e-12);
}
