/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "btcert/density_first.hpp"
#include "btcert/density_second.hpp"

using namespace btcert;
using density::CharacterClass;
using density::SieveWeights;

// ---------------------------------------------------------------------------
// B1, C1

TEST(B1, DirectValue) {
  const double e = 1 - std::exp(-0.66);
  EXPECT_NEAR(density::B1(1.0, 0.66), e * e / 1.25, 1e-15);
  EXPECT_NEAR(density::B1(1.0, 0.66), 0.186746, 5e-7);
}

TEST(B1, VanishesQuadratically) {
  EXPECT_LT(density::B1(1e-8, 0.66), 1e-14);
  EXPECT_GT(density::B1(1e-8, 0.66), 0.0);
}

TEST(B1, RejectsNonPositive) {
  EXPECT_THROW(density::B1(0.0, 0.66), DomainError);
  EXPECT_THROW(density::B1(-1.0, 0.66), DomainError);
}

TEST(B1, ExpOverB1Decreasing) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 10; i <= 500; ++i) {
    const double l = i / 100.0;
    const double v = std::exp(-0.66 * l) / density::B1(l, 0.66);
    ASSERT_LT(v, prev) << l;
    prev = v;
  }
}

TEST(C1, LimitAtZero) {
  EXPECT_NEAR(density::C1(0.0, 0.66, CharacterClass::general()), 0.66 / 3 + 0.4356, 1e-15);
  EXPECT_NEAR(density::C1(0.0, 0.66, CharacterClass::general(), 0.01), 0.6656, 1e-12);
}

TEST(C1, HandArithmetic) {
  const double l = 1.42, K = 0.66, w = 2 * K * l;
  const double expect = (1.0 / 3.0) * (1 - std::exp(-w)) / (2 * l) + (w - 1 + std::exp(-w)) / (2 * l * l);
  EXPECT_NEAR(density::C1(l, K, CharacterClass::general()), expect, 1e-12);
}

TEST(C1, SeriesBranchContinuous) {
  const double K = 0.66;
  const double l_switch = 1e-3 / (2 * K);
  EXPECT_NEAR(density::C1(l_switch * (1 - 1e-9), K), density::C1(l_switch * (1 + 1e-9), K), 1e-10);
}

TEST(C1, Decreasing) {
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 300; ++i) {
    const double v = density::C1(i / 100.0, 0.66);
    ASSERT_LT(v, prev) << i;
    prev = v;
  }
}

TEST(C1, RealCharacterSmaller) {
  for (int i = 1; i <= 300; ++i) {
    const double l = i / 100.0;
    ASSERT_LT(density::C1(l, 0.66, CharacterClass::real()), density::C1(l, 0.66, CharacterClass::general()));
  }
}

TEST(C1, Errors) {
  EXPECT_THROW(density::C1(-0.1, 0.66), DomainError);
  EXPECT_THROW((CharacterClass{0.3}.validate()), DomainError);
  EXPECT_NO_THROW(CharacterClass::real().validate());
}

// ---------------------------------------------------------------------------
// weights and B2

TEST(SieveWeights, DefaultsValid) { EXPECT_NO_THROW(SieveWeights::defaults().validate()); }

TEST(SieveWeights, InvariantsEnforced) {
  auto broken = [](auto edit) {
    SieveWeights w;
    edit(w);
    return w;
  };
  EXPECT_THROW(broken([](SieveWeights& w) { w.x1 = w.x0; }).validate(), DomainError);
  EXPECT_THROW(broken([](SieveWeights& w) { w.x0 = 1.3; }).validate(), DomainError);
  EXPECT_THROW(broken([](SieveWeights& w) { w.v = 0.6; }).validate(), DomainError);
  EXPECT_THROW(broken([](SieveWeights& w) { w.u1 = 0.5; }).validate(), DomainError);
  EXPECT_THROW(broken([](SieveWeights& w) { w.u0 = 0.5; }).validate(), DomainError);
  EXPECT_THROW(broken([](SieveWeights& w) { w.lambda_min = 0; }).validate(), DomainError);
}

TEST(B2, AtZero) {
  const double expect = 1.0 / (2 / 0.210 + 2 / 0.056);
  EXPECT_NEAR(density::B2(0.0, SieveWeights::defaults()), expect, 1e-15);
  EXPECT_NEAR(expect, 0.0221053, 5e-8);
}

TEST(B2, Infinity) {
  EXPECT_EQ(density::B2(std::numeric_limits<double>::infinity(), SieveWeights::defaults()), 0.0);
  EXPECT_THROW(density::B2(-0.1, SieveWeights::defaults()), DomainError);
}

TEST(B2, ScaledRatioDecreasing) {
  const auto w = SieveWeights::defaults();
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 10; i <= 500; ++i) {
    const double l = i / 100.0;
    const double v = std::exp(-2 * w.x1 * l) / density::B2(l, w);
    ASSERT_LT(v, prev) << l;
    prev = v;
  }
}

// ---------------------------------------------------------------------------
// G2

TEST(G2Term, ClosedForm) {
  const auto w = SieveWeights::defaults();
  EXPECT_NEAR(density::G2_term(7, w), 2 / (4 * 0.1225 + 36), 1e-15);
  EXPECT_NEAR(density::G2_term(7, w), 0.054810, 5e-7);
  EXPECT_NEAR(density::G2_term(100, w), 2.0406e-4, 5e-8);
  EXPECT_THROW(density::G2_term(-1, w), DomainError);
}

TEST(G2Term, DiagonalMatchesDenseScan) {
  const auto w = SieveWeights::defaults();
  const double v = density::G2_term(0, w);
  double scan = -1;
  const int n = 1000000;
  for (int i = 0; i <= n; ++i) scan = std::max(scan, density::detail::g2_diagonal(0.35 + 9.65 * i / n, w));
  EXPECT_NEAR(v, scan, 1e-5);
  EXPECT_GE(v, scan - 1e-12);
}

TEST(G2Term, ClosedFormNonIncreasing) {
  const auto w = SieveWeights::defaults();
  for (int c = 7; c < 2000; ++c) ASSERT_GE(density::G2_term(c, w), density::G2_term(c + 1, w));
}

TEST(G2Term, TruncationBoundBelowBoxMaximum) {
  const auto w = SieveWeights::defaults();
  for (int c = 0; c <= 6; ++c) {
    EXPECT_LT(density::detail::beyond_truncation_bound(c), density::G2_term(c, w)) << c;
  }
  // the bound really dominates the objective beyond the truncation point
  for (double l : {10.0, 12.0, 30.0}) {
    EXPECT_LE(density::detail::g2_diagonal(l, w), 1 / (4 * l * l));
    EXPECT_LE(density::detail::g2_offdiagonal(l, 2.5, w), 2 / (4 * l * l + 2.5 * 2.5));
  }
}

TEST(G2Total, Value) {
  const auto b = density::G2_breakdown(SieveWeights::defaults());
  EXPECT_GE(b.total, 0.55);
  EXPECT_LE(b.total, 0.650);
  EXPECT_NEAR(b.tail, std::atan(0.007) / 0.35, 1e-15);
  EXPECT_NEAR(b.tail, 0.019999, 1e-6);
  double sum = b.diagonal + b.middle + b.tail;
  for (double x : b.near) sum += x;
  EXPECT_DOUBLE_EQ(sum, b.total);
}

TEST(G2Total, Deterministic) {
  const auto w = SieveWeights::defaults();
  EXPECT_EQ(density::G2_total(w), density::G2_total(w));
}

TEST(G2Total, DecreasesWithLambdaMin) {
  auto w = SieveWeights::defaults();
  const double at35 = density::G2_total(w);
  w.lambda_min = 0.5;
  EXPECT_LT(density::G2_total(w), at35);
}

TEST(G2Total, ArctanTailDominatesPartialSums) {
  const auto w = SieveWeights::defaults();
  double s = 0;
  for (int c = 102; c <= 100000; ++c) s += density::G2_term(c, w);
  EXPECT_LE(s, density::G2_tail(w.lambda_min));
}

TEST(C2, Values) {
  const auto w = SieveWeights::defaults();
  EXPECT_NEAR(density::C2_prefactor(w), 18.352, 1e-3);
  EXPECT_NEAR(density::C2(w, 0.650), 11.929, 1e-3);
  EXPECT_EQ(density::C2(w, 0.0), 0.0);
  EXPECT_NEAR(density::C2(w, 0.5, density::C2Form::kTimesOnePlusG2), 1.5 * density::C2_prefactor(w), 1e-12);
  EXPECT_THROW(density::C2(w, -1.0), DomainError);
}

TEST(C2, ComputedReproducesPublishedConstant) {
  const auto w = SieveWeights::defaults();
  EXPECT_NEAR(density::C2(w, density::G2_total(w)), 11.9288, 0.02);
}
