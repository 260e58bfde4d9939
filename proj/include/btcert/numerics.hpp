/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/// @file numerics.hpp
/// @brief Deterministic bounded maximization and adaptive quadrature.
///
/// Every bound in the library is a supremum over a box or an integral over
/// a finite interval. Maximization is grid-then-refine: a dense grid is
/// scanned, then golden-section search polishes the best cells. The result
/// is the largest value actually evaluated, so it never drops below any
/// probed grid point. Callers inflate it by the tolerance before using it
/// in an inequality.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "btcert/errors.hpp"

namespace btcert::numerics {

inline constexpr double kDefaultTol = 1e-8;
inline constexpr std::size_t kMin1dGrid = 10000;
inline constexpr std::size_t kMin2dGrid = 300;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct BoxDomain {
  std::vector<double> lo;
  std::vector<double> hi;

  std::size_t dimension() const { return lo.size(); }

  void validate() const {
    if (lo.size() != hi.size() || lo.empty() || lo.size() > 2) {
      throw DomainError("BoxDomain: dimension must be 1 or 2");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (!(lo[i] < hi[i])) {
        throw DomainError("BoxDomain: lo must be < hi in every coordinate");
      }
    }
  }
};

struct MaximizeResult {
  double value = 0.0;
  std::vector<double> argmax;
  std::size_t grid_points_evaluated = 0;
};

namespace detail {

inline std::string point_string(std::initializer_list<double> xs) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  bool first = true;
  for (double x : xs) {
    if (!first) os << ", ";
    os << x;
    first = false;
  }
  os << ')';
  return os.str();
}

template <class F>
double checked_eval(F& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw DomainError("non-finite objective value at x = " + point_string({x}));
  }
  return y;
}

template <class F>
double checked_eval(F& f, double x, double y) {
  const double z = f(x, y);
  if (!std::isfinite(z)) {
    throw DomainError("non-finite objective value at (x, y) = " + point_string({x, y}));
  }
  return z;
}

inline constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5)-1)/2

// Golden-section maximization of f on [a, b]. Tracks the best point seen.
template <class F>
void golden_section(F& f, double a, double b, double xtol, double& best_x, double& best_v) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  auto note = [&](double x, double v) {
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  };
  note(c, fc);
  note(d, fd);
  for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      note(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      note(d, fd);
    }
  }
}

// Indices of the k largest entries, ties broken by lower index.
inline std::vector<std::size_t> top_k(const std::vector<double>& v, std::size_t k) {
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return v[a] > v[b] || (v[a] == v[b] && a < b);
                    });
  idx.resize(k);
  return idx;
}

inline double refine_xtol(double lo, double hi, double tol) {
  // Near an interior maximum f - f* ~ f'' dx^2, so dx ~ sqrt(tol) suffices;
  // the floor stops golden section from chasing rounding noise.
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  return std::max(1e-3 * std::sqrt(tol) * scale, 1e-13 * scale);
}

}  // namespace detail

/// Maximize a scalar objective over a closed interval.
///
/// Scans `grid` equally spaced points (at least 10^4, endpoints included),
/// then runs golden-section search on the two cells around each of the three
/// best grid points. Deterministic for fixed inputs.
template <class F>
MaximizeResult max1d(F&& objective, Interval domain, double tol = kDefaultTol,
                     std::size_t grid = kMin1dGrid) {
  if (!(domain.lo < domain.hi)) throw DomainError("max1d: empty interval");
  if (!(tol > 0.0)) throw DomainError("max1d: tol must be positive");
  grid = std::max(grid, kMin1dGrid);

  auto f = [&](double x) { return detail::checked_eval(objective, x); };
  const double h = (domain.hi - domain.lo) / static_cast<double>(grid - 1);
  std::vector<double> values(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = (i + 1 == grid) ? domain.hi : domain.lo + h * static_cast<double>(i);
    values[i] = f(x);
  }

  MaximizeResult out;
  out.grid_points_evaluated = grid;
  const auto best = detail::top_k(values, 3);
  double best_x = domain.lo + h * static_cast<double>(best.front());
  double best_v = values[best.front()];
  const double xtol = detail::refine_xtol(domain.lo, domain.hi, tol);
  for (std::size_t i : best) {
    const double a = std::max(domain.lo, domain.lo + h * (static_cast<double>(i) - 1.0));
    const double b = std::min(domain.hi, domain.lo + h * (static_cast<double>(i) + 1.0));
    detail::golden_section(f, a, b, xtol, best_x, best_v);
  }
  out.value = best_v;
  out.argmax = {best_x};
  return out;
}

/// Maximize an objective of two variables over a box.
///
/// Scans an n x n grid (n >= 300), then refines the three best grid points
/// by alternating golden-section sweeps along each coordinate, restricted to
/// the neighbouring cells, until a sweep gains less than tol/100.
template <class F>
MaximizeResult max2d(F&& objective, const BoxDomain& domain, double tol = kDefaultTol,
                     std::size_t grid = kMin2dGrid) {
  domain.validate();
  if (domain.dimension() != 2) throw DomainError("max2d: domain must be 2-dimensional");
  if (!(tol > 0.0)) throw DomainError("max2d: tol must be positive");
  grid = std::max(grid, kMin2dGrid);

  auto f = [&](double x, double y) { return detail::checked_eval(objective, x, y); };
  const double hx = (domain.hi[0] - domain.lo[0]) / static_cast<double>(grid - 1);
  const double hy = (domain.hi[1] - domain.lo[1]) / static_cast<double>(grid - 1);
  auto coord = [&](std::size_t dim, std::size_t i) {
    if (i + 1 == grid) return domain.hi[dim];
    return domain.lo[dim] + (dim == 0 ? hx : hy) * static_cast<double>(i);
  };

  std::vector<double> values(grid * grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = coord(0, i);
    for (std::size_t j = 0; j < grid; ++j) values[i * grid + j] = f(x, coord(1, j));
  }

  MaximizeResult out;
  out.grid_points_evaluated = grid * grid;
  const auto best = detail::top_k(values, 3);
  double best_v = values[best.front()];
  std::array<double, 2> best_p{coord(0, best.front() / grid), coord(1, best.front() % grid)};

  const double xtol = detail::refine_xtol(domain.lo[0], domain.hi[0], tol);
  const double ytol = detail::refine_xtol(domain.lo[1], domain.hi[1], tol);
  for (std::size_t k : best) {
    double x = coord(0, k / grid);
    double y = coord(1, k % grid);
    double v = values[k];
    const double xa = std::max(domain.lo[0], x - hx), xb = std::min(domain.hi[0], x + hx);
    const double ya = std::max(domain.lo[1], y - hy), yb = std::min(domain.hi[1], y + hy);
    for (int sweep = 0; sweep < 50; ++sweep) {
      const double before = v;
      auto fx = [&](double s) { return f(s, y); };
      detail::golden_section(fx, xa, xb, xtol, x, v);
      auto fy = [&](double s) { return f(x, s); };
      detail::golden_section(fy, ya, yb, ytol, y, v);
      if (v - before < 0.01 * tol) break;
    }
    if (v > best_v) {
      best_v = v;
      best_p = {x, y};
    }
  }
  out.value = best_v;
  out.argmax = {best_p[0], best_p[1]};
  return out;
}

namespace detail {

template <class F>
double gk15(F& f, double a, double b, double* l1) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, nullptr, l1);
}

// Error is judged by comparing a panel with the sum of its halves; Boost's
// own estimate is not scaled to the panel width.
template <class F>
double integrate_adaptive(F& f, double a, double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  double l1a = 0.0, l1b = 0.0;
  const double left = gk15(f, a, m, &l1a);
  const double right = gk15(f, m, b, &l1b);
  const double diff = std::abs(left + right - whole);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (l1a + l1b);
  if (diff <= std::max(tol, floor) || depth >= 50 || (b - a) <= 1e-14 * std::max(1.0, std::abs(a))) {
    return left + right;
  }
  return integrate_adaptive(f, a, m, left, 0.5 * tol, depth + 1) +
         integrate_adaptive(f, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature with an absolute error target.
///
/// Panels are bisected until each one's Kronrod error estimate meets its
/// share of `tol`. Breakpoints in `knots` (where the integrand has kinks)
/// are honoured exactly.
template <class F>
double integrate(F&& integrand, double a, double b, double tol = kDefaultTol,
                 std::vector<double> knots = {}) {
  if (!(a <= b)) throw DomainError("integrate: require a <= b");
  if (!(tol > 0.0)) throw DomainError("integrate: tol must be positive");
  if (a == b) return 0.0;
  auto f = [&](double t) { return detail::checked_eval(integrand, t); };

  std::vector<double> cuts{a};
  std::sort(knots.begin(), knots.end());
  for (double k : knots) {
    if (k > cuts.back() && k < b) cuts.push_back(k);
  }
  cuts.push_back(b);
  const double share = tol / static_cast<double>(cuts.size() - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double l1 = 0.0;
    const double whole = detail::gk15(f, cuts[i], cuts[i + 1], &l1);
    sum += detail::integrate_adaptive(f, cuts[i], cuts[i + 1], whole, share, 0);
  }
  return sum;
}

/// Complex-valued integrand: real and imaginary parts integrated separately.
template <class F>
std::complex<double> integrate_complex(F&& integrand, double a, double b,
                                       double tol = kDefaultTol,
                                       const std::vector<double>& knots = {}) {
  const double re = integrate([&](double t) { return std::real(integrand(t)); }, a, b,
                              0.5 * tol, knots);
  const double im = integrate([&](double t) { return std::imag(integrand(t)); }, a, b,
                              0.5 * tol, knots);
  return {re, im};
}

}  // namespace btcert::numerics
