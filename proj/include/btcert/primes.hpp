/**
 * Copyright The btcert Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

/// @file primes.hpp
/// @brief Segmented sieve, counts in residue classes, and the inequality
/// checks of the prime-counting report.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "btcert/errors.hpp"
#include "btcert/numerics.hpp"

namespace btcert::primes {

inline constexpr std::uint64_t kSieveCap = 1000000000ULL;
inline constexpr std::uint64_t kSegmentOdds = 1ULL << 20;

namespace detail {

inline std::vector<std::uint32_t> simple_sieve(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

// Odd primes in the segment of odd numbers 2*lo_idx+1 .. 2*hi_idx-1.
inline std::vector<std::uint32_t> sieve_segment(std::uint64_t lo_idx, std::uint64_t hi_idx,
                                                std::uint64_t limit,
                                                const std::vector<std::uint32_t>& base) {
  std::vector<char> composite(hi_idx - lo_idx, 0);
  const std::uint64_t lo = 2 * lo_idx + 1;
  const std::uint64_t hi = 2 * hi_idx - 1;
  for (std::uint32_t p : base) {
    if (p == 2) continue;
    const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
    if (pp > hi) break;
    std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
    if (start % 2 == 0) start += p;
    for (std::uint64_t m = start; m <= hi; m += 2 * p) composite[(m - 1) / 2 - lo_idx] = 1;
  }
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = lo_idx; i < hi_idx; ++i) {
    const std::uint64_t n = 2 * i + 1;
    if (n > limit) break;
    if (n >= 3 && !composite[i - lo_idx]) out.push_back(static_cast<std::uint32_t>(n));
  }
  return out;
}

}  // namespace detail

/// All primes <= limit, ascending. Segments of 2^20 odd numbers are sieved
/// on worker threads and concatenated in segment order.
inline std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
  if (limit > kSieveCap) {
    throw ResourceError("sieve_primes: limit " + std::to_string(limit) + " exceeds cap 1e9");
  }
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  const auto base = detail::simple_sieve(static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 1);
  const std::uint64_t n_odds = (limit + 1) / 2;  // odd numbers 1, 3, ..., <= limit
  const std::uint64_t n_seg = (n_odds + kSegmentOdds - 1) / kSegmentOdds;
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::thread::hardware_concurrency());

  std::vector<std::vector<std::uint32_t>> parts(n_seg);
  for (std::uint64_t first = 0; first < n_seg; first += workers) {
    std::vector<std::future<void>> batch;
    for (std::uint64_t s = first; s < std::min(n_seg, first + workers); ++s) {
      batch.push_back(std::async(std::launch::async, [&, s] {
        const std::uint64_t lo = s * kSegmentOdds;
        const std::uint64_t hi = std::min(n_odds, lo + kSegmentOdds);
        parts[s] = detail::sieve_segment(lo, hi, limit, base);
      }));
    }
    for (auto& f : batch) f.get();
  }
  std::size_t total = 1;
  for (const auto& p : parts) total += p.size();
  out.reserve(total);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline std::int64_t euler_phi(std::int64_t q) {
  if (q < 1) throw DomainError("euler_phi: q must be >= 1");
  std::int64_t result = q;
  for (std::int64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    result -= result / p;
  }
  if (q > 1) result -= result / q;
  return result;
}

inline void check_class(std::int64_t q, std::int64_t a) {
  if (q < 3) throw DomainError("residue class: q must be >= 3");
  if (std::gcd(((a % q) + q) % q, q) != 1) throw DomainError("residue class: gcd(a, q) must be 1");
}

/// Sieved primes up to a fixed limit, with counting queries up to it.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit) : limit_(limit), primes_(sieve_primes(limit)) {}

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  std::int64_t pi(std::uint64_t x) const {
    check_range(x);
    return std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin();
  }

  std::int64_t pi_ap(std::uint64_t x, std::int64_t q, std::int64_t a) const {
    check_class(q, a);
    check_range(x);
    const std::int64_t r = ((a % q) + q) % q;
    std::int64_t n = 0;
    for (std::uint32_t p : primes_) {
      if (p > x) break;
      if (static_cast<std::int64_t>(p % q) == r) ++n;
    }
    return n;
  }

  /// Sum of log p over primes p <= x, p = a mod q.
  double theta_ap(std::uint64_t x, std::int64_t q, std::int64_t a) const {
    check_class(q, a);
    check_range(x);
    const std::int64_t r = ((a % q) + q) % q;
    double s = 0.0;
    for (std::uint32_t p : primes_) {
      if (p > x) break;
      if (static_cast<std::int64_t>(p % q) == r) s += std::log(static_cast<double>(p));
    }
    return s;
  }

  /// Sum of log p over prime powers p^e <= x, p^e = a mod q.
  double psi_ap(std::uint64_t x, std::int64_t q, std::int64_t a) const {
    check_class(q, a);
    check_range(x);
    const std::uint64_t r = static_cast<std::uint64_t>(((a % q) + q) % q);
    const std::uint64_t uq = static_cast<std::uint64_t>(q);
    double s = 0.0;
    for (std::uint32_t p : primes_) {
      if (p > x) break;
      const double lp = std::log(static_cast<double>(p));
      for (std::uint64_t pe = p;; pe *= p) {
        if (pe % uq == r) s += lp;
        if (pe > x / p) break;
      }
    }
    return s;
  }

 private:
  void check_range(std::uint64_t x) const {
    if (x > limit_) throw DomainError("PrimeTable: query beyond sieved limit");
  }

  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
};

inline std::int64_t pi_ap(std::uint64_t x, std::int64_t q, std::int64_t a) {
  check_class(q, a);
  if (x < 2) return 0;
  return PrimeTable(x).pi_ap(x, q, a);
}

inline double theta_ap(std::uint64_t x, std::int64_t q, std::int64_t a) {
  check_class(q, a);
  if (x < 2) return 0.0;
  return PrimeTable(x).theta_ap(x, q, a);
}

inline double psi_ap(std::uint64_t x, std::int64_t q, std::int64_t a) {
  check_class(q, a);
  if (x < 2) return 0.0;
  return PrimeTable(x).psi_ap(x, q, a);
}

/// Li(x) = integral from 2 to x of dt / log t.
inline double li(double x) {
  if (!(x >= 2.0)) throw DomainError("li: x must be >= 2");
  if (x == 2.0) return 0.0;
  std::vector<double> knots;
  for (double k = 10.0; k < x; k *= 10.0) knots.push_back(k);
  return numerics::integrate([](double t) { return 1.0 / std::log(t); }, 2.0, x, 1e-9 * x, knots);
}

/// Improved constant C(theta) for pi(x; q, a) <= C x / (phi(q) log x).
inline double piecewise_C(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("piecewise_C: theta must lie in (0, 1)");
  if (theta <= 9.0 / 20.0) return 16.0 / (8.0 - 3.0 * theta);
  if (theta <= 2.0 / 3.0) return 8.0 / (6.0 - 7.0 * theta);
  const double r = (1.0 - theta) / 4.0;
  return (2.0 - std::pow(r, 6)) / (1.0 - theta);
}

struct ResidueRow {
  std::int64_t a = 0;
  std::int64_t pi = 0;
  double theta = 0;
  double psi = 0;
  double deviation = 0;  // |psi - x/phi(q)| / (x/phi(q))
  std::map<std::string, bool> verdicts;
};

struct PrimeCountReport {
  std::uint64_t x = 0;
  std::int64_t q = 0;
  std::int64_t phi_q = 0;
  double li_x = 0;
  double theta_exponent = 0;  // log q / log x
  std::int64_t pi_x = 0;
  std::int64_t primes_dividing_q = 0;
  bool partition_identity = false;
  bool below_q8 = false;
  std::string scale = "illustrative";
  double bound_theorem = 0;  // 2 Li(x) / phi(q)
  double bound_mv = 0;       // 2 x / ((1 - theta) phi(q) log x)
  double bound_piecewise = 0;
  std::vector<ResidueRow> rows;

  bool all_verdicts() const {
    if (!partition_identity) return false;
    for (const auto& r : rows) {
      for (const auto& [name, ok] : r.verdicts) {
        if (!ok) return false;
      }
    }
    return true;
  }
};

/// Counts and verdicts for every reduced residue mod q up to x. The
/// verdicts are for small moduli, where the asymptotic statements need not
/// apply; the report is labelled illustrative.
inline PrimeCountReport bt_report(std::int64_t q, std::uint64_t x) {
  if (q < 3) throw DomainError("bt_report: q must be >= 3");
  if (x <= static_cast<std::uint64_t>(q)) throw DomainError("bt_report: require x > q");
  PrimeCountReport rep;
  rep.x = x;
  rep.q = q;
  rep.phi_q = euler_phi(q);
  const PrimeTable table(x);
  const double lx = std::log(static_cast<double>(x));
  rep.li_x = li(static_cast<double>(x));
  rep.theta_exponent = std::log(static_cast<double>(q)) / lx;
  rep.below_q8 = std::pow(static_cast<double>(q), 8.0) > static_cast<double>(x) * (1 + 1e-12);
  rep.pi_x = table.pi(x);
  for (std::uint32_t p : table.primes()) {
    if (p > x || static_cast<std::int64_t>(p) > q) break;
    if (q % p == 0) ++rep.primes_dividing_q;
  }

  const double phi = static_cast<double>(rep.phi_q);
  rep.bound_theorem = 2.0 * rep.li_x / phi;
  rep.bound_mv = 2.0 * static_cast<double>(x) / ((1.0 - rep.theta_exponent) * phi * lx);
  rep.bound_piecewise = piecewise_C(rep.theta_exponent) * static_cast<double>(x) / (phi * lx);
  const double mean = static_cast<double>(x) / phi;

  std::int64_t sum = 0;
  for (std::int64_t a = 1; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    ResidueRow r;
    r.a = a;
    r.pi = table.pi_ap(x, q, a);
    r.theta = table.theta_ap(x, q, a);
    r.psi = table.psi_ap(x, q, a);
    r.deviation = std::abs(r.psi - mean) / mean;
    const double pi = static_cast<double>(r.pi);
    r.verdicts["theorem_2li"] = pi < rep.bound_theorem;
    r.verdicts["montgomery_vaughan"] = pi <= rep.bound_mv;
    r.verdicts["piecewise_c"] = pi <= rep.bound_piecewise;
    r.verdicts["theta_le_psi"] = r.theta <= r.psi;
    sum += r.pi;
    rep.rows.push_back(r);
  }
  rep.partition_identity = sum + rep.primes_dividing_q == rep.pi_x;
  return rep;
}

}  // namespace btcert::primes
