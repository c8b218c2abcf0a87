#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "primes.hpp"
#include "tau_series.hpp"

namespace eulerprod {

struct PrimeAngle {
  Prime p;
  double a;      // tau(p) p^{-11/2}
  double theta;  // in [0, pi], a = 2 cos(theta)
};

class AngleTable {
 public:
  AngleTable(std::vector<PrimeAngle> entries, std::uint64_t cutoff)
      : entries_(std::move(entries)), cutoff_(cutoff) {
    const auto primes = primes_up_to(cutoff);
    if (primes.size() != entries_.size())
      throw InvalidInput("AngleTable: expected " + std::to_string(primes.size()) +
                         " primes up to " + std::to_string(cutoff));
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (entries_[i].p != primes[i]) throw InvalidInput("AngleTable: prime list mismatch");
  }

  std::uint64_t cutoff() const { return cutoff_; }
  const std::vector<PrimeAngle>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const PrimeAngle& at(std::uint64_t p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const PrimeAngle& e, std::uint64_t v) { return e.p < v; });
    if (it == entries_.end() || it->p != p)
      throw std::out_of_range("prime " + std::to_string(p) + " not in angle table (cutoff " +
                              std::to_string(cutoff_) + ")");
    return *it;
  }

 private:
  std::vector<PrimeAngle> entries_;
  std::uint64_t cutoff_;
};

namespace detail {

// Minimal RAII holder for an MPFR variable.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace detail

inline constexpr mpfr_prec_t kNormalizationBits = 128;

// value * n^{-weight_exp/2}, evaluated with a 128-bit mantissa and rounded once
// to double. Used for a(n) = tau(n) n^{-11/2} and a(p^2) = tau(p^2) p^{-11}.
inline double normalize(const mpz_class& value, std::uint64_t n, unsigned half_exponent) {
  detail::Mpfr num(kNormalizationBits), den(kNormalizationBits);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), n, half_exponent);
  mpfr_set_z(num.get(), value.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(den.get(), power.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(den.get(), den.get(), MPFR_RNDN);
  mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDN);
  return mpfr_get_d(num.get(), MPFR_RNDN);
}

// a(n) = tau(n) n^{-11/2}
inline double normalized_tau(const TauTable& table, std::uint64_t n) {
  return normalize(table.at(n), n, 11);
}

inline constexpr double kDeligneSlack = 1e-9;

inline double angle_from_coefficient(double a) {
  const double half = std::clamp(a / 2.0, -1.0, 1.0);
  return std::acos(half);
}

inline AngleTable build_angles(const TauTable& table, std::uint64_t cutoff) {
  if (cutoff > table.limit())
    throw InvalidInput("build_angles: cutoff " + std::to_string(cutoff) +
                       " exceeds tau table limit " + std::to_string(table.limit()));
  const auto primes = primes_up_to(cutoff);
  std::vector<PrimeAngle> entries(primes.size());
  parallel_for(primes.size(), [&](std::size_t i) {
    const Prime p = primes[i];
    const double a = normalized_tau(table, p);
    if (!(std::abs(a) <= 2.0 + kDeligneSlack))
      throw Inconsistency("Deligne violation at p=" + std::to_string(p) + ": |a(p)| = " +
                          std::to_string(std::abs(a)));
    entries[i] = {p, a, angle_from_coefficient(a)};
  });
  return AngleTable(std::move(entries), cutoff);
}

// Integral of (2/pi) sin^2 over [0, theta].
inline double satotate_cdf(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw InvalidInput("satotate_cdf: theta must lie in [0, pi]");
  return (theta - std::sin(theta) * std::cos(theta)) / std::numbers::pi;
}

inline double satotate_density(double theta) {
  const double s = std::sin(theta);
  return 2.0 / std::numbers::pi * s * s;
}

struct HistogramBin {
  double lo;
  double hi;
  std::size_t count;
  double model_mass;
};

struct SatoTateReport {
  double sup_distance;  // max over bin edges of |F_emp - F|
  std::size_t samples;
  std::vector<HistogramBin> histogram;
};

inline SatoTateReport satotate_test(const std::vector<double>& thetas, std::size_t bins) {
  if (bins < 2) throw InvalidInput("satotate_test: need at least 2 bins");
  if (thetas.empty()) throw InvalidInput("satotate_test: no angles");
  std::vector<double> sorted = thetas;
  std::sort(sorted.begin(), sorted.end());
  const double width = std::numbers::pi / static_cast<double>(bins);

  SatoTateReport report{0.0, sorted.size(), {}};
  report.histogram.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double lo = k * width;
    const double hi = k + 1 == bins ? std::numbers::pi : (k + 1) * width;
    report.histogram[k] = {lo, hi, 0, satotate_cdf(hi) - satotate_cdf(lo)};
  }
  for (double t : sorted) {
    auto k = static_cast<std::size_t>(t / width);
    report.histogram[std::min(k, bins - 1)].count++;
  }
  const double n = static_cast<double>(sorted.size());
  for (std::size_t k = 0; k <= bins; ++k) {
    const double edge = k == bins ? std::numbers::pi : k * width;
    const auto below = std::upper_bound(sorted.begin(), sorted.end(), edge) - sorted.begin();
    const double d = std::abs(static_cast<double>(below) / n - satotate_cdf(edge));
    report.sup_distance = std::max(report.sup_distance, d);
  }
  return report;
}

inline SatoTateReport satotate_test(const AngleTable& angles, std::size_t bins) {
  std::vector<double> thetas;
  thetas.reserve(angles.size());
  for (const auto& e : angles.entries()) thetas.push_back(e.theta);
  return satotate_test(thetas, bins);
}

}  // namespace eulerprod
