#pragma once

// Decides whether a monic integer polynomial f satisfies |f(x)| <= 2 on
// [-2, 2]. Among monic polynomials of degree m this holds only for the
// dilated Chebyshev polynomial 2 T_m(x/2), so the positive branch is an exact
// coefficient comparison and the negative branch carries an exact rational
// witness x0 with |f(x0)| > 2.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace eulerprod {

// 2 T_m(x/2) via S_0 = 2, S_1 = x, S_{k+1} = x S_k - S_{k-1}.
inline IntPolynomial dilated_chebyshev(std::size_t m) {
  const IntPolynomial x = IntPolynomial::monomial(1);
  IntPolynomial prev{2};
  if (m == 0) return prev;
  IntPolynomial cur = x;
  for (std::size_t k = 1; k < m; ++k) {
    IntPolynomial next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

struct Witness {
  mpq_class x;      // in [-2, 2]
  mpq_class value;  // f(x), |value| > 2
};

namespace detail {

inline void require_monic(const IntPolynomial& f, const char* who) {
  if (f.degree() < 1 || f.is_zero())
    throw InvalidInput(std::string(who) + ": polynomial must be non-constant");
  if (!f.is_monic())
    throw InvalidInput(std::string(who) + ": polynomial must be monic, got " + f.to_string());
}

// |f(n / 2^k)| > 2, decided in integers: scaled = 2^{km} f(n/2^k).
inline bool dyadic_violates(const IntPolynomial& f, const mpz_class& n, unsigned k) {
  const auto& c = f.coeffs();
  const std::size_t m = f.degree();
  const mpz_class d = mpz_class(1) << k;
  mpz_class r = c[m];
  mpz_class dp = 1;
  for (std::size_t i = m; i-- > 0;) {
    dp *= d;
    r = r * n + c[i] * dp;
  }
  return cmpabs(r, 2 * dp) > 0;
}

inline Witness make_witness(const IntPolynomial& f, const mpz_class& n, unsigned k) {
  mpq_class x(n, mpz_class(1) << k);
  x.canonicalize();
  return {x, f.eval(x)};
}

}  // namespace detail

inline constexpr unsigned kWitnessMaxLevel = 20;  // up to 2^20 subintervals of [-2, 2]

// Looks for a rational x0 in [-2, 2] with |f(x0)| > 2. First the m+1
// Chebyshev extremal nodes 2cos(j pi/m) (endpoints included, irrational nodes
// rounded to dyadic rationals), returning the most violating one with ties
// going to the earlier node; then dyadic subdivision of [-2, 2].
inline std::optional<Witness> witness_search(const IntPolynomial& f) {
  detail::require_monic(f, "witness_search");
  const std::size_t m = f.degree();

  constexpr unsigned node_bits = 48;
  const double scale = std::ldexp(1.0, node_bits);
  const mpz_class lim = mpz_class(2) << node_bits;
  std::optional<Witness> best;
  for (std::size_t j = 0; j <= m; ++j) {
    const double node = 2.0 * std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
    mpz_class n(std::nearbyint(node * scale));
    if (n > lim) n = lim;
    if (n < -lim) n = -lim;
    if (!detail::dyadic_violates(f, n, node_bits)) continue;
    Witness w = detail::make_witness(f, n, node_bits);
    if (!best || abs(w.value) > abs(best->value)) best = std::move(w);
  }
  if (best) return best;

  // Level L visits -2 + 4j/2^L for odd j; x = (4j - 2^{L+1}) / 2^L.
  for (unsigned level = 1; level <= kWitnessMaxLevel; ++level) {
    const unsigned long count = 1ul << level;
    const mpz_class offset = mpz_class(1) << (level + 1);
    for (unsigned long j = 1; j < count; j += 2) {
      const mpz_class n = mpz_class(4) * j - offset;
      if (detail::dyadic_violates(f, n, level)) return detail::make_witness(f, n, level);
    }
  }
  return std::nullopt;
}

struct Classification {
  bool unitary;
  std::size_t degree;
  std::optional<Witness> witness;  // set iff !unitary
};

inline Classification classify(const IntPolynomial& f) {
  detail::require_monic(f, "classify");
  const std::size_t m = f.degree();
  if (f == dilated_chebyshev(m)) return {true, m, std::nullopt};
  auto w = witness_search(f);
  if (!w)
    throw Inconsistency("classify: no witness found for " + f.to_string() +
                        ", which is not 2T_m(x/2)");
  return {false, m, std::move(w)};
}

// Numerical max of |f| on [lo, hi]: dense grid, then golden-section refinement
// around every grid-local maximum.
inline double max_abs_on_interval(const IntPolynomial& f, double lo, double hi, std::size_t grid = 4096) {
  auto g = [&](double x) { return std::abs(f.eval(x)); };
  std::vector<double> vals(grid + 1);
  const double h = (hi - lo) / static_cast<double>(grid);
  for (std::size_t i = 0; i <= grid; ++i) vals[i] = g(lo + h * static_cast<double>(i));
  double best = *std::max_element(vals.begin(), vals.end());
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 1; i < grid; ++i) {
    if (vals[i] < vals[i - 1] || vals[i] < vals[i + 1]) continue;
    double a = lo + h * static_cast<double>(i - 1), b = lo + h * static_cast<double>(i + 1);
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    while (b - a > 1e-12) {
      if (g(c) > g(d)) b = d; else a = c;
      c = b - inv_phi * (b - a);
      d = a + inv_phi * (b - a);
    }
    best = std::max(best, g(0.5 * (a + b)));
  }
  return best;
}

}  // namespace eulerprod
