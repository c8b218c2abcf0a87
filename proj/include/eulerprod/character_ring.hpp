#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "chebyshev_gate.hpp"
#include "errors.hpp"
#include "polynomial.hpp"

namespace eulerprod {

// Integer combination sum_m c_m chi_m of irreducible SU(2) characters, where
// chi_m(theta) = sin((m+1)theta) / sin(theta).
class VirtualCharacter {
 public:
  VirtualCharacter() = default;
  explicit VirtualCharacter(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  VirtualCharacter(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static VirtualCharacter irreducible(std::size_t m, const mpz_class& mult = 1) {
    std::vector<mpz_class> v(m + 1, 0);
    v[m] = mult;
    return VirtualCharacter(std::move(v));
  }

  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(std::size_t m) const { return m < coeffs_.size() ? coeffs_[m] : mpz_class(0); }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t top() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  // Uses chi_{k+1} = chi_1 chi_k - chi_{k-1}, which is exact at theta in {0, pi}.
  double eval(double theta) const {
    const double x = 2.0 * std::cos(theta);
    double prev = 0.0, cur = 1.0, sum = 0.0;
    for (std::size_t m = 0; m < coeffs_.size(); ++m) {
      sum += coeffs_[m].get_d() * cur;
      const double next = x * cur - prev;
      prev = cur;
      cur = next;
    }
    return sum;
  }

  friend bool operator==(const VirtualCharacter&, const VirtualCharacter&) = default;

  friend VirtualCharacter operator+(const VirtualCharacter& a, const VirtualCharacter& b) {
    std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return VirtualCharacter(std::move(v));
  }
  friend VirtualCharacter operator-(const VirtualCharacter& a) {
    auto v = a.coeffs_;
    for (auto& c : v) c = -c;
    return VirtualCharacter(std::move(v));
  }
  friend VirtualCharacter operator-(const VirtualCharacter& a, const VirtualCharacter& b) {
    return a + (-b);
  }
  friend VirtualCharacter operator*(const mpz_class& k, const VirtualCharacter& a) {
    auto v = a.coeffs_;
    for (auto& c : v) c *= k;
    return VirtualCharacter(std::move(v));
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t m = 0; m < coeffs_.size(); ++m) {
      const mpz_class& c = coeffs_[m];
      if (c == 0) continue;
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      const mpz_class mag = abs(c);
      if (mag != 1) out += mag.get_str() + "*";
      out += "chi_" + std::to_string(m);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<mpz_class> coeffs_;
};

// Clebsch-Gordan: chi_a chi_b = sum_{k=|a-b|, step 2}^{a+b} chi_k.
inline VirtualCharacter mul(const VirtualCharacter& x, const VirtualCharacter& y) {
  if (x.is_zero() || y.is_zero()) return {};
  std::vector<mpz_class> v(x.top() + y.top() + 1, 0);
  for (std::size_t a = 0; a <= x.top(); ++a) {
    if (x.coeffs()[a] == 0) continue;
    for (std::size_t b = 0; b <= y.top(); ++b) {
      if (y.coeffs()[b] == 0) continue;
      const mpz_class w = x.coeffs()[a] * y.coeffs()[b];
      const std::size_t lo = a > b ? a - b : b - a;
      for (std::size_t k = lo; k <= a + b; k += 2) v[k] += w;
    }
  }
  return VirtualCharacter(std::move(v));
}

inline VirtualCharacter operator*(const VirtualCharacter& x, const VirtualCharacter& y) { return mul(x, y); }

// f(chi_1) by Horner's rule in the ring; pointwise this is f(2cos(theta)).
inline VirtualCharacter from_polynomial(const IntPolynomial& f) {
  const VirtualCharacter chi1 = VirtualCharacter::irreducible(1);
  VirtualCharacter acc;
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = mul(acc, chi1) + VirtualCharacter::irreducible(0, c[i]);
  return acc;
}

// Inverse of from_polynomial: chi_m = P_m(x) with P_0 = 1, P_1 = x,
// P_{m+1} = x P_m - P_{m-1}.
inline IntPolynomial to_polynomial(const VirtualCharacter& h) {
  const IntPolynomial x = IntPolynomial::monomial(1);
  IntPolynomial prev{0}, cur{1}, out;
  for (std::size_t m = 0; m < h.coeffs().size(); ++m) {
    out = out + IntPolynomial::monomial(0, h.coeffs()[m]) * cur;
    IntPolynomial next = x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

// Character with value 2cos(m theta).
inline VirtualCharacter cos_character(std::size_t m) {
  if (m == 0) return VirtualCharacter{2};
  if (m == 1) return VirtualCharacter::irreducible(1);
  return VirtualCharacter::irreducible(m) - VirtualCharacter::irreducible(m - 2);
}

// H(T) = 1 + sign*h*T + T^2
struct DegreeTwoFamily {
  int sign;
  VirtualCharacter h;
};

enum class UnitarityVerdict { Unitary, NonUnitary, BoundaryAmbiguous };

struct UnitarityResult {
  UnitarityVerdict verdict;
  double theta;      // location of max |h| (the witness when NonUnitary)
  double value;      // h(theta)
  bool exact;        // verdict settled by exact polynomial arithmetic
};

inline constexpr double kUnitarityBand = 1e-9;

namespace detail {

inline double golden_max(const VirtualCharacter& h, double a, double b) {
  auto g = [&](double t) { return std::abs(h.eval(t)); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > 1e-10) {
    if (gc > gd) {
      b = d; d = c; gd = gc;
      c = b - inv_phi * (b - a); gc = g(c);
    } else {
      a = c; c = d; gc = gd;
      d = a + inv_phi * (b - a); gd = g(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

// |h(theta)| <= 2 on [0, pi]? Grid search plus golden-section refinement;
// results within 1e-9 of the threshold are settled exactly through the
// polynomial form of h when that form is (+-) monic or constant, and are
// reported BoundaryAmbiguous otherwise.
inline UnitarityResult unitarity_test(const DegreeTwoFamily& fam, std::size_t grid = 4096) {
  if (grid < 16) throw InvalidInput("unitarity_test: grid must be >= 16");
  if (fam.sign != 1 && fam.sign != -1) throw InvalidInput("unitarity_test: sign must be +1 or -1");
  const auto& h = fam.h;
  std::vector<double> vals(grid + 1);
  const double step = std::numbers::pi / static_cast<double>(grid);
  for (std::size_t i = 0; i <= grid; ++i) vals[i] = std::abs(h.eval(step * static_cast<double>(i)));

  std::size_t arg = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  double best_theta = step * static_cast<double>(arg);
  double best = vals[arg];
  for (std::size_t i = 1; i < grid; ++i) {
    if (vals[i] < vals[i - 1] || vals[i] < vals[i + 1]) continue;
    const double t = detail::golden_max(h, step * static_cast<double>(i - 1), step * static_cast<double>(i + 1));
    const double v = std::abs(h.eval(t));
    if (v > best) {
      best = v;
      best_theta = t;
    }
  }

  if (best > 2.0 + kUnitarityBand)
    return {UnitarityVerdict::NonUnitary, best_theta, h.eval(best_theta), false};
  if (best < 2.0 - kUnitarityBand) return {UnitarityVerdict::Unitary, best_theta, h.eval(best_theta), false};

  IntPolynomial poly = to_polynomial(h);
  if (poly.degree() == 0) {
    const bool ok = cmpabs(poly.coeff(0), 2) <= 0;
    return {ok ? UnitarityVerdict::Unitary : UnitarityVerdict::NonUnitary, 0.0, h.eval(0.0), true};
  }
  if (cmpabs(poly.leading(), 1) == 0) {
    if (poly.leading() < 0) poly = -poly;
    const auto cls = classify(poly);
    if (cls.unitary) return {UnitarityVerdict::Unitary, best_theta, h.eval(best_theta), true};
    const double theta = std::acos(std::clamp(cls.witness->x.get_d() / 2.0, -1.0, 1.0));
    return {UnitarityVerdict::NonUnitary, theta, h.eval(theta), true};
  }
  return {UnitarityVerdict::BoundaryAmbiguous, best_theta, h.eval(best_theta), false};
}

}  // namespace eulerprod
