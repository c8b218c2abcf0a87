#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"

namespace eulerprod {

// Polynomial over Z, lowest degree first, no trailing zero coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long> coeffs) {
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static IntPolynomial monomial(std::size_t degree, const mpz_class& c = 1) {
    std::vector<mpz_class> v(degree + 1, 0);
    v[degree] = c;
    return IntPolynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  mpz_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }
  const mpz_class& leading() const {
    static const mpz_class zero = 0;
    return coeffs_.empty() ? zero : coeffs_.back();
  }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  double eval(double x) const {
    double r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + it->get_d();
    return r;
  }

  mpq_class eval(const mpq_class& x) const {
    mpq_class r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
    return r;
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return IntPolynomial(std::move(v));
  }

  friend IntPolynomial operator-(const IntPolynomial& a) {
    std::vector<mpz_class> v = a.coeffs_;
    for (auto& c : v) c = -c;
    return IntPolynomial(std::move(v));
  }

  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(v));
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const mpz_class& c = coeffs_[i];
      if (c == 0) continue;
      const bool negative = c < 0;
      const mpz_class mag = abs(c);
      if (out.empty()) {
        if (negative) out += '-';
      } else {
        out += negative ? '-' : '+';
      }
      if (i == 0 || mag != 1) out += mag.get_str();
      if (i >= 1) out += 'x';
      if (i >= 2) out += '^' + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<mpz_class> coeffs_;
};

// Parses sums of terms like "x^3-3x", "-2*x^2 + 5", "x - 5". Integer
// coefficients only, optional '*', no parentheses.
inline IntPolynomial parse_polynomial(std::string_view text) {
  std::string s;
  auto glued = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '^' || c == '*'; };
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (!std::isspace(static_cast<unsigned char>(text[k]))) {
      s += text[k];
      continue;
    }
    // whitespace may separate terms but not split one ("x^2 2")
    std::size_t next = k;
    while (next < text.size() && std::isspace(static_cast<unsigned char>(text[next]))) ++next;
    if (!s.empty() && next < text.size() && glued(s.back()) && glued(text[next]))
      throw InvalidInput("polynomial '" + std::string(text) + "': unexpected space");
    k = next - 1;
  }
  if (s.empty()) throw InvalidInput("polynomial: empty input");

  std::vector<mpz_class> coeffs;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw InvalidInput("polynomial '" + std::string(text) + "': " + why);
  };
  auto read_digits = [&]() {
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(start, i - start);
  };

  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected '+' or '-' at position " + std::to_string(i));
    }
    first = false;

    mpz_class c = 1;
    bool have_coeff = false;
    std::string digits = read_digits();
    if (!digits.empty()) {
      c = mpz_class(digits, 10);
      have_coeff = true;
    }
    std::size_t power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!have_coeff) fail("'*' without a coefficient");
      ++i;
      if (i >= s.size() || (s[i] != 'x' && s[i] != 'X')) fail("expected x after '*'");
    }
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string exp = read_digits();
        if (exp.empty()) fail("missing exponent after '^'");
        if (exp.size() > 4) fail("exponent too large");
        power = std::stoul(exp);
      }
    } else if (!have_coeff) {
      fail("expected a coefficient or x at position " + std::to_string(i));
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += sign * c;
  }
  return IntPolynomial(std::move(coeffs));
}

}  // namespace eulerprod
