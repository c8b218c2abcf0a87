#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ntt.hpp"

namespace eulerprod {

enum class MultiplyMethod { Auto, Schoolbook, MultiModular };

// Truncated power series sum_{i<=N} c_i q^i with exact integer coefficients.
class PowerSeriesZ {
 public:
  // Series lengths at or below this use schoolbook multiplication under Auto.
  static constexpr std::size_t kSchoolbookThreshold = 20000;

  explicit PowerSeriesZ(std::size_t truncation_order)
      : order_(truncation_order), coeffs_(truncation_order + 1, 0) {
    if (truncation_order < 1) throw InvalidInput("PowerSeriesZ: truncation order must be >= 1");
  }

  PowerSeriesZ(std::size_t truncation_order, std::vector<mpz_class> coeffs)
      : PowerSeriesZ(truncation_order) {
    if (coeffs.size() > order_ + 1) coeffs.resize(order_ + 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs_[i] = std::move(coeffs[i]);
  }

  std::size_t truncation_order() const { return order_; }
  std::span<const mpz_class> coeffs() const { return coeffs_; }
  const mpz_class& operator[](std::size_t i) const { return coeffs_.at(i); }
  mpz_class& operator[](std::size_t i) { return coeffs_.at(i); }

  friend bool operator==(const PowerSeriesZ&, const PowerSeriesZ&) = default;

  friend PowerSeriesZ multiply(const PowerSeriesZ& a, const PowerSeriesZ& b,
                               MultiplyMethod method = MultiplyMethod::Auto) {
    if (a.order_ != b.order_)
      throw InvalidInput("PowerSeriesZ: operands have different truncation orders");
    const std::size_t len = a.order_ + 1;
    if (method == MultiplyMethod::Auto)
      method = len <= kSchoolbookThreshold ? MultiplyMethod::Schoolbook : MultiplyMethod::MultiModular;
    PowerSeriesZ out(a.order_);
    if (method == MultiplyMethod::MultiModular) {
      out.coeffs_ = ntt::multiply(trimmed(a.coeffs_), trimmed(b.coeffs_), len);
      return out;
    }
    const auto ta = trimmed(a.coeffs_);
    const auto tb = trimmed(b.coeffs_);
    for (std::size_t i = 0; i < ta.size(); ++i) {
      if (ta[i] == 0) continue;
      const std::size_t jmax = std::min(tb.size(), len - i);
      for (std::size_t j = 0; j < jmax; ++j)
        mpz_addmul(out.coeffs_[i + j].get_mpz_t(), ta[i].get_mpz_t(), tb[j].get_mpz_t());
    }
    return out;
  }

  friend PowerSeriesZ square(const PowerSeriesZ& a, MultiplyMethod method = MultiplyMethod::Auto) {
    const std::size_t len = a.order_ + 1;
    if (method == MultiplyMethod::Auto)
      method = len <= kSchoolbookThreshold ? MultiplyMethod::Schoolbook : MultiplyMethod::MultiModular;
    if (method == MultiplyMethod::MultiModular) return multiply(a, a, method);
    // c_n = 2 * sum_{i<j, i+j=n} a_i a_j + a_{n/2}^2
    PowerSeriesZ out(a.order_);
    const auto t = trimmed(a.coeffs_);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] == 0) continue;
      for (std::size_t j = i + 1; j < t.size() && i + j < len; ++j)
        mpz_addmul(out.coeffs_[i + j].get_mpz_t(), t[i].get_mpz_t(), t[j].get_mpz_t());
    }
    for (auto& c : out.coeffs_) c *= 2;
    for (std::size_t i = 0; i < t.size() && 2 * i < len; ++i)
      mpz_addmul(out.coeffs_[2 * i].get_mpz_t(), t[i].get_mpz_t(), t[i].get_mpz_t());
    return out;
  }

 private:
  static std::span<const mpz_class> trimmed(const std::vector<mpz_class>& v) {
    std::size_t n = v.size();
    while (n > 0 && v[n - 1] == 0) --n;
    return {v.data(), n};
  }

  std::size_t order_;
  std::vector<mpz_class> coeffs_;
};

}  // namespace eulerprod
