#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "power_series.hpp"

namespace eulerprod {

// Exact values tau(1..limit). Immutable once built, safe to share across threads.
class TauTable {
 public:
  // Wraps precomputed values tau(1), tau(2), ... (used when reloading a cache).
  static TauTable from_values(std::vector<mpz_class> values) {
    if (values.empty()) throw InvalidInput("TauTable: empty value list");
    if (values.front() != 1) throw InvalidInput("TauTable: tau(1) must be 1");
    return TauTable(std::move(values));
  }

  std::size_t limit() const { return values_.size(); }

  const mpz_class& at(std::size_t n) const {
    if (n < 1 || n > values_.size())
      throw std::out_of_range("tau(" + std::to_string(n) + ") outside table limit " +
                              std::to_string(values_.size()));
    return values_[n - 1];
  }

  friend bool operator==(const TauTable&, const TauTable&) = default;

 private:
  explicit TauTable(std::vector<mpz_class> values) : values_(std::move(values)) {}
  std::vector<mpz_class> values_;
};

struct ExpansionOptions {
  MultiplyMethod method = MultiplyMethod::Auto;
  // Rough ceiling on the working set (four live series of GMP integers).
  std::size_t memory_budget_bytes = std::size_t{2} << 30;
};

// Working-set estimate: a handful of series, each coefficient up to ~4 limbs
// plus the mpz header.
inline std::size_t expansion_bytes_estimate(std::size_t limit) { return 4 * limit * 48; }

// prod_{n>=1} (1-q^n)^3 = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}  (Jacobi)
inline PowerSeriesZ eta_cubed(std::size_t order) {
  PowerSeriesZ s(order);
  for (std::size_t k = 0;; ++k) {
    const std::size_t idx = k * (k + 1) / 2;
    if (idx > order) break;
    const long v = static_cast<long>(2 * k + 1);
    s[idx] = (k % 2 == 0) ? v : -v;
  }
  return s;
}

// Expands Delta = q prod (1-q^n)^24 to q^limit. The product is built as
// ((eta^3)^2)^2)^2 from Jacobi's sparse series, then shifted by q.
inline TauTable expand_delta(std::size_t limit, const ExpansionOptions& opts = {}) {
  if (limit == 0) throw InvalidInput("expand_delta: limit must be >= 1");
  if (expansion_bytes_estimate(limit) > opts.memory_budget_bytes)
    throw InvalidInput("expand_delta: limit " + std::to_string(limit) +
                       " exceeds the configured memory budget");
  const std::size_t order = limit > 1 ? limit - 1 : 1;
  PowerSeriesZ s = eta_cubed(order);
  for (int i = 0; i < 3; ++i) s = square(s, opts.method);
  std::vector<mpz_class> values(limit);
  for (std::size_t n = 1; n <= limit; ++n) values[n - 1] = s[n - 1];
  return TauTable::from_values(std::move(values));
}

inline const mpz_class& tau(const TauTable& table, std::size_t n) { return table.at(n); }

}  // namespace eulerprod
