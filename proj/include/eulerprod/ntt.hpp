#pragma once

// Exact integer convolution by number-theoretic transforms over several
// word-size primes, recombined with the Chinese remainder theorem.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace eulerprod::ntt {

struct ModPrime {
  std::uint32_t modulus;
  std::uint32_t root;  // primitive root
  unsigned two_adicity;
};

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1;
  base %= mod;
  while (exp) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

inline std::uint32_t find_primitive_root(std::uint32_t p) {
  std::vector<std::uint64_t> factors;
  std::uint64_t m = p - 1;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::uint32_t g = 2;; ++g) {
    bool ok = true;
    for (auto q : factors)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

// Primes c*2^k+1 below 2^31, each supporting transforms of length >= 2^21.
inline const std::vector<ModPrime>& prime_pool() {
  static const std::vector<ModPrime> pool = [] {
    constexpr std::array<std::uint32_t, 10> moduli = {
        2013265921u, 1811939329u, 2113929217u, 1711276033u, 469762049u,
        998244353u,  167772161u,  754974721u,  1224736769u, 1004535809u};
    std::vector<ModPrime> out;
    for (auto p : moduli) {
      unsigned k = 0;
      while (((p - 1) >> k & 1u) == 0) ++k;
      out.push_back({p, find_primitive_root(p), k});
    }
    return out;
  }();
  return pool;
}

inline void transform(std::vector<std::uint32_t>& a, const ModPrime& mp, bool inverse) {
  const std::uint64_t p = mp.modulus;
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pow_mod(mp.root, (p - 1) / len, p);
    if (inverse) w = pow_mod(w, p - 2, p);
    std::vector<std::uint32_t> tw(len / 2);
    tw[0] = 1;
    for (std::size_t k = 1; k < len / 2; ++k) tw[k] = static_cast<std::uint32_t>(tw[k - 1] * w % p);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::uint64_t u = a[i + k];
        const std::uint64_t v = a[i + k + len / 2] * std::uint64_t{tw[k]} % p;
        a[i + k] = static_cast<std::uint32_t>(u + v >= p ? u + v - p : u + v);
        a[i + k + len / 2] = static_cast<std::uint32_t>(u >= v ? u - v : u + p - v);
      }
    }
  }
  if (inverse) {
    const std::uint64_t inv_n = pow_mod(n, p - 2, p);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * inv_n % p);
  }
}

inline mpz_class max_abs(std::span<const mpz_class> v) {
  mpz_class m = 0;
  for (const auto& x : v)
    if (cmpabs(x, m) > 0) m = abs(x);
  return m;
}

// Product of a and b truncated to `out_len` coefficients, computed exactly.
// Enough primes are used that their product exceeds twice the a-priori bound
// min(|a|,|b|) * max|a_i| * max|b_j| on every output coefficient.
inline std::vector<mpz_class> multiply(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                       std::size_t out_len) {
  std::vector<mpz_class> out(out_len, 0);
  if (a.empty() || b.empty() || out_len == 0) return out;
  const mpz_class bound = mpz_class(std::min(a.size(), b.size())) * max_abs(a) * max_abs(b);
  if (bound == 0) return out;

  const auto& pool = prime_pool();
  std::vector<ModPrime> chosen;
  mpz_class modulus_product = 1;
  for (const auto& mp : pool) {
    if (modulus_product > 2 * bound) break;
    chosen.push_back(mp);
    modulus_product *= mp.modulus;
  }
  if (modulus_product <= 2 * bound)
    throw InvalidInput("ntt::multiply: coefficient bound exceeds the CRT capacity");

  const std::size_t full = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < full) n <<= 1;
  for (const auto& mp : chosen)
    if ((std::size_t{1} << mp.two_adicity) < n)
      throw InvalidInput("ntt::multiply: transform length exceeds prime 2-adicity");

  const std::size_t keep = std::min(out_len, full);
  std::vector<std::vector<std::uint32_t>> residues(chosen.size());
  parallel_for(
      chosen.size(),
      [&](std::size_t k) {
        const auto& mp = chosen[k];
        std::vector<std::uint32_t> fa(n, 0), fb(n, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
          fa[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(a[i].get_mpz_t(), mp.modulus));
        for (std::size_t i = 0; i < b.size(); ++i)
          fb[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(b[i].get_mpz_t(), mp.modulus));
        transform(fa, mp, false);
        transform(fb, mp, false);
        for (std::size_t i = 0; i < n; ++i)
          fa[i] = static_cast<std::uint32_t>(std::uint64_t{fa[i]} * fb[i] % mp.modulus);
        transform(fa, mp, true);
        fa.resize(keep);
        residues[k] = std::move(fa);
      },
      1);

  // Garner: mixed-radix digits d_j with x = d_0 + d_1 m_0 + d_2 m_0 m_1 + ...
  const std::size_t k = chosen.size();
  std::vector<std::vector<std::uint64_t>> inv(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i)
      inv[i][j] = pow_mod(chosen[i].modulus, chosen[j].modulus - 2, chosen[j].modulus);
  const mpz_class half = modulus_product / 2;

  parallel_for(keep, [&](std::size_t idx) {
    std::vector<std::uint64_t> digit(k);
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t mj = chosen[j].modulus;
      std::uint64_t x = residues[j][idx];
      for (std::size_t i = 0; i < j; ++i) {
        x = (x + mj - digit[i] % mj) % mj;
        x = x * inv[i][j] % mj;
      }
      digit[j] = x;
    }
    mpz_class value = digit[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) {
      value *= chosen[j].modulus;
      value += static_cast<unsigned long>(digit[j]);
    }
    if (value > half) value -= modulus_product;
    out[idx] = std::move(value);
  });
  return out;
}

}  // namespace eulerprod::ntt
