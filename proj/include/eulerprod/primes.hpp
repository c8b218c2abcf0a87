#pragma once

#include <cstdint>
#include <vector>

namespace eulerprod {

using Prime = std::uint32_t;

// Sieve of Eratosthenes over odd numbers only.
inline std::vector<Prime> primes_up_to(std::uint64_t limit) {
  std::vector<Prime> out;
  if (limit < 2) return out;
  out.push_back(2);
  const std::uint64_t half = (limit - 1) / 2;  // odd numbers 3,5,... <= limit
  std::vector<bool> composite(half + 1, false);
  for (std::uint64_t i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(static_cast<Prime>(p));
    for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

}  // namespace eulerprod
