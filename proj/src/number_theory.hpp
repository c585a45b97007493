#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "basisforge/error.hpp"

namespace basisforge::detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Distinct primes, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      primes.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

struct PrimePower {
  std::uint64_t p;
  unsigned e;
  std::uint64_t q;  // p^e
};

inline std::vector<PrimePower> factor(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      PrimePower pp{d, 0, 1};
      while (n % d == 0) {
        n /= d;
        ++pp.e;
        pp.q *= d;
      }
      out.push_back(pp);
    }
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw InvalidArgument(std::string(what) + ": value overflows 64 bits");
  }
  return a * b;
}

inline std::uint64_t ipow(std::uint64_t base, std::uint64_t exp, const char* what = "power") {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base, what);
  return r;
}

// Returns e with n == p^e, or -1.
inline int exact_log(std::uint64_t n, std::uint64_t p) {
  if (n == 0 || p < 2) return -1;
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return n == 1 ? e : -1;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t r = 0;
  for (int bit = 31; bit >= 0; --bit) {
    const std::uint64_t c = r | (std::uint64_t{1} << bit);
    if (c * c <= n) r = c;
  }
  return r;
}

}  // namespace basisforge::detail
