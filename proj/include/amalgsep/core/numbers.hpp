#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace amalgsep {

  constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) {
      return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        return false;
      }
    }
    return true;
  }

  // Distinct prime divisors in increasing order.
  inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> result;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        result.push_back(d);
        while (n % d == 0) {
          n /= d;
        }
      }
    }
    if (n > 1) {
      result.push_back(n);
    }
    return result;
  }

  // True for 1 = p^0 as well.
  constexpr bool is_p_power(std::uint64_t n, std::uint64_t p) noexcept {
    if (n == 0 || p < 2) {
      return false;
    }
    while (n % p == 0) {
      n /= p;
    }
    return n == 1;
  }

  struct PrimeSplit {
    std::uint64_t p_part;      // p^l
    std::uint64_t coprime_part;  // n', with gcd(n', p) = 1
  };

  constexpr PrimeSplit split_prime_part(std::uint64_t n, std::uint64_t p) noexcept {
    PrimeSplit s{1, n};
    while (s.coprime_part != 0 && s.coprime_part % p == 0) {
      s.coprime_part /= p;
      s.p_part *= p;
    }
    return s;
  }

  constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t m) noexcept {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
  }

  // Smallest non-negative x with a*x = 1 (mod m), found by scanning.
  inline std::optional<std::uint64_t> inverse_mod_by_scan(std::uint64_t a,
                                                          std::uint64_t m) {
    if (m == 1) {
      return 0;
    }
    for (std::uint64_t x = 0; x < m; ++x) {
      if ((a % m) * x % m == 1) {
        return x;
      }
    }
    return std::nullopt;
  }

  constexpr std::uint64_t ipow(std::uint64_t base, unsigned exp) noexcept {
    std::uint64_t r = 1;
    while (exp-- > 0) {
      r *= base;
    }
    return r;
  }

}  // namespace amalgsep
