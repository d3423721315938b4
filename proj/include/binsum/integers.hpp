#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace binsum {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// A stated precondition does not hold for the given arguments.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An internal consistency check failed. Reaching this means a bug in the
// library (or a falsified identity), never bad input.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

// Deterministic Miller-Rabin, valid for the full uint64_t range.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct PrimePower {
  std::uint64_t p;
  unsigned f;
};

namespace detail {

// base^exp, or nullopt on uint64 overflow.
inline std::optional<std::uint64_t> checked_pow_u64(std::uint64_t base, unsigned exp) {
  unsigned __int128 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    result *= base;
    if (result > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(result);
}

// floor of the f-th root of q, by binary search.
inline std::uint64_t iroot_u64(std::uint64_t q, unsigned f) {
  std::uint64_t lo = 1, hi = q;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo + 1) / 2;
    auto pw = checked_pow_u64(mid, f);
    if (pw && *pw <= q)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace detail

inline std::optional<PrimePower> try_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  if (is_prime(q)) return PrimePower{q, 1};
  for (unsigned f = 2; f < 64; ++f) {
    std::uint64_t r = detail::iroot_u64(q, f);
    if (r < 2) break;
    auto pw = detail::checked_pow_u64(r, f);
    if (pw && *pw == q && is_prime(r)) return PrimePower{r, f};
  }
  return std::nullopt;
}

inline PrimePower prime_power(std::uint64_t q) {
  auto pp = try_prime_power(q);
  if (!pp) throw precondition_error("q must be a prime power");
  return *pp;
}

inline Int pow_int(const Int& base, std::uint64_t exp) {
  Int result = 1;
  Int b = base;
  while (exp != 0) {
    if (exp & 1) result *= b;
    b *= b;
    exp >>= 1;
  }
  return result;
}

// Canonical residue in [0, m), m > 0.
inline Int mod_canon(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

inline Int mod_pow(Int base, Int exp, const Int& m) {
  if (exp < 0) throw precondition_error("mod_pow exponent must be nonnegative");
  if (m == 1) return 0;
  Int result = 1;
  base = mod_canon(base, m);
  while (exp != 0) {
    if (bit_test(exp, 0)) result = result * base % m;
    base = base * base % m;
    exp >>= 1;
  }
  return result;
}

// Extended Euclid; throws if gcd(a, m) != 1.
inline Int mod_inverse(const Int& a, const Int& m) {
  Int old_r = mod_canon(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int quot = old_r / r;
    Int tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw precondition_error("element is not invertible modulo m");
  return mod_canon(old_s, m);
}

// Order of x in (Z/n)^*; n >= 1. The order modulo 1 is 1 by convention.
inline std::uint64_t multiplicative_order(std::uint64_t x, std::uint64_t n) {
  if (n == 0) throw precondition_error("modulus must be >= 1");
  if (n == 1) return 1;
  x %= n;
  if (std::gcd(x, n) != 1) throw precondition_error("element is not a unit modulo n");
  std::uint64_t cur = x % n;
  std::uint64_t ord = 1;
  while (cur != 1) {
    cur = detail::mulmod_u64(cur, x, n);
    ++ord;
  }
  return ord;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> factors;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  return factors;
}

// v_p(n) for n > 0.
inline unsigned valuation_u64(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw precondition_error("valuation of 0 is undefined here");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace binsum
