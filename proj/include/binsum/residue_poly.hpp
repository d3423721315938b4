#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "binsum/integers.hpp"

namespace binsum {

// The full coefficient row of (1+x)^a mod (x^d - 1, p^(k+1)): entry r holds
// S(a,d,r) mod p^(k+1).
struct ResidueVector {
  Int modulus;
  std::vector<Int> values;  // length d, each in [0, modulus)
};

namespace detail {

// Coefficient arithmetic for polynomials mod (x^d - 1), dense vectors of
// residues. Two lanes: machine words when the modulus is small enough that
// products cannot overflow the 128-bit accumulator, big integers otherwise.

struct WordResidueOps {
  std::uint64_t m;  // < 2^32 so that d-term convolutions fit in 128 bits
  using value_type = std::uint64_t;
  value_type from_small(std::uint64_t v) const { return v % m; }
};

struct BigResidueOps {
  Int m;
  using value_type = Int;
  value_type from_small(std::uint64_t v) const { return Int(v) % m; }
};

inline std::vector<std::uint64_t> cyclic_mul(const std::vector<std::uint64_t>& x,
                                             const std::vector<std::uint64_t>& y,
                                             const WordResidueOps& ops) {
  std::uint64_t d = x.size();
  std::vector<std::uint64_t> out(d);
  for (std::uint64_t t = 0; t < d; ++t) {
    unsigned __int128 acc = 0;
    for (std::uint64_t i = 0; i < d; ++i) {
      std::uint64_t j = (t + d - i) % d;
      acc += static_cast<unsigned __int128>(x[i]) * y[j];
    }
    out[t] = static_cast<std::uint64_t>(acc % ops.m);
  }
  return out;
}

inline std::vector<Int> cyclic_mul(const std::vector<Int>& x, const std::vector<Int>& y,
                                   const BigResidueOps& ops) {
  std::uint64_t d = x.size();
  std::vector<Int> out(d, Int(0));
  for (std::uint64_t t = 0; t < d; ++t) {
    Int acc = 0;
    for (std::uint64_t i = 0; i < d; ++i) {
      std::uint64_t j = (t + d - i) % d;
      acc += x[i] * y[j];
    }
    out[t] = acc % ops.m;
  }
  return out;
}

// (1+x)^a mod (x^d - 1), left-to-right binary exponentiation. The multiply
// step is a cyclic shift-and-add, so each exponent bit costs one squaring.
template <class Ops>
std::vector<typename Ops::value_type> one_plus_x_pow(std::uint64_t a, std::uint64_t d,
                                                     const Ops& ops) {
  using V = typename Ops::value_type;
  std::vector<V> result(d, ops.from_small(0));
  result[0] = ops.from_small(1);
  if (a == 0) return result;
  int top = 63;
  while (((a >> top) & 1) == 0) --top;
  for (int bit = top; bit >= 0; --bit) {
    result = cyclic_mul(result, result, ops);
    if ((a >> bit) & 1) {
      // multiply by (1 + x): out[i] = in[i] + in[i-1 mod d]
      std::vector<V> shifted(d, ops.from_small(0));
      for (std::uint64_t i = 0; i < d; ++i) {
        V s = result[i] + result[(i + d - 1) % d];
        if (s >= ops.m) s -= ops.m;
        shifted[i] = s;
      }
      result = std::move(shifted);
    }
  }
  return result;
}

}  // namespace detail

// All d residues S(a,d,r) mod p^(k+1) at once, by binary exponentiation of
// (1+x) modulo (x^d - 1, p^(k+1)): O(log a) cyclic convolutions of length d.
inline ResidueVector sum_mod_polypow(std::uint64_t a, std::uint64_t d, std::uint64_t p,
                                     unsigned k) {
  if (d == 0) throw precondition_error("step d must be >= 1");
  if (!is_prime(p)) throw precondition_error("p must be prime");
  Int m = pow_int(Int(p), k + 1);
  ResidueVector out;
  out.modulus = m;
  if (m < (Int(1) << 32)) {
    detail::WordResidueOps ops{static_cast<std::uint64_t>(m)};
    auto row = detail::one_plus_x_pow(a, d, ops);
    out.values.reserve(d);
    for (std::uint64_t v : row) out.values.emplace_back(v);
  } else {
    detail::BigResidueOps ops{m};
    out.values = detail::one_plus_x_pow(a, d, ops);
  }
  return out;
}

}  // namespace binsum
