#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

#include "binsum/binomial.hpp"
#include "binsum/integers.hpp"

namespace binsum {

// Exact reduced rationals B_0..B_max_index with the B_1 = -1/2 convention.
struct BernoulliTable {
  unsigned max_index = 0;
  std::vector<Rat> entries;
};

namespace detail {

// Process-wide table, extended on demand under a lock. Readers always observe
// a fully built prefix.
inline void ensure_bernoulli(std::vector<Rat>& table, unsigned n) {
  if (table.empty()) table.push_back(Rat(1));  // B_0
  while (table.size() <= n) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m
    unsigned m = static_cast<unsigned>(table.size());
    Rat acc(0);
    for (unsigned j = 0; j < m; ++j) acc += Rat(binom(m + 1, j)) * table[j];
    table.push_back(-acc / Rat(m + 1));
  }
}

inline Rat bernoulli_cached(unsigned m) {
  static std::vector<Rat> table;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  ensure_bernoulli(table, m);
  return table[m];
}

}  // namespace detail

inline Rat bernoulli_number(unsigned m) { return detail::bernoulli_cached(m); }

inline BernoulliTable bernoulli_table(unsigned n) {
  BernoulliTable out;
  out.max_index = n;
  out.entries.reserve(n + 1);
  for (unsigned m = 0; m <= n; ++m) out.entries.push_back(detail::bernoulli_cached(m));
  return out;
}

// Wilson's quotient ((p-1)! + 1)/p. The division is exact precisely for prime
// p, so a failed division rejects composite input.
inline Int wilson_quotient(std::uint64_t p) {
  if (p < 2) throw precondition_error("p must be prime");
  Int fact = 1;
  for (std::uint64_t i = 2; i < p; ++i) fact *= i;
  Int num = fact + 1;
  if (num % p != 0) throw precondition_error("p must be prime (Wilson check failed)");
  return num / p;
}

// B_m/m reduced modulo p, valid when (p-1) does not divide m: the exact
// rational then has denominator prime to p.
inline Int b_div_m_mod_p(unsigned m, std::uint64_t p) {
  if (m == 0) throw precondition_error("m must be >= 1");
  if (p < 3 || !is_prime(p)) throw precondition_error("p must be an odd prime");
  if (m % (p - 1) == 0) throw precondition_error("(p-1) must not divide m");
  Rat v = bernoulli_number(m) / m;
  Int num = numerator(v), den = denominator(v);
  if (den % p == 0) throw internal_error("B_m/m has denominator divisible by p");
  return mod_canon(num * mod_inverse(den, Int(p)), Int(p));
}

// Inputs of the sharper right-hand side; delta_s = 1 iff (p-1) | (s-1).
struct SharperParams {
  std::uint64_t p = 3;  // odd prime
  std::uint64_t s = 1;
  unsigned k = 0;
  bool delta_s = false;
};

inline SharperParams make_sharper_params(std::uint64_t p, std::uint64_t s, unsigned k) {
  if (p < 3 || !is_prime(p)) throw precondition_error("p must be an odd prime");
  if (s == 0) throw precondition_error("s must be >= 1");
  return SharperParams{p, s, k, (s - 1) % (p - 1) == 0};
}

// s * { 1/2 - sum_{0<2j<s p^k, (p-1) not | 2j} C(s p^k - 1, 2j-1) B_2j/(2j)
//       + delta_s w_p/(p-1) }  mod p.
// For p = 3 the Bernoulli summation is empty.
inline Int sharper_rhs(const SharperParams& params) {
  std::uint64_t p = params.p;
  if (p < 3 || !is_prime(p)) throw precondition_error("p must be an odd prime");
  Int mod = p;
  auto pk = detail::checked_pow_u64(p, params.k);
  if (!pk || *pk > UINT64_MAX / params.s)
    throw precondition_error("s * p^k too large");
  std::uint64_t a = params.s * *pk;
  Int acc = mod_inverse(Int(2), mod);
  for (std::uint64_t twoj = 2; twoj < a; twoj += 2) {
    if (twoj % (p - 1) == 0) continue;
    Int c = mod_canon(binom(a - 1, static_cast<std::int64_t>(twoj - 1)), mod);
    acc -= c * b_div_m_mod_p(static_cast<unsigned>(twoj), p);
  }
  if (params.delta_s)
    acc += mod_canon(wilson_quotient(p), mod) * mod_inverse(Int(p - 1), mod);
  return mod_canon(Int(params.s) * acc, mod);
}

}  // namespace binsum
