#pragma once

#include <cstdint>
#include <vector>

#include "binsum/binomial.hpp"
#include "binsum/galois_ring.hpp"
#include "binsum/integers.hpp"
#include "binsum/residue_poly.hpp"

namespace binsum {

// S(a,d,r) mod p^(k+1) via the root-of-unity filter evaluated in GR(p^(k+1), f):
//   d^(-1) * sum_{i=0}^{d-1} w^(-i r) (1 + w^i)^a,
// where w is a Teichmuller element of exact order d. Requires d | q-1. The
// result lies in the prime subring; its constant coefficient is returned.
inline Int sum_mod_multisection(const SumSpec& spec, const GrContextPtr& ctx) {
  if (spec.d == 0) throw precondition_error("step d must be >= 1");
  std::uint64_t q = ctx->q_u64();
  if ((q - 1) % spec.d != 0)
    throw precondition_error("d must divide q-1");
  std::uint64_t d = spec.d;
  GrElement omega = teichmuller_generator(ctx, d);
  std::vector<GrElement> w;
  w.reserve(d);
  w.push_back(ctx->one());
  for (std::uint64_t i = 1; i < d; ++i) w.push_back(w.back() * omega);
  GrElement total = ctx->zero();
  std::uint64_t rhat = normalize_offset(spec.r, d);
  for (std::uint64_t i = 0; i < d; ++i) {
    // w^(-i r) = w[(-i*r) mod d] since w has order d
    std::uint64_t e = (d - detail::mulmod_u64(i, rhat, d)) % d;
    GrElement term = w[e] * pow(ctx->one() + w[i], Int(spec.a));
    total = total + term;
  }
  total = total * inv(ctx->from_int(Int(d)));
  for (unsigned i = 1; i < ctx->f(); ++i) {
    if (total.coeffs[i] != 0)
      throw internal_error("multisection result escaped the prime subring");
  }
  return total.coeffs[0];
}

// The canonical reduced exponent: smallest positive multiple-of-p^k integer
// congruent to a modulo (q-1)p^k. For p = 2 the side condition a, abar >= k+1
// holds automatically (any positive multiple of 2^k is >= k+1).
inline std::uint64_t reduce_exponent(std::uint64_t a, std::uint64_t q, unsigned k) {
  PrimePower pp = prime_power(q);
  if (a == 0) throw precondition_error("a must be >= 1");
  auto pk = detail::checked_pow_u64(pp.p, k);
  if (!pk) throw precondition_error("p^k too large");
  if (a % *pk != 0) throw precondition_error("p^k must divide a");
  if (pp.p == 2 && a < k + 1)
    throw internal_error("unreachable: a >= 2^k >= k+1");
  std::uint64_t period = (q - 1) * *pk;
  std::uint64_t abar = a % period;
  if (abar == 0) abar = period;
  return abar;
}

// S(a, q-1, r) mod p^(k+1) by replacing a with its reduced exponent and
// delegating to the polynomial evaluator.
inline Int sum_mod_reduced(std::uint64_t a, std::uint64_t q, std::int64_t r, unsigned k) {
  PrimePower pp = prime_power(q);
  std::uint64_t abar = reduce_exponent(a, q, k);
  ResidueVector row = sum_mod_polypow(abar, q - 1, pp.p, k);
  return row.values[normalize_offset(r, q - 1)];
}

}  // namespace binsum
