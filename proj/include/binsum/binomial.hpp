#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "binsum/integers.hpp"

namespace binsum {

// Names the sum S(a,d,r) = sum over all integers b of C(a, b*d + r).
// Terms with b*d + r outside [0, a] vanish, so the value depends on r only
// through r mod d.
struct SumSpec {
  std::uint64_t a = 0;  // upper index
  std::uint64_t d = 1;  // step, >= 1
  std::int64_t r = 0;   // residue offset, any integer
};

inline std::uint64_t normalize_offset(std::int64_t r, std::uint64_t d) {
  if (d == 0) throw precondition_error("step d must be >= 1");
  if (d > static_cast<std::uint64_t>(INT64_MAX))
    throw precondition_error("step d too large");
  std::int64_t rem = r % static_cast<std::int64_t>(d);
  if (rem < 0) rem += static_cast<std::int64_t>(d);
  return static_cast<std::uint64_t>(rem);
}

// C(a, c); 0 when c < 0 or c > a. Multiplicative evaluation with exact
// stepwise division; no factorial tables.
inline Int binom(std::uint64_t a, std::int64_t c) {
  if (c < 0) return Int(0);
  std::uint64_t cc = static_cast<std::uint64_t>(c);
  if (cc > a) return Int(0);
  cc = std::min(cc, a - cc);
  Int result = 1;
  for (std::uint64_t i = 1; i <= cc; ++i) {
    result *= (a - cc + i);
    result /= i;
  }
  return result;
}

namespace detail {

// All d column sums S(a,d,0), ..., S(a,d,d-1) in a single incremental pass
// over the binomial row of a.
inline std::vector<Int> sum_row_walk(std::uint64_t a, std::uint64_t d) {
  std::vector<Int> sums(d, Int(0));
  Int cur = 1;  // C(a, 0)
  sums[0] += cur;
  for (std::uint64_t c = 0; c < a; ++c) {
    cur *= (a - c);
    cur /= (c + 1);  // now C(a, c+1)
    sums[(c + 1) % d] += cur;
  }
  return sums;
}

// Row cache shared by the exact evaluators. Sweeps revisit the same (a, d)
// with many offsets r; one walk yields every column.
inline std::vector<Int> sum_row_cached(std::uint64_t a, std::uint64_t d) {
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<Int>> cache;
  static std::mutex mutex;
  constexpr std::size_t kMaxEntries = 4096;
  if (a > 100000) return sum_row_walk(a, d);  // too big to be worth keeping
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(a, d);
  auto it = cache.find(key);
  if (it == cache.end()) {
    if (cache.size() >= kMaxEntries) cache.clear();
    it = cache.emplace(key, sum_row_walk(a, d)).first;
  }
  return it->second;
}

}  // namespace detail

// Exact value of S(a,d,r). This is the reference oracle for every other
// evaluator in the library.
inline Int sum_brute(const SumSpec& spec) {
  std::uint64_t r = normalize_offset(spec.r, spec.d);
  return detail::sum_row_cached(spec.a, spec.d)[r];
}

// E(q,k,s) = 1 + (q-1) * sum of C(s*p^k, b(q-1)) over 0 <= b(q-1) < s*p^k.
// The summation bound is strict; the inclusive variant differs by the single
// term C(a, a) = 1 exactly when q-1 divides s*p^k.
inline Int carlitz_expression(std::uint64_t q, unsigned k, std::uint64_t s) {
  PrimePower pp = prime_power(q);
  if (s == 0) throw precondition_error("s must be >= 1");
  auto pk = detail::checked_pow_u64(pp.p, k);
  if (!pk || *pk > UINT64_MAX / s)
    throw precondition_error("s * p^k too large");
  std::uint64_t a = s * *pk;
  std::uint64_t d = q - 1;  // d = 1 when q = 2
  Int strict = detail::sum_row_cached(a, d)[0];
  if (a % d == 0) strict -= 1;  // drop the c = a term
  return 1 + Int(d) * strict;
}

}  // namespace binsum
