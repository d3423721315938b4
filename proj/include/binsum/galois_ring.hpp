#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <ostream>
#include <utility>
#include <vector>

#include "binsum/integers.hpp"

namespace binsum {

class GrContext;
using GrContextPtr = std::shared_ptr<const GrContext>;

// Residue of Z[x]/(p^(k+1), h(x)): exactly f coefficients, each canonical in
// [0, p^(k+1)). The element is a unit iff not all coefficients are divisible
// by p.
struct GrElement {
  GrContextPtr ctx;
  std::vector<Int> coeffs;

  bool operator==(const GrElement& other) const;
  bool operator!=(const GrElement& other) const { return !(*this == other); }
};

namespace detail {

// --- dense polynomial helpers over F_p, word coefficients, degree small ---

inline void poly_trim(std::vector<std::uint64_t>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

inline std::vector<std::uint64_t> poly_mul_fp(const std::vector<std::uint64_t>& x,
                                              const std::vector<std::uint64_t>& y,
                                              std::uint64_t p) {
  if (x.empty() || y.empty()) return {};
  std::vector<std::uint64_t> out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      out[i + j] = (out[i + j] + mulmod_u64(x[i], y[j], p)) % p;
  poly_trim(out);
  return out;
}

// Remainder of num by monic-or-not den over F_p. den nonzero.
inline std::vector<std::uint64_t> poly_rem_fp(std::vector<std::uint64_t> num,
                                              const std::vector<std::uint64_t>& den,
                                              std::uint64_t p) {
  poly_trim(num);
  std::size_t dd = den.size() - 1;
  std::uint64_t lc_inv = powmod_u64(den.back(), p - 2, p);
  while (num.size() >= den.size()) {
    std::uint64_t coef = mulmod_u64(num.back(), lc_inv, p);
    std::size_t shift = num.size() - den.size();
    for (std::size_t i = 0; i <= dd; ++i) {
      std::uint64_t sub = mulmod_u64(coef, den[i], p);
      num[shift + i] = (num[shift + i] + p - sub) % p;
    }
    poly_trim(num);
  }
  return num;
}

// Inverse of u modulo the irreducible h over F_p (extended Euclid).
inline std::vector<std::uint64_t> poly_inv_mod_fp(std::vector<std::uint64_t> u,
                                                  std::vector<std::uint64_t> h,
                                                  std::uint64_t p) {
  poly_trim(u);
  poly_trim(h);
  std::vector<std::uint64_t> r0 = h, r1 = u;
  std::vector<std::uint64_t> s0 = {}, s1 = {1};
  while (!r1.empty()) {
    // long division r0 = q*r1 + r
    std::vector<std::uint64_t> q;
    std::vector<std::uint64_t> rem = r0;
    poly_trim(rem);
    std::uint64_t lc_inv = powmod_u64(r1.back(), p - 2, p);
    q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      std::uint64_t coef = mulmod_u64(rem.back(), lc_inv, p);
      std::size_t shift = rem.size() - r1.size();
      q[shift] = coef;
      for (std::size_t i = 0; i < r1.size(); ++i) {
        std::uint64_t sub = mulmod_u64(coef, r1[i], p);
        rem[shift + i] = (rem[shift + i] + p - sub) % p;
      }
      poly_trim(rem);
    }
    // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
    std::vector<std::uint64_t> qs = poly_mul_fp(q, s1, p);
    std::vector<std::uint64_t> s2(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = (s2[i] + p - qs[i]) % p;
    poly_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw internal_error("poly_inv_mod_fp: inputs not coprime");
  std::uint64_t scale = powmod_u64(r0[0], p - 2, p);
  for (auto& c : s0) c = mulmod_u64(c, scale, p);
  return poly_rem_fp(std::move(s0), h, p);
}

inline bool poly_irreducible_fp(const std::vector<std::uint64_t>& h, std::uint64_t p) {
  std::size_t f = h.size() - 1;
  if (f == 0) return false;
  if (f == 1) return true;
  // trial division by every monic polynomial of degree 1..f/2
  for (std::size_t e = 1; 2 * e <= f; ++e) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < e; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      std::vector<std::uint64_t> g(e + 1, 0);
      std::uint64_t t = n;
      for (std::size_t i = 0; i < e; ++i) {
        g[i] = t % p;
        t /= p;
      }
      g[e] = 1;
      if (poly_rem_fp(h, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

// Parameters of the Galois ring GR(p^(k+1), f): prime p, degree f, precision
// exponent k (modulus p^(k+1)), and a monic degree-f modulus polynomial h
// chosen deterministically (first irreducible mod p in lexicographic order of
// coefficient tuples, constant term varying fastest; for f = 1 this yields
// h(x) = x, i.e. the integers modulo p^(k+1)). Contexts are immutable and
// shared by pointer; all operations are pure.
class GrContext : public std::enable_shared_from_this<GrContext> {
 public:
  static GrContextPtr make(std::uint64_t p, unsigned f, unsigned k) {
    if (!is_prime(p)) throw precondition_error("p must be prime");
    if (f == 0) throw precondition_error("f must be >= 1");
    auto q = detail::checked_pow_u64(p, f);
    if (!q) throw precondition_error("q = p^f too large");
    std::vector<Int> tail = find_modulus_poly(p, f);
    return GrContextPtr(new GrContext(p, f, k, std::move(tail)));
  }

  // Same p, f and modulus polynomial at a different precision exponent.
  static GrContextPtr at_precision(const GrContext& base, unsigned k) {
    return GrContextPtr(new GrContext(base.p_, base.f_, k, base.h_tail_));
  }

  std::uint64_t p() const { return p_; }
  unsigned f() const { return f_; }
  unsigned k() const { return k_; }
  const Int& q() const { return q_; }
  std::uint64_t q_u64() const { return q_u64_; }
  const Int& modulus() const { return m_; }
  // h = x^f + h_tail[f-1] x^(f-1) + ... + h_tail[0]
  const std::vector<Int>& modulus_poly_tail() const { return h_tail_; }

  bool same_ring(const GrContext& o) const {
    return p_ == o.p_ && f_ == o.f_ && k_ == o.k_ && h_tail_ == o.h_tail_;
  }

  GrElement zero() const { return element(std::vector<Int>(f_, Int(0))); }

  GrElement one() const {
    std::vector<Int> c(f_, Int(0));
    c[0] = mod_canon(Int(1), m_);
    return element(std::move(c));
  }

  GrElement from_int(const Int& v) const {
    std::vector<Int> c(f_, Int(0));
    c[0] = mod_canon(v, m_);
    return element(std::move(c));
  }

  GrElement element(std::vector<Int> coeffs) const;

 private:
  GrContext(std::uint64_t p, unsigned f, unsigned k, std::vector<Int> h_tail)
      : p_(p),
        f_(f),
        k_(k),
        q_(pow_int(Int(p), f)),
        q_u64_(*detail::checked_pow_u64(p, f)),
        m_(pow_int(Int(p), k + 1)),
        h_tail_(std::move(h_tail)) {}

  static std::vector<Int> find_modulus_poly(std::uint64_t p, unsigned f) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < f; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      std::vector<std::uint64_t> h(f + 1, 0);
      std::uint64_t t = n;
      for (unsigned i = 0; i < f; ++i) {
        h[i] = t % p;
        t /= p;
      }
      h[f] = 1;
      if (detail::poly_irreducible_fp(h, p)) {
        std::vector<Int> tail(f);
        for (unsigned i = 0; i < f; ++i) tail[i] = Int(h[i]);
        return tail;
      }
    }
    throw internal_error("no irreducible polynomial found");  // unreachable
  }

  std::uint64_t p_;
  unsigned f_;
  unsigned k_;
  Int q_;
  std::uint64_t q_u64_;
  Int m_;
  std::vector<Int> h_tail_;
};

inline GrElement GrContext::element(std::vector<Int> coeffs) const {
  if (coeffs.size() != f_)
    throw precondition_error("context mismatch: expected f coefficients");
  for (auto& c : coeffs) c = mod_canon(c, m_);
  return GrElement{shared_from_this(), std::move(coeffs)};
}

namespace detail {

inline void require_same_ring(const GrElement& a, const GrElement& b) {
  if (!a.ctx || !b.ctx || !a.ctx->same_ring(*b.ctx))
    throw precondition_error("context mismatch");
}

// Reduce a product polynomial (length <= 2f-1) by the monic modulus h, then
// canonicalize coefficients.
inline std::vector<Int> gr_reduce(std::vector<Int> prod, const GrContext& R) {
  const auto& tail = R.modulus_poly_tail();
  unsigned f = R.f();
  for (std::size_t i = prod.size(); i-- > f;) {
    Int c = prod[i] % R.modulus();
    prod[i] = 0;
    if (c == 0) continue;
    for (unsigned j = 0; j < f; ++j) prod[i - f + j] -= c * tail[j];
  }
  prod.resize(f);
  for (auto& c : prod) c = mod_canon(c, R.modulus());
  return prod;
}

}  // namespace detail

inline bool GrElement::operator==(const GrElement& other) const {
  return ctx && other.ctx && ctx->same_ring(*other.ctx) && coeffs == other.coeffs;
}

inline GrElement operator+(const GrElement& a, const GrElement& b) {
  detail::require_same_ring(a, b);
  std::vector<Int> c(a.coeffs);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] += b.coeffs[i];
    if (c[i] >= a.ctx->modulus()) c[i] -= a.ctx->modulus();
  }
  return GrElement{a.ctx, std::move(c)};
}

inline GrElement operator-(const GrElement& a, const GrElement& b) {
  detail::require_same_ring(a, b);
  std::vector<Int> c(a.coeffs);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] -= b.coeffs[i];
    if (c[i] < 0) c[i] += a.ctx->modulus();
  }
  return GrElement{a.ctx, std::move(c)};
}

inline GrElement operator-(const GrElement& a) {
  std::vector<Int> c(a.coeffs);
  for (auto& x : c)
    if (x != 0) x = a.ctx->modulus() - x;
  return GrElement{a.ctx, std::move(c)};
}

inline GrElement operator*(const GrElement& a, const GrElement& b) {
  detail::require_same_ring(a, b);
  unsigned f = a.ctx->f();
  std::vector<Int> prod(2 * f - 1, Int(0));
  for (unsigned i = 0; i < f; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (unsigned j = 0; j < f; ++j) prod[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return GrElement{a.ctx, detail::gr_reduce(std::move(prod), *a.ctx)};
}

// x^e by binary exponentiation, e >= 0.
inline GrElement pow(const GrElement& x, const Int& e) {
  if (e < 0) throw precondition_error("exponent must be nonnegative");
  GrElement result = x.ctx->one();
  GrElement base = x;
  Int exp = e;
  while (exp != 0) {
    if (bit_test(exp, 0)) result = result * base;
    base = base * base;
    exp >>= 1;
  }
  return result;
}

inline bool is_unit(const GrElement& x) {
  for (const auto& c : x.coeffs)
    if (c % x.ctx->p() != 0) return true;
  return false;
}

// Largest m <= k+1 such that p^m divides every coefficient; k+1 for zero.
inline unsigned valuation(const GrElement& x) {
  unsigned kk = x.ctx->k();
  Int pw = x.ctx->p();
  unsigned v = 0;
  while (v < kk + 1) {
    bool all = true;
    for (const auto& c : x.coeffs)
      if (c % pw != 0) {
        all = false;
        break;
      }
    if (!all) break;
    ++v;
    pw *= x.ctx->p();
  }
  return v;
}

// Multiplicative inverse: invert in the residue field, then Hensel-lift
// (v <- v(2 - uv), doubling precision each step).
inline GrElement inv(const GrElement& u) {
  if (!is_unit(u)) throw precondition_error("inverse of a non-unit");
  const GrContext& R = *u.ctx;
  std::uint64_t p = R.p();
  std::vector<std::uint64_t> ubar(R.f());
  for (unsigned i = 0; i < R.f(); ++i) ubar[i] = static_cast<std::uint64_t>(u.coeffs[i] % p);
  std::vector<std::uint64_t> hbar(R.f() + 1);
  for (unsigned i = 0; i < R.f(); ++i)
    hbar[i] = static_cast<std::uint64_t>(R.modulus_poly_tail()[i] % p);
  hbar[R.f()] = 1;
  std::vector<std::uint64_t> s = detail::poly_inv_mod_fp(ubar, hbar, p);
  std::vector<Int> vc(R.f(), Int(0));
  for (std::size_t i = 0; i < s.size(); ++i) vc[i] = Int(s[i]);
  GrElement v = R.element(std::move(vc));
  GrElement one = R.one();
  GrElement two = R.from_int(2);
  for (int iter = 0; iter < 64; ++iter) {
    GrElement uv = u * v;
    if (uv == one) return v;
    v = v * (two - uv);
  }
  throw internal_error("Hensel lifting did not converge");
}

// The unique t with t^q = t and t = x mod p, by iterated q-th powering
// (k+1 iterations always suffice). teichmuller(0) = 0; nonzero values of a
// unit argument have multiplicative order dividing q-1.
inline GrElement teichmuller(const GrElement& x) {
  GrElement y = x;
  for (unsigned i = 0; i <= x.ctx->k(); ++i) y = pow(y, x.ctx->q());
  return y;
}

// An element of exact multiplicative order d, where d | q-1: the Teichmuller
// lift of the first residue-field generator (in the deterministic coefficient
// enumeration), raised to (q-1)/d.
inline GrElement teichmuller_generator(const GrContextPtr& ctx, std::uint64_t d) {
  std::uint64_t q = ctx->q_u64();
  if (d == 0 || (q - 1) % d != 0)
    throw precondition_error("d must divide q-1");
  auto factors = factor_u64(q - 1);
  std::uint64_t p = ctx->p();
  for (std::uint64_t n = 1; n <= q - 1; ++n) {
    std::vector<Int> c(ctx->f(), Int(0));
    std::uint64_t t = n;
    for (unsigned i = 0; i < ctx->f(); ++i) {
      c[i] = Int(t % p);
      t /= p;
    }
    GrElement cand = teichmuller(ctx->element(std::move(c)));
    bool generator = true;
    for (const auto& [ell, e] : factors) {
      if (pow(cand, Int((q - 1) / ell)) == ctx->one()) {
        generator = false;
        break;
      }
    }
    if (generator) return pow(cand, Int((q - 1) / d));
  }
  throw internal_error("no generator of the residue-field unit group found");
}

// u = t * w with t = teichmuller(u) (t^(q-1) = 1) and w = 1 mod p.
inline std::pair<GrElement, GrElement> unit_decompose(const GrElement& u) {
  if (!is_unit(u)) throw precondition_error("unit_decompose of a non-unit");
  GrElement t = teichmuller(u);
  GrElement w = u * inv(t);
  return {std::move(t), std::move(w)};
}

namespace detail {

inline unsigned ilog_u64(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n >= p) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace detail

// Truncated p-adic logarithm: sum_{j>=1} (-1)^(j-1) (u-1)^j / j to precision
// p^(k+1). Domain: u = 1 mod p for odd p, u = 1 mod 4 for p = 2. The series
// is cut at the largest J with J - floor(log_p J) <= k; terms are divided
// exactly in an extended-precision copy of the ring (modulus p^(k+1+E) with
// E = floor(log_p J)), then the result is truncated back.
inline GrElement padic_log(const GrElement& u) {
  const GrContext& R = *u.ctx;
  std::uint64_t p = R.p();
  GrElement gamma_base = u - R.one();
  unsigned need = (p == 2) ? 2 : 1;
  if (valuation(gamma_base) < std::min(need, R.k() + 1))
    throw precondition_error(p == 2 ? "padic_log requires u = 1 mod 4"
                                    : "padic_log requires u = 1 mod p");
  unsigned k = R.k();
  std::uint64_t J = 0;
  for (std::uint64_t j = 1;; ++j) {
    if (j - detail::ilog_u64(j, p) > k) break;
    J = j;
  }
  if (J == 0) return R.zero();
  unsigned E = detail::ilog_u64(J, p);
  GrContextPtr ext = GrContext::at_precision(R, k + E);
  GrElement gamma = ext->element(gamma_base.coeffs);
  GrElement acc = ext->zero();
  GrElement gp = ext->one();
  for (std::uint64_t j = 1; j <= J; ++j) {
    gp = gp * gamma;
    unsigned v = valuation_u64(j, p);
    Int pv = pow_int(Int(p), v);
    std::uint64_t uprime = j;
    for (unsigned i = 0; i < v; ++i) uprime /= p;
    Int uinv = mod_inverse(Int(uprime), ext->modulus());
    std::vector<Int> tc(ext->f());
    for (unsigned i = 0; i < ext->f(); ++i) {
      if (gp.coeffs[i] % pv != 0)
        throw internal_error("padic_log: inexact division by p^v");
      tc[i] = mod_canon(gp.coeffs[i] / pv * uinv, ext->modulus());
    }
    GrElement term = ext->element(std::move(tc));
    acc = (j % 2 == 1) ? acc + term : acc - term;
  }
  std::vector<Int> out(R.f());
  for (unsigned i = 0; i < R.f(); ++i) out[i] = mod_canon(acc.coeffs[i], R.modulus());
  return R.element(std::move(out));
}

// (-1 - alpha)^(p^k_exp) for a Teichmuller element alpha, excluding -1 for
// odd p and 1 for p = 2. With k_exp matching the ring precision exponent this
// permutes the nonzero Teichmuller elements minus the excluded one.
inline GrElement reflection(const GrElement& alpha, unsigned k_exp) {
  const GrContext& R = *alpha.ctx;
  if (!is_unit(alpha) || pow(alpha, R.q()) != alpha)
    throw precondition_error("reflection requires a Teichmuller unit");
  if (R.p() % 2 == 1 && alpha == R.from_int(-1))
    throw precondition_error("reflection excludes alpha = -1 for odd p");
  if (R.p() == 2 && alpha == R.one())
    throw precondition_error("reflection excludes alpha = 1 for p = 2");
  GrElement base = R.from_int(-1) - alpha;
  return pow(base, pow_int(Int(R.p()), k_exp));
}

inline std::ostream& operator<<(std::ostream& os, const GrElement& x) {
  os << "[";
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (i) os << ", ";
    os << x.coeffs[i];
  }
  return os << "] mod " << (x.ctx ? x.ctx->modulus().str() : std::string("?"));
}

}  // namespace binsum
