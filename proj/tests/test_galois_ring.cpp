#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include <binsum/galois_ring.hpp>

using namespace binsum;

namespace {

// idx |-> element, enumerating all coefficient tuples of the ring.
GrElement element_by_index(const GrContextPtr& ctx, std::uint64_t idx) {
  std::uint64_t m = static_cast<std::uint64_t>(ctx->modulus());
  std::vector<Int> c(ctx->f());
  for (unsigned i = 0; i < ctx->f(); ++i) {
    c[i] = Int(idx % m);
    idx /= m;
  }
  return ctx->element(std::move(c));
}

std::uint64_t ring_size(const GrContextPtr& ctx) {
  std::uint64_t m = static_cast<std::uint64_t>(ctx->modulus());
  std::uint64_t n = 1;
  for (unsigned i = 0; i < ctx->f(); ++i) n *= m;
  return n;
}

// smallest h >= k with f | h+k
unsigned matching_exponent(unsigned k, unsigned f) {
  return k + (f - (2 * k) % f) % f;
}

}  // namespace

TEST_CASE("make_context selects the first irreducible modulus polynomial") {
  auto z25 = GrContext::make(5, 1, 1);
  CHECK(z25->modulus() == 25);
  CHECK(z25->q() == 5);
  CHECK(z25->modulus_poly_tail() == std::vector<Int>{0});  // h(x) = x

  auto f9 = GrContext::make(3, 2, 0);
  CHECK(f9->q() == 9);
  CHECK(f9->modulus_poly_tail() == std::vector<Int>{1, 0});  // x^2 + 1

  auto r8 = GrContext::make(2, 3, 2);
  CHECK(r8->q() == 8);
  CHECK(r8->modulus() == 8);
  CHECK(r8->modulus_poly_tail() == std::vector<Int>{1, 1, 0});  // x^3 + x + 1

  CHECK_THROWS_AS(GrContext::make(6, 1, 0), precondition_error);
  CHECK_THROWS_AS(GrContext::make(2, 0, 0), precondition_error);
}

TEST_CASE("ring arithmetic basics") {
  auto z25 = GrContext::make(5, 1, 1);
  CHECK(z25->from_int(2) * z25->from_int(3) == z25->from_int(6));
  CHECK(pow(z25->from_int(7), Int(0)) == z25->one());
  CHECK(pow(z25->from_int(7), Int(4)) == z25->one());  // 2401 = 96*25 + 1
  CHECK(z25->from_int(-1) == z25->from_int(24));
  CHECK(z25->from_int(11) + z25->from_int(19) == z25->from_int(5));
  CHECK(z25->from_int(3) - z25->from_int(7) == z25->from_int(21));

  auto f9 = GrContext::make(3, 2, 0);
  // x * x = -1 in F_9 with modulus x^2 + 1
  GrElement x = f9->element({Int(0), Int(1)});
  CHECK(x * x == f9->from_int(-1));

  CHECK_THROWS_AS(z25->from_int(1) + f9->from_int(1), precondition_error);
  CHECK_THROWS_AS(z25->element({Int(1), Int(2)}), precondition_error);
}

TEST_CASE("inv frozen values and Hensel lifting") {
  auto z25 = GrContext::make(5, 1, 1);
  CHECK(inv(z25->from_int(2)) == z25->from_int(13));
  CHECK(inv(z25->one()) == z25->one());
  CHECK_THROWS_AS(inv(z25->from_int(5)), precondition_error);
  CHECK_THROWS_AS(inv(z25->zero()), precondition_error);

  std::mt19937_64 rng(0x5eed0020);
  for (auto ctx : {GrContext::make(3, 2, 2), GrContext::make(2, 3, 3), GrContext::make(7, 1, 4)}) {
    for (int trial = 0; trial < 40; ++trial) {
      GrElement u = element_by_index(ctx, rng() % ring_size(ctx));
      if (!is_unit(u)) continue;
      CHECK(u * inv(u) == ctx->one());
    }
  }
}

TEST_CASE("teichmuller frozen values") {
  auto z25 = GrContext::make(5, 1, 1);
  CHECK(teichmuller(z25->from_int(2)) == z25->from_int(7));
  CHECK(teichmuller(z25->one()) == z25->one());
  auto z9 = GrContext::make(3, 1, 1);
  CHECK(teichmuller(z9->from_int(2)) == z9->from_int(8));
  CHECK(teichmuller(z9->zero()) == z9->zero());
}

TEST_CASE("teichmuller is idempotent and lands on q-th power fixed points") {
  std::mt19937_64 rng(0x5eed0021);
  for (auto ctx : {GrContext::make(2, 2, 2), GrContext::make(3, 2, 1), GrContext::make(5, 1, 3),
                   GrContext::make(7, 1, 1)}) {
    for (int trial = 0; trial < 60; ++trial) {
      GrElement x = element_by_index(ctx, rng() % ring_size(ctx));
      GrElement t = teichmuller(x);
      CHECK(pow(t, ctx->q()) == t);
      CHECK(teichmuller(t) == t);
      // t = x mod p, coefficientwise
      for (unsigned i = 0; i < ctx->f(); ++i) CHECK((t - x).coeffs[i] % ctx->p() == 0);
      if (is_unit(t)) CHECK(pow(t, ctx->q() - 1) == ctx->one());
    }
  }
}

TEST_CASE("teichmuller_generator frozen values and exact order") {
  auto z25 = GrContext::make(5, 1, 1);
  GrElement w4 = teichmuller_generator(z25, 4);
  CHECK(w4 * w4 == z25->from_int(-1));
  CHECK(w4 == z25->from_int(7));

  CHECK(teichmuller_generator(z25, 1) == z25->one());

  auto z9 = GrContext::make(3, 1, 1);
  CHECK(teichmuller_generator(z9, 2) == z9->from_int(8));

  CHECK_THROWS_AS(teichmuller_generator(z25, 3), precondition_error);

  for (auto ctx : {GrContext::make(2, 3, 1), GrContext::make(3, 2, 1), GrContext::make(5, 2, 0)}) {
    std::uint64_t qm1 = ctx->q_u64() - 1;
    for (std::uint64_t d = 1; d <= qm1; ++d) {
      if (qm1 % d != 0) continue;
      GrElement w = teichmuller_generator(ctx, d);
      CHECK(pow(w, Int(d)) == ctx->one());
      for (std::uint64_t e = 1; e < d; ++e)
        if (d % e == 0) CHECK(pow(w, Int(e)) != ctx->one());
    }
  }
}

TEST_CASE("unit_decompose splits units into Teichmuller times one-unit") {
  auto z25 = GrContext::make(5, 1, 1);
  auto [t7, w7] = unit_decompose(z25->from_int(7));
  CHECK(t7 == z25->from_int(7));
  CHECK(w7 == z25->one());

  auto [t6, w6] = unit_decompose(z25->from_int(6));
  CHECK(t6 * w6 == z25->from_int(6));
  CHECK((w6 - z25->one()).coeffs[0] % 5 == 0);

  auto [t1, w1] = unit_decompose(z25->one());
  CHECK(t1 == z25->one());
  CHECK(w1 == z25->one());

  CHECK_THROWS_AS(unit_decompose(z25->from_int(10)), precondition_error);

  std::mt19937_64 rng(0x5eed0022);
  for (auto ctx : {GrContext::make(2, 2, 3), GrContext::make(3, 2, 2)}) {
    for (int trial = 0; trial < 50; ++trial) {
      GrElement u = element_by_index(ctx, rng() % ring_size(ctx));
      if (!is_unit(u)) continue;
      auto [t, w] = unit_decompose(u);
      CHECK(t * w == u);
      CHECK(pow(t, ctx->q() - 1) == ctx->one());
      CHECK(valuation(w - ctx->one()) >= 1);
    }
  }
}

TEST_CASE("valuation frozen values") {
  auto z25 = GrContext::make(5, 1, 1);
  CHECK(valuation(z25->from_int(10)) == 1);
  CHECK(valuation(z25->zero()) == 2);  // k+1
  CHECK(valuation(z25->from_int(7)) == 0);
}

TEST_CASE("padic_log frozen values") {
  auto z25 = GrContext::make(5, 1, 1);
  CHECK(padic_log(z25->from_int(6)) == z25->from_int(5));
  CHECK(padic_log(z25->one()) == z25->zero());
  CHECK(padic_log(z25->from_int(11)) == z25->from_int(10));  // 11 = 6^2, log = 2*5
  CHECK_THROWS_AS(padic_log(z25->from_int(2)), precondition_error);

  auto z8 = GrContext::make(2, 1, 2);
  CHECK(padic_log(z8->from_int(5)) == z8->from_int(4));
  CHECK_THROWS_AS(padic_log(z8->from_int(3)), precondition_error);
}

TEST_CASE("padic_log is a homomorphism and an isometry on its domain") {
  std::mt19937_64 rng(0x5eed0023);
  for (auto ctx : {GrContext::make(3, 1, 3), GrContext::make(3, 2, 2), GrContext::make(5, 2, 1),
                   GrContext::make(2, 2, 3), GrContext::make(2, 1, 4)}) {
    std::uint64_t p = ctx->p();
    unsigned need = (p == 2) ? 2 : 1;
    std::vector<GrElement> domain;
    for (int trial = 0; trial < 400 && domain.size() < 40; ++trial) {
      GrElement x = element_by_index(ctx, rng() % ring_size(ctx));
      if (valuation(x - ctx->one()) >= need) domain.push_back(x);
    }
    for (std::size_t i = 0; i + 1 < domain.size(); i += 2) {
      const GrElement& u = domain[i];
      const GrElement& v = domain[i + 1];
      CHECK(padic_log(u * v) == padic_log(u) + padic_log(v));
    }
    for (const GrElement& u : domain)
      CHECK(valuation(padic_log(u)) == valuation(u - ctx->one()));
  }
}

TEST_CASE("reflection frozen values and domain") {
  auto z25 = GrContext::make(5, 1, 1);
  GrElement beta = reflection(z25->from_int(7), 1);  // (-8)^5 mod 25
  CHECK(beta == z25->from_int(7));
  CHECK(pow(beta, Int(4)) == z25->one());
  CHECK(beta != z25->from_int(-1));

  CHECK_THROWS_AS(reflection(z25->zero(), 1), precondition_error);
  CHECK_THROWS_AS(reflection(z25->from_int(-1), 1), precondition_error);
  CHECK_THROWS_AS(reflection(z25->from_int(2), 1), precondition_error);  // not Teichmuller

  auto z4 = GrContext::make(2, 2, 1);
  CHECK_THROWS_AS(reflection(z4->one(), 1), precondition_error);

  // With the power exponent below the ring precision the image can leave the
  // Teichmuller set: (-2)^1 = 7 in Z/9 is not a q-th power fixed point.
  auto z9 = GrContext::make(3, 1, 1);
  GrElement out = reflection(z9->one(), 0);
  CHECK(out == z9->from_int(7));
  CHECK(teichmuller(out) != out);
}

TEST_CASE("reflection at matching exponents is an involution") {
  for (auto ctx : {GrContext::make(3, 1, 1), GrContext::make(5, 1, 1), GrContext::make(3, 2, 0),
                   GrContext::make(2, 2, 1), GrContext::make(2, 3, 1), GrContext::make(7, 1, 2)}) {
    std::uint64_t q = ctx->q_u64();
    if (q == 2) continue;  // the excluded element is the whole set
    unsigned k = ctx->k();
    unsigned h = matching_exponent(k, ctx->f());
    GrElement omega = teichmuller_generator(ctx, q - 1);
    GrElement excluded = (ctx->p() == 2) ? ctx->one() : ctx->from_int(-1);
    for (std::uint64_t e = 0; e < q - 1; ++e) {
      GrElement alpha = pow(omega, Int(e));
      if (alpha == excluded) continue;
      GrElement beta = reflection(alpha, k);
      CHECK(pow(beta, ctx->q()) == beta);  // stays Teichmuller
      CHECK(beta != excluded);
      CHECK(reflection(beta, h) == alpha);
    }
  }
}

TEST_CASE("unit count of small rings is (q-1) q^k by exhaustion") {
  struct Case {
    std::uint64_t p;
    unsigned f, k;
  };
  for (auto [p, f, k] : {Case{2, 1, 2}, Case{2, 2, 1}, Case{3, 1, 1}, Case{3, 2, 0},
                         Case{5, 1, 1}, Case{2, 3, 1}}) {
    auto ctx = GrContext::make(p, f, k);
    std::uint64_t units = 0;
    for (std::uint64_t i = 0; i < ring_size(ctx); ++i)
      if (is_unit(element_by_index(ctx, i))) ++units;
    std::uint64_t expected = (ctx->q_u64() - 1);
    for (unsigned i = 0; i < k; ++i) expected *= ctx->q_u64();
    CAPTURE(p, f, k);
    CHECK(units == expected);
  }
}

TEST_CASE("one-unit exponents match the unit-group structure") {
  struct Case {
    std::uint64_t p;
    unsigned f, k;
  };
  for (auto [p, f, k] : {Case{3, 1, 2}, Case{5, 1, 2}, Case{3, 2, 1}, Case{7, 1, 1},
                         Case{2, 1, 3}, Case{2, 1, 4}, Case{2, 2, 2}, Case{2, 3, 1}}) {
    auto ctx = GrContext::make(p, f, k);
    // enumerate the one-units 1 + p*x
    std::set<std::vector<Int>> seen;
    std::vector<GrElement> one_units;
    for (std::uint64_t i = 0; i < ring_size(ctx); ++i) {
      GrElement w = ctx->one() + ctx->from_int(p) * element_by_index(ctx, i);
      if (seen.insert(w.coeffs).second) one_units.push_back(w);
    }
    std::uint64_t expected_count = 1;
    for (unsigned i = 0; i < k; ++i) expected_count *= ctx->q_u64();
    REQUIRE(one_units.size() == expected_count);

    unsigned exp_exponent;  // log_p of the group exponent
    if (p != 2)
      exp_exponent = k;
    else if (ctx->q_u64() == 2)
      exp_exponent = (k == 0) ? 0 : k - 1;
    else
      exp_exponent = k;
    Int bound = pow_int(Int(p), exp_exponent);
    bool attained = false;
    for (const auto& w : one_units) {
      CAPTURE(p, f, k);
      REQUIRE(pow(w, bound) == ctx->one());
      if (exp_exponent > 0 && pow(w, bound / p) != ctx->one()) attained = true;
    }
    if (exp_exponent > 0) CHECK(attained);
  }
}

TEST_CASE("power congruence: (1+t)^n = 1 + nt to the expected depth") {
  std::mt19937_64 rng(0x5eed0024);
  for (auto ctx : {GrContext::make(3, 1, 3), GrContext::make(5, 2, 1), GrContext::make(2, 2, 3),
                   GrContext::make(2, 1, 4)}) {
    std::uint64_t p = ctx->p();
    unsigned min_val = (p == 2) ? 2 : 1;
    int found = 0;
    for (int trial = 0; trial < 500 && found < 60; ++trial) {
      GrElement t = element_by_index(ctx, rng() % ring_size(ctx));
      if (valuation(t) < min_val || valuation(t) > ctx->k()) continue;
      ++found;
      std::uint64_t n = 1 + rng() % 1000;
      GrElement lhs = pow(ctx->one() + t, Int(n)) - ctx->one() - ctx->from_int(n) * t;
      unsigned predicted = 1 + valuation_u64(n, p) + valuation(t);
      unsigned cap = ctx->k() + 1;
      CAPTURE(p, ctx->f(), ctx->k(), n);
      REQUIRE(valuation(lhs) >= std::min(predicted, cap));
    }
    REQUIRE(found > 0);
  }
}
