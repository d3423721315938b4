#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include <binsum/binomial.hpp>

using namespace binsum;

namespace {

// Independent oracle: Pascal's recurrence, no multiplicative shortcuts.
std::vector<Int> pascal_row(std::uint64_t a) {
  std::vector<Int> row{Int(1)};
  for (std::uint64_t n = 1; n <= a; ++n) {
    std::vector<Int> next(n + 1, Int(1));
    for (std::uint64_t c = 1; c < n; ++c) next[c] = row[c - 1] + row[c];
    row = std::move(next);
  }
  return row;
}

Int pascal_column_sum(std::uint64_t a, std::uint64_t d, std::int64_t r) {
  auto row = pascal_row(a);
  std::uint64_t rh = normalize_offset(r, d);
  Int total = 0;
  for (std::uint64_t c = rh; c <= a; c += d) total += row[c];
  return total;
}

}  // namespace

TEST_CASE("binom frozen values") {
  CHECK(binom(7, 2) == 21);
  CHECK(binom(5, -1) == 0);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(5, 6) == 0);
  CHECK(binom(10, 3) == binom(10, 7));
  CHECK(binom(52, 5) == 2598960);
}

TEST_CASE("binom matches the Pascal recurrence") {
  for (std::uint64_t a = 0; a <= 40; ++a) {
    auto row = pascal_row(a);
    for (std::uint64_t c = 0; c <= a; ++c)
      REQUIRE(binom(a, static_cast<std::int64_t>(c)) == row[c]);
    REQUIRE(binom(a, -3) == 0);
    REQUIRE(binom(a, static_cast<std::int64_t>(a) + 1) == 0);
  }
}

TEST_CASE("sum_brute frozen values") {
  CHECK(sum_brute({5, 1, 0}) == 32);
  CHECK(sum_brute({4, 2, 0}) == 8);
  CHECK(sum_brute({7, 4, 2}) == 28);
  CHECK(sum_brute({0, 3, 0}) == 1);
}

TEST_CASE("sum_brute matches the Pascal oracle on random tuples") {
  std::mt19937_64 rng(0x5eed0001);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t a = rng() % 121;
    std::uint64_t d = 1 + rng() % 15;
    std::int64_t r = static_cast<std::int64_t>(rng() % 61) - 30;
    CAPTURE(a, d, r);
    REQUIRE(sum_brute({a, d, r}) == pascal_column_sum(a, d, r));
  }
}

TEST_CASE("sum_brute depends on r only mod d") {
  std::mt19937_64 rng(0x5eed0002);
  for (int trial = 0; trial < 50; ++trial) {
    std::uint64_t a = rng() % 100;
    std::uint64_t d = 1 + rng() % 12;
    std::int64_t r = static_cast<std::int64_t>(rng() % 25) - 12;
    std::int64_t shift = (static_cast<std::int64_t>(rng() % 7) - 3) * static_cast<std::int64_t>(d);
    REQUIRE(sum_brute({a, d, r}) == sum_brute({a, d, r + shift}));
  }
}

TEST_CASE("full rows sum to 2^a") {
  for (std::uint64_t a : {0ull, 1ull, 5ull, 23ull, 64ull, 120ull}) {
    for (std::uint64_t d : {1ull, 2ull, 3ull, 7ull, 12ull}) {
      Int total = 0;
      for (std::uint64_t r = 0; r < d; ++r)
        total += sum_brute({a, d, static_cast<std::int64_t>(r)});
      REQUIRE(total == pow_int(Int(2), a));
    }
  }
}

TEST_CASE("column sums decompose over divisors of q-1") {
  std::mt19937_64 rng(0x5eed0003);
  for (std::uint64_t q : {4ull, 5ull, 8ull, 9ull, 16ull, 25ull, 27ull}) {
    for (std::uint64_t d = 1; d <= q - 1; ++d) {
      if ((q - 1) % d != 0) continue;
      for (int trial = 0; trial < 8; ++trial) {
        std::uint64_t a = rng() % 101;
        std::int64_t r = static_cast<std::int64_t>(rng() % (2 * d + 1)) - static_cast<std::int64_t>(d);
        Int direct = sum_brute({a, d, r});
        Int split = 0;
        for (std::uint64_t j = 1; j <= (q - 1) / d; ++j)
          split += sum_brute({a, q - 1, r + static_cast<std::int64_t>(j * d)});
        CAPTURE(q, d, a, r);
        REQUIRE(direct == split);
      }
    }
  }
}

TEST_CASE("carlitz_expression frozen values") {
  CHECK(carlitz_expression(3, 1, 1) == 9);
  CHECK(carlitz_expression(5, 1, 1) == 25);
  CHECK(carlitz_expression(2, 3, 1) == 256);
}

TEST_CASE("carlitz_expression: inclusive sum exceeds the strict sum by one "
          "exactly when q-1 divides a") {
  std::mt19937_64 rng(0x5eed0004);
  for (int trial = 0; trial < 60; ++trial) {
    std::uint64_t q = std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9}[rng() % 7];
    unsigned k = static_cast<unsigned>(rng() % 3);
    std::uint64_t s = 1 + rng() % 12;
    PrimePower pp = prime_power(q);
    std::uint64_t a = s;
    for (unsigned i = 0; i < k; ++i) a *= pp.p;
    if (a > 300) continue;
    Int expr = carlitz_expression(q, k, s);
    Int strict = (expr - 1) / Int(q - 1);
    Int inclusive = sum_brute({a, q - 1, 0});
    CAPTURE(q, k, s);
    REQUIRE(inclusive - strict == (a % (q - 1) == 0 ? 1 : 0));
  }
}

TEST_CASE("carlitz_expression rejects invalid q") {
  CHECK_THROWS_AS(carlitz_expression(6, 0, 1), precondition_error);
  CHECK_THROWS_AS(carlitz_expression(1, 0, 1), precondition_error);
  CHECK_THROWS_AS(carlitz_expression(12, 1, 2), precondition_error);
  CHECK_THROWS_AS(carlitz_expression(5, 0, 0), precondition_error);
}
