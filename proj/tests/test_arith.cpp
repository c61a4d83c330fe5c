#include <doctest.h>

#include "rfg/arith.hpp"
#include "rfg/errors.hpp"
#include "rfg/rng.hpp"

using namespace rfg;
using namespace rfg::arith;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

} // namespace

TEST_CASE("factorize small values") {
  CHECK(factorize(12) == Factorization({{2, 2}, {3, 1}}));
  CHECK(factorize(1).empty());
  CHECK(factorize(97) == Factorization({{97, 1}}));
  CHECK_THROWS_AS(factorize(0), DomainError);
  CHECK_THROWS_AS(factorize(-5), DomainError);
  CHECK_THROWS_AS(factorize(primality_bound() * 2), DomainError);
}

TEST_CASE("factorize round-trips random inputs up to 1e18") {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t n = 1 + rng.below(1'000'000'000'000'000'000ULL);
    const BigInt bn = static_cast<unsigned long>(n);
    const auto f = factorize(bn);
    CHECK(f.value() == bn);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(is_prime(f.factors()[i].prime));
      CHECK(f.factors()[i].exponent >= 1);
      if (i > 0)
        CHECK(f.factors()[i - 1].prime < f.factors()[i].prime);
    }
  }
  // semiprime with two large factors exercises Pollard-Brent
  const BigInt p("1000000007"), q("998244353");
  CHECK(factorize(p * q) == Factorization({{q, 1}, {p, 1}}));
}

TEST_CASE("primality agrees with trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n)
    REQUIRE(is_prime(n) == trial_prime(n));
  CHECK(is_prime(BigInt("1000000000000000003")));
  CHECK_FALSE(is_prime(BigInt("1000000000000000001")));
  // strong pseudoprime to bases 2..37 except the last witnesses
  CHECK_FALSE(is_prime(BigInt("3825123056546413051")));
}

TEST_CASE("lcm valuations") {
  CHECK(lcm_valuation(6, 2) == 2);
  CHECK(lcm_valuation(10, 3) == 2);
  CHECK(lcm_valuation(5, 7) == 0);
  for (unsigned k = 1; k <= 30; ++k) {
    BigInt l = 1;
    for (unsigned j = 1; j <= k; ++j)
      mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), j);
    CHECK(lcm_upto(k) == l);
    for (std::uint64_t p : primes_up_to(40)) {
      const unsigned v = lcm_valuation(k, p);
      CHECK(ipow(p, v) <= k);
      CHECK(ipow(p, v + 1) > k);
      CHECK(mpz_divisible_ui_p(l.get_mpz_t(), ipow(p, v)));
      CHECK_FALSE(mpz_divisible_ui_p(l.get_mpz_t(), ipow(p, v + 1)));
    }
  }
}

TEST_CASE("least non-divisor") {
  CHECK(least_nondivisor(12) == 5);
  CHECK(least_nondivisor(60) == 7);
  CHECK(least_nondivisor(1) == 2);
  BigInt l = 1;
  for (unsigned k = 1; k <= 200; ++k) {
    mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), k);
    CHECK(least_nondivisor(l) > k);
  }
  Rng rng(5);
  for (int t = 0; t < 2000; ++t) {
    const std::uint64_t m = 1 + rng.below(1'000'000'000'000ULL);
    const std::uint64_t d = least_nondivisor(BigInt(static_cast<unsigned long>(m)));
    CHECK(m % d != 0);
    for (std::uint64_t e = 2; e < d; ++e)
      CHECK(m % e == 0);
    CHECK(as_prime_power(d).has_value());
  }
}

TEST_CASE("prime powers above k") {
  auto values = [](std::uint64_t k, std::uint64_t limit) {
    std::vector<std::uint64_t> v;
    for (const auto &e : prime_powers_above(k, limit)) {
      CHECK(ipow(e.prime, e.exponent) == e.value);
      v.push_back(e.value);
    }
    return v;
  };
  CHECK(values(6, 12) == std::vector<std::uint64_t>{7, 8, 9, 11});
  CHECK(values(1, 5) == std::vector<std::uint64_t>{2, 3, 4, 5});
  CHECK(values(4, 5) == std::vector<std::uint64_t>{5});
  // exactly the prime powers not dividing lcm(1..k)
  for (std::uint64_t k = 1; k <= 30; ++k) {
    const BigInt l = lcm_upto(static_cast<unsigned>(k));
    std::vector<std::uint64_t> expected;
    for (std::uint64_t q = 2; q <= 100; ++q)
      if (as_prime_power(q) && !mpz_divisible_ui_p(l.get_mpz_t(), q))
        expected.push_back(q);
    CHECK(values(k, 100) == expected);
  }
}

TEST_CASE("modular helpers") {
  CHECK(invmod(3, 7) == 5);
  CHECK_THROWS_AS(invmod(6, 9), DomainError);
  CHECK(powmod(2, 10, 1000) == 24);
  CHECK(as_prime_power(1) == std::nullopt);
  CHECK(as_prime_power(12) == std::nullopt);
  CHECK(as_prime_power(128) == std::make_optional(std::pair<std::uint64_t, unsigned>{2, 7}));
  CHECK(mod_u64(BigInt(-7), 5) == 3);
}

TEST_CASE("determinant") {
  CHECK(determinant({BigInt(2), BigInt(1), BigInt(1), BigInt(1)}, 2) == 1);
  CHECK(determinant({BigInt(0), BigInt(1), BigInt(1), BigInt(0)}, 2) == -1);
  // needs a pivot swap
  CHECK(determinant({0, 2, 1, 1, 0, 3, 4, 5, 6}, 3) == 17);
  CHECK(determinant({1, 2, 2, 4}, 2) == 0);
}
