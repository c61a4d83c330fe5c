#include <doctest.h>

#include "rfg/errors.hpp"
#include "rfg/examples.hpp"
#include "rfg/rng.hpp"

using namespace rfg;
using namespace rfg::examples;

namespace {

LampElement random_lamp(Rng &rng) {
  LampElement a;
  const auto count = rng.below(5);
  for (std::uint64_t t = 0; t < count; ++t)
    a.support.insert(rng.between(-20, 20));
  a.shift = rng.between(-10, 10);
  return a;
}

SemidirectElement random_semidirect(Rng &rng) {
  return {rng.between(-50, 50), rng.between(-50, 50), static_cast<unsigned>(rng.below(8))};
}

// Smallest |Z^2 / L| over sublattices L not containing v, by Hermite forms.
std::uint64_t abelian_oracle_2d(std::int64_t x, std::int64_t y, std::uint64_t index_max) {
  std::uint64_t best = 0;
  for (std::int64_t a = 1; a <= static_cast<std::int64_t>(index_max); ++a)
    for (std::int64_t c = 1; a * c <= static_cast<std::int64_t>(index_max); ++c)
      for (std::int64_t b = 0; b < c; ++b) {
        // L spanned by (a, b), (0, c)
        const bool in = x % a == 0 && (y - (x / a) * b) % c == 0;
        if (!in && (best == 0 || static_cast<std::uint64_t>(a * c) < best))
          best = a * c;
      }
  return best;
}

} // namespace

TEST_CASE("lamplighter group law and folding") {
  Rng rng(11);
  const LampElement e;
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_lamp(rng), b = random_lamp(rng), c = random_lamp(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * inverse(a) == e);
    CHECK(inverse(a) * a == e);
    const std::uint64_t m = 2 + rng.below(19);
    CHECK(fold(a * b, m) == fold(a, m) * fold(b, m));
  }
  CHECK(LampElement::step() * LampElement::delta(0) * inverse(LampElement::step()) == LampElement::delta(1));
}

TEST_CASE("lamplighter candidate quotients") {
  CHECK(lamp_quotient_D(2) == QuotientWitness{3, 24, "lamplighter"});
  CHECK(lamp_quotient_D(4) == QuotientWitness{5, 160, "lamplighter"});
  CHECK(lamp_quotient_D(10) == QuotientWitness{11, 22528, "lamplighter"});
  for (unsigned k = 2; k <= 40; ++k)
    CHECK(lamp_family_D(lamp_candidate(k), 60) == lamp_quotient_D(k));
  // the literal candidate is caught by Z/2 wr Z/2
  for (unsigned k = 2; k <= 40; ++k) {
    CHECK(lamp_quotient_D(k, true) == QuotientWitness{2, 8, "lamplighter"});
    CHECK(lamp_family_D(lamp_candidate(k, true), 60) == lamp_quotient_D(k, true));
  }
  CHECK_THROWS_AS(lamp_quotient_D(1), DomainError);
  CHECK_THROWS_AS(lamp_family_D(LampElement{}, 10), Undetectable);
}

TEST_CASE("lamplighter injectivity certificate") {
  CHECK(lamp_injectivity_certificate(8, 11));
  CHECK(lamp_injectivity_certificate(12, 13));
  CHECK_THROWS_AS(lamp_injectivity_certificate(4, 2), DomainError);
  for (unsigned k = 2; k <= 64; ++k)
    CHECK(lamp_injectivity_certificate(k, lamp_quotient_D(k).modulus));
}

TEST_CASE("squared candidates are cheap to detect") {
  for (unsigned k = 4; k <= 40; ++k) {
    const auto g = lamp_candidate(k) * LampElement::step();
    const auto m = lamp_quotient_D(k);
    const auto sq = lamp_family_D(g * g, 60);
    CHECK(sq.order <= m.modulus);
    CHECK(sq.order < m.order);
  }
}

TEST_CASE("semidirect group law and quotients") {
  Rng rng(12);
  const SemidirectElement e;
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_semidirect(rng), b = random_semidirect(rng), c = random_semidirect(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * inverse(a) == e);
    const std::uint64_t d = 1 + rng.below(20);
    CHECK(quotient_image(a * b, d) == quotient_image(quotient_image(a, d) * quotient_image(b, d), d));
  }
  CHECK(q_group().size() == 8);
  CHECK(semidirect_quotient_D(4) == QuotientWitness{5, 200, "semidirect"});
  CHECK(semidirect_quotient_D(6) == QuotientWitness{7, 392, "semidirect"});
  CHECK(semidirect_quotient_D(2) == QuotientWitness{3, 72, "semidirect"});
  for (unsigned k = 2; k <= 20; ++k) {
    const SemidirectElement g{static_cast<std::int64_t>(arith::lcm_upto(k).get_si()), 0, 0};
    CHECK(semidirect_family_D(g, 30) == semidirect_quotient_D(k));
  }
  CHECK_THROWS_AS(semidirect_family_D(e, 30), Undetectable);
}

TEST_CASE("semidirect kernel structure") {
  for (std::uint64_t d : {1, 2, 5, 12}) {
    const auto ks = semidirect_kernel_structure_check(d);
    CHECK(ks.pass);
    CHECK(ks.lattices >= 1);
    CHECK(ks.max_index <= 4);
  }
}

TEST_CASE("abelian detection") {
  CHECK(abelian_D({6, 0}).order == 4);
  CHECK(abelian_D({1, 1}).order == 2);
  CHECK(abelian_D({12}).order == 5);
  CHECK_THROWS_AS(abelian_D({0, 0}), Undetectable);
  for (std::int64_t x = -12; x <= 12; ++x)
    for (std::int64_t y = -12; y <= 12; ++y)
      if (x || y)
        CHECK(abelian_D({x, y}).order == abelian_oracle_2d(x, y, 30));
}

TEST_CASE("certificate bounds for k <= 64") {
  for (unsigned k = 2; k <= 64; ++k) {
    const auto lamp = lamp_quotient_D(k);
    const BigInt r = k / 4;
    BigInt two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
    CHECK(lamp.order >= r * r);
    CHECK(lamp.order >= two_k);
    const auto semi = semidirect_quotient_D(k);
    CHECK(semi.modulus > k);
    CHECK(4 * semi.order >= BigInt(static_cast<unsigned long>(semi.modulus * semi.modulus)));
  }
}
