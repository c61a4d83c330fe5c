#include <doctest.h>

#include "rfg/errors.hpp"
#include "rfg/matgrp.hpp"
#include "support.hpp"

using namespace rfg;
using namespace rfg::matgrp;

namespace {

const auto sl2 = chevalley::GroupSpec::sl(2);

DetectionResult plain(std::uint64_t m, long order) { return {m, BigInt(order), false}; }

} // namespace

TEST_CASE("integer and modular matrix basics") {
  CHECK(IntMat::elementary(2, 0, 1, 3) * IntMat::elementary(2, 0, 1, 4) == IntMat::elementary(2, 0, 1, 7));
  CHECK((ModMat(2, 6, std::vector<std::uint64_t>{1, 5, 0, 1}) * ModMat::elementary(2, 6, 0, 1, 1)).is_identity());
  for (const auto &a : testing::random_sl2(60, 4)) {
    CHECK((a * a.inverse()).is_identity());
    const ModMat r = reduce_mod(a, 35);
    CHECK((r * r.inverse()).is_identity());
  }
  CHECK_THROWS_AS(IntMat::parse("2,0;0,1").inverse(), DomainError);
  CHECK_THROWS_AS(ModMat(2, 6, std::vector<std::uint64_t>{2, 0, 0, 1}).inverse(), DomainError);
  CHECK_THROWS_AS(IntMat::parse("1,2;3"), DomainError);
  CHECK(IntMat::parse(" 1, -12 ; 0,1").to_string() == "1,-12;0,1");
  const ModMat g = ModMat(3, 7, std::vector<std::uint64_t>{1, 2, 3, 0, 1, 4, 5, 6, 0});
  CHECK(ModMat::decode(3, 7, g.code()) == g);
}

TEST_CASE("reduction mod m") {
  const IntMat e = IntMat::elementary(2, 0, 1, 12);
  CHECK(reduce_mod(e, 5) == ModMat::elementary(2, 5, 0, 1, 2));
  CHECK(reduce_mod(e, 4).is_identity());
  CHECK(reduce_mod(IntMat::parse("-1,0;0,-1"), 2).is_identity());
  // reducing in stages agrees with reducing at once
  for (const auto &a : testing::random_sl2(60, 8))
    for (std::uint64_t m : {12, 30, 45, 64})
      for (std::uint64_t d = 2; d <= m; ++d)
        if (m % d == 0)
          CHECK(reduce_mod(a, m).reduce(d) == reduce_mod(a, d));
}

TEST_CASE("detection gcd") {
  CHECK(*detection_gcd(IntMat::elementary(2, 0, 1, 12)) == 12);
  CHECK(*detection_gcd(IntMat::parse("2,1;1,1")) == 1);
  CHECK_FALSE(detection_gcd(IntMat::identity(2)).has_value());
  for (const auto &a : testing::random_sl2(80, 12)) {
    const BigInt g = *detection_gcd(a);
    for (std::uint64_t m = 2; m <= 60; ++m)
      CHECK(reduce_mod(a, m).is_identity() == mpz_divisible_ui_p(g.get_mpz_t(), m));
  }
}

TEST_CASE("congruence D on unipotents") {
  CHECK(congruence_D(IntMat::elementary(2, 0, 1, 12), sl2) == plain(5, 120));
  CHECK(congruence_D(IntMat::elementary(2, 0, 1, 6), sl2) == plain(4, 48));
  CHECK(congruence_D(IntMat::elementary(2, 0, 1, 1), sl2) == plain(2, 6));
  CHECK_THROWS_AS(congruence_D(IntMat::identity(2), sl2), Undetectable);
  CHECK(to_string(plain(5, 120)) == "modulus=5,order=120");
}

TEST_CASE("brute-force oracle") {
  CHECK(brute_force_D(IntMat::elementary(2, 0, 1, 12), sl2, 200).detection == plain(5, 120));
  CHECK(brute_force_D(IntMat::parse("-1,0;0,-1"), sl2, 50).detection == plain(3, 24));
  CHECK(brute_force_D(IntMat::elementary(2, 0, 1, 60), sl2, 400).detection == plain(7, 336));
  const auto short_range = brute_force_D(IntMat::elementary(2, 0, 1, 60), sl2, 10);
  CHECK(short_range.range_may_be_short);
  CHECK_THROWS_AS(brute_force_D(IntMat::elementary(2, 0, 1, 60), sl2, 6), LimitExceeded);
}

TEST_CASE("congruence D matches the oracle on random elements") {
  for (const auto &a : testing::random_sl2(40, 21)) {
    const auto oracle = brute_force_D(a, sl2, 200, Exec::serial);
    CHECK_FALSE(oracle.range_may_be_short);
    CHECK(congruence_D(a, sl2) == oracle.detection);
    CHECK(brute_force_D(a, sl2, 200, Exec::parallel).detection == oracle.detection);
  }
}

TEST_CASE("every detecting modulus has a prime-power factor at least as good") {
  for (const auto &a : testing::random_sl2(30, 33)) {
    for (std::uint64_t m = 2; m <= 200; ++m) {
      if (reduce_mod(a, m).is_identity())
        continue;
      bool found = false;
      const auto fm = arith::factorize(BigInt(static_cast<unsigned long>(m)));
      for (const auto &pp : fm.factors()) {
        const std::uint64_t q = arith::ipow(pp.prime.get_ui(), pp.exponent);
        if (!reduce_mod(a, q).is_identity() && chevalley::order_mod(sl2, q) <= chevalley::order_mod(sl2, m))
          found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("central quotients") {
  // -E_12(2) is not scalar mod 3, and the central quotient PSL_2(F_3) has order 12
  const IntMat a = IntMat::parse("-1,-2;0,-1");
  const auto d = congruence_D(a, sl2, true);
  CHECK(d.central_quotient);
  CHECK(d.modulus == 3);
  CHECK(d.quotient_order == 12);
  // -I is scalar everywhere, so the central route never applies
  const auto minus = congruence_D(IntMat::parse("-1,0;0,-1"), sl2, true);
  CHECK_FALSE(minus.central_quotient);
  CHECK(minus == plain(3, 24));
}
