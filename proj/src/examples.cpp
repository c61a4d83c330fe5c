#include "rfg/examples.hpp"

#include <algorithm>
#include <numeric>

#include "rfg/errors.hpp"

namespace rfg::examples {

using arith::lcm_valuation;

namespace {

std::uint64_t mod_floor(std::int64_t a, std::uint64_t m) {
  const std::int64_t r = a % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

std::int64_t lcm_small(unsigned k) {
  if (k > 40)
    throw DomainError("candidate positions are materialized for k <= 40");
  return static_cast<std::int64_t>(arith::lcm_upto(k).get_si());
}

// first prime power above k, i.e. the least non-divisor of lcm(1..k)
std::uint64_t first_prime_power_above(unsigned k) {
  return arith::prime_powers_above(k, 2 * static_cast<std::uint64_t>(k) + 2).front().value;
}

// lcm(1..k) mod m from valuations
std::uint64_t lcm_mod(unsigned k, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (auto p : arith::primes_up_to(k))
    r = arith::mulmod(r, arith::powmod(p, lcm_valuation(k, p), m), m);
  return r;
}

BigInt lamp_order(std::uint64_t m) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, m);
  return r * static_cast<unsigned long>(m);
}

} // namespace

LampElement operator*(const LampElement &a, const LampElement &b) {
  LampElement r{a.support, a.shift + b.shift};
  for (auto i : b.support) {
    auto [it, fresh] = r.support.insert(i + a.shift);
    if (!fresh)
      r.support.erase(it);
  }
  return r;
}

LampElement inverse(const LampElement &a) {
  LampElement r{{}, -a.shift};
  for (auto i : a.support)
    r.support.insert(i - a.shift);
  return r;
}

bool FoldedLamp::is_identity() const {
  return shift == 0 && std::none_of(lamps.begin(), lamps.end(), [](char c) { return c; });
}

FoldedLamp fold(const LampElement &a, std::uint64_t m) {
  if (m < 1)
    throw DomainError("fold needs m >= 1");
  FoldedLamp f{m, std::vector<char>(m, 0), mod_floor(a.shift, m)};
  for (auto i : a.support)
    f.lamps[mod_floor(i, m)] ^= 1;
  return f;
}

FoldedLamp operator*(const FoldedLamp &a, const FoldedLamp &b) {
  if (a.m != b.m)
    throw DomainError("folded lamps over different moduli");
  FoldedLamp r = a;
  for (std::uint64_t i = 0; i < a.m; ++i)
    r.lamps[(i + a.shift) % a.m] ^= b.lamps[i];
  r.shift = (a.shift + b.shift) % a.m;
  return r;
}

LampElement lamp_candidate(unsigned k, bool literal) {
  const std::int64_t l = lcm_small(k);
  LampElement a = LampElement::delta(1);
  return a * LampElement::delta(literal ? l : 1 + l);
}

QuotientWitness lamp_quotient_D(unsigned k, bool literal) {
  if (k < 2)
    throw DomainError("lamplighter candidates need k >= 2");
  std::uint64_t m;
  if (!literal) {
    // delta_1 and delta_{1+L} collide mod m exactly when m | L
    m = first_prime_power_above(k);
  } else {
    // delta_1 and delta_L collide mod m exactly when L = 1 mod m
    m = 2;
    while (lcm_mod(k, m) == 1 % m)
      ++m;
  }
  return {m, lamp_order(m), "lamplighter"};
}

QuotientWitness lamp_family_D(const LampElement &a, std::uint64_t m_max) {
  if (a.is_identity())
    throw Undetectable("identity is undetectable");
  std::optional<QuotientWitness> best;
  for (std::uint64_t m = 2; m <= m_max; ++m) {
    if (mod_floor(a.shift, m) != 0 && (!best || BigInt(static_cast<unsigned long>(m)) < best->order))
      best = QuotientWitness{m, BigInt(static_cast<unsigned long>(m)), "cyclic"};
    if (!fold(a, m).is_identity()) {
      const BigInt o = lamp_order(m);
      if (!best || o < best->order)
        best = QuotientWitness{m, o, "lamplighter"};
    }
  }
  if (!best)
    throw LimitExceeded("no quotient up to " + std::to_string(m_max) + " detects the element");
  return *best;
}

bool lamp_injectivity_certificate(unsigned k, std::uint64_t m) {
  if (m < 2 || lcm_mod(k, m) == 0)
    throw DomainError("m = " + std::to_string(m) + " does not detect the candidate");
  const std::int64_t r = k / 4;
  std::set<std::pair<std::vector<char>, std::uint64_t>> images;
  for (std::int64_t n = 1; n <= r; ++n)
    for (std::int64_t t = 1; t <= r; ++t) {
      const FoldedLamp f = fold(LampElement{{n}, t}, m);
      images.emplace(f.lamps, f.shift);
    }
  return images.size() == static_cast<std::size_t>(r * r);
}

const std::vector<Mat2> &q_group() {
  static const std::vector<Mat2> group = [] {
    auto mul = [](const Mat2 &a, const Mat2 &b) {
      return Mat2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                  a[2] * b[1] + a[3] * b[3]};
    };
    const Mat2 a{1, 0, 0, -1}, b{0, 1, 1, 0};
    std::vector<Mat2> g{{1, 0, 0, 1}};
    for (std::size_t head = 0; head < g.size(); ++head)
      for (const auto &s : {a, b}) {
        const Mat2 y = mul(g[head], s);
        if (std::find(g.begin(), g.end(), y) == g.end())
          g.push_back(y);
      }
    return g;
  }();
  return group;
}

namespace {

unsigned q_index(const Mat2 &m) {
  const auto &g = q_group();
  return static_cast<unsigned>(std::find(g.begin(), g.end(), m) - g.begin());
}

Mat2 q_mul(const Mat2 &a, const Mat2 &b) {
  return Mat2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
              a[2] * b[1] + a[3] * b[3]};
}

} // namespace

SemidirectElement operator*(const SemidirectElement &a, const SemidirectElement &b) {
  const Mat2 &q = q_group()[a.q];
  return {a.x + q[0] * b.x + q[1] * b.y, a.y + q[2] * b.x + q[3] * b.y, q_index(q_mul(q, q_group()[b.q]))};
}

SemidirectElement inverse(const SemidirectElement &a) {
  // signed permutation matrices are orthogonal, so q^-1 = q^T
  const Mat2 &q = q_group()[a.q];
  const Mat2 qt{q[0], q[2], q[1], q[3]};
  return {-(qt[0] * a.x + qt[1] * a.y), -(qt[2] * a.x + qt[3] * a.y), q_index(qt)};
}

SemidirectElement quotient_image(const SemidirectElement &a, std::uint64_t d) {
  if (d < 1)
    throw DomainError("quotient needs d >= 1");
  return {static_cast<std::int64_t>(mod_floor(a.x, d)), static_cast<std::int64_t>(mod_floor(a.y, d)), a.q};
}

QuotientWitness semidirect_quotient_D(unsigned k) {
  if (k < 2)
    throw DomainError("semidirect candidates need k >= 2");
  const std::uint64_t d = first_prime_power_above(k);
  return {d, BigInt(static_cast<unsigned long>(8 * d * d)), "semidirect"};
}

QuotientWitness semidirect_family_D(const SemidirectElement &a, std::uint64_t d_max) {
  if (a == SemidirectElement{})
    throw Undetectable("identity is undetectable");
  // d = 1 is Q itself, of order 8
  for (std::uint64_t d = 1; d <= d_max; ++d)
    if (!(quotient_image(a, d) == SemidirectElement{}))
      return {d, BigInt(static_cast<unsigned long>(8 * d * d)), "semidirect"};
  throw LimitExceeded("no quotient up to " + std::to_string(d_max) + " detects the element");
}

KernelStructure semidirect_kernel_structure_check(std::uint64_t d) {
  if (d < 1)
    throw DomainError("d must be >= 1");
  KernelStructure ks;
  ks.pass = true;
  const std::int64_t dd = static_cast<std::int64_t>(d);
  // V in Hermite form: rows (a, b), (0, c), 0 <= b < c
  for (std::int64_t a = 1; a <= dd; ++a) {
    if (dd % a)
      continue;
    for (std::int64_t c = 1; c <= dd; ++c) {
      if (dd % c)
        continue;
      for (std::int64_t b = 0; b < c; ++b) {
        auto in_v = [&](std::int64_t x, std::int64_t y) {
          if (x % a)
            return false;
          const std::int64_t r = (y - (x / a) * b) % c;
          return r == 0;
        };
        if (!in_v(dd, 0) || !in_v(0, dd))
          continue;
        bool invariant = true;
        for (const auto &q : q_group())
          for (const auto &[x, y] : {std::pair{a, b}, std::pair{std::int64_t{0}, c}})
            invariant = invariant && in_v(q[0] * x + q[1] * y, q[2] * x + q[3] * y);
        if (!invariant)
          continue;
        ++ks.lattices;
        std::int64_t dp = 1;
        while (!in_v(dp, 0))
          ++dp;
        // conjugating by B puts 0 x d'Z in V as well
        const bool square_inside = in_v(0, dp) && in_v(dp, 0);
        const std::int64_t covolume = a * c;
        const bool divides = (dp * dp) % covolume == 0;
        const std::uint64_t index = divides ? static_cast<std::uint64_t>(dp * dp / covolume) : 0;
        // 2V lies in d'Z x d'Z, which is what bounds the index by 4
        const bool doubled = (2 * a) % dp == 0 && (2 * b) % dp == 0 && (2 * c) % dp == 0;
        ks.max_index = std::max(ks.max_index, index);
        ks.pass = ks.pass && square_inside && divides && doubled && index <= 4;
      }
    }
  }
  ks.pass = ks.pass && ks.lattices > 0;
  return ks;
}

QuotientWitness abelian_D(const std::vector<BigInt> &v) {
  BigInt g = 0;
  for (const auto &x : v)
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0)
    throw Undetectable("zero vector is undetectable");
  const std::uint64_t a = arith::least_nondivisor(g);
  return {a, BigInt(static_cast<unsigned long>(a)), "abelian"};
}

} // namespace rfg::examples
