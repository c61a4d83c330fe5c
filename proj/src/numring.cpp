#include "rfg/numring.hpp"

#include <algorithm>
#include <cctype>
#include <omp.h>
#include <set>
#include <sstream>

#include "polymod.hpp"
#include "rfg/errors.hpp"

namespace rfg::numring {

namespace {

using polymod::Poly;

std::string trim_ws(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

BigInt parse_int(const std::string &tok) {
  BigInt v;
  if (tok.empty() || v.set_str(tok, 10) != 0)
    throw DomainError("not an integer: '" + tok + "'");
  return v;
}

BigInt eval_int(const IntPoly &f, const BigInt &x) {
  BigInt r = 0;
  for (std::size_t i = f.size(); i-- > 0;)
    r = r * x + f[i];
  return r;
}

IntPoly derivative(const IntPoly &f) {
  IntPoly d;
  for (std::size_t i = 1; i < f.size(); ++i)
    d.push_back(f[i] * static_cast<unsigned long>(i));
  return d;
}

// Multiplies integer polynomials.
IntPoly mul_int(const IntPoly &a, const IntPoly &b) {
  if (a.empty() || b.empty())
    return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  return r;
}

IntPoly reduce_coeffs(IntPoly a, const BigInt &m) {
  for (auto &c : a)
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  return a;
}

IntPoly to_int(const Poly &a) {
  IntPoly r;
  for (auto c : a)
    r.push_back(BigInt(static_cast<unsigned long>(c)));
  return r;
}

// Exact division of f by a monic g over Z; returns the quotient when the
// remainder vanishes.
std::optional<IntPoly> divide_exact(const IntPoly &f, const IntPoly &g) {
  IntPoly r = f;
  const std::size_t dg = g.size() - 1;
  if (r.size() < g.size())
    return std::nullopt;
  IntPoly q(r.size() - dg, 0);
  for (std::size_t i = r.size(); i-- > dg;) {
    const BigInt c = r[i];
    q[i - dg] = c;
    if (c == 0)
      continue;
    for (std::size_t j = 0; j <= dg; ++j)
      r[i - dg + j] -= c * g[j];
  }
  for (std::size_t i = 0; i < dg; ++i)
    if (r[i] != 0)
      return std::nullopt;
  return q;
}

// Lifts f = g * h (mod p) with g, h monic and coprime mod p to a
// factorization mod p^a.
std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly &f, const Poly &g, const Poly &h,
                                             std::uint64_t p, unsigned a) {
  auto [s, t] = polymod::bezout(g, h, p);
  IntPoly G = to_int(g), H = to_int(h);
  BigInt pk = static_cast<unsigned long>(p);
  for (unsigned step = 1; step < a; ++step) {
    IntPoly gh = mul_int(G, H);
    IntPoly diff(f.size(), 0);
    for (std::size_t i = 0; i < f.size(); ++i)
      diff[i] = f[i] - (i < gh.size() ? gh[i] : BigInt(0));
    for (auto &c : diff)
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
    Poly e = polymod::from_integers(diff, p);
    auto [q, r] = polymod::divmod(polymod::mul(e, t, p), g, p);
    Poly dh = polymod::add(polymod::mul(e, s, p), polymod::mul(q, h, p), p);
    for (std::size_t i = 0; i < r.size(); ++i)
      G[i] += pk * static_cast<unsigned long>(r[i]);
    for (std::size_t i = 0; i < dh.size() && i < H.size(); ++i)
      H[i] += pk * static_cast<unsigned long>(dh[i]);
    pk *= static_cast<unsigned long>(p);
    G = reduce_coeffs(G, pk);
    H = reduce_coeffs(H, pk);
  }
  return {G, H};
}

std::vector<IntPoly> hensel_lift(const IntPoly &f, const std::vector<Poly> &factors, std::uint64_t p,
                                 unsigned a) {
  if (factors.size() == 1)
    return {f};
  Poly rest{1};
  for (std::size_t i = 1; i < factors.size(); ++i)
    rest = polymod::mul(rest, factors[i], p);
  auto [first, tail] = hensel_lift_pair(f, factors[0], rest, p, a);
  std::vector<IntPoly> out{first};
  auto more = hensel_lift(tail, std::vector<Poly>(factors.begin() + 1, factors.end()), p, a);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::set<unsigned> subset_degree_sums(const std::vector<Poly> &factors) {
  std::set<unsigned> sums{0};
  for (const auto &fac : factors) {
    std::set<unsigned> next = sums;
    for (unsigned s : sums)
      next.insert(s + static_cast<unsigned>(polymod::degree(fac)));
    sums = std::move(next);
  }
  return sums;
}

bool has_rational_root(const IntPoly &f) {
  BigInt c = abs(f[0]);
  if (c >= arith::primality_bound())
    return false; // left to the Hensel stage
  auto fac = arith::factorize(c);
  std::vector<BigInt> divisors{1};
  for (const auto &pp : fac.factors()) {
    std::vector<BigInt> next;
    for (const auto &d : divisors) {
      BigInt q = d;
      for (unsigned e = 0; e <= pp.exponent; ++e) {
        next.push_back(q);
        q *= pp.prime;
      }
    }
    divisors = std::move(next);
    if (divisors.size() > 100000)
      return false;
  }
  for (const auto &d : divisors) {
    if (eval_int(f, d) == 0 || eval_int(f, BigInt(-d)) == 0)
      return true;
  }
  return false;
}

bool all_divisible(const std::vector<BigInt> &v, const BigInt &d) {
  return std::all_of(v.begin(), v.end(), [&](const BigInt &c) { return mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()) != 0; });
}

} // namespace

BigInt discriminant(const IntPoly &f) {
  const std::size_t d = f.size() - 1;
  if (d == 0)
    throw DomainError("discriminant of a constant");
  if (d == 1)
    return 1;
  IntPoly df = derivative(f);
  const std::size_t n = 2 * d - 1;
  std::vector<BigInt> syl(n * n, 0);
  // d-1 rows of f, d rows of f', coefficients high-to-low.
  for (std::size_t r = 0; r + 1 < d; ++r)
    for (std::size_t i = 0; i <= d; ++i)
      syl[r * n + r + i] = f[d - i];
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i < d; ++i)
      syl[(d - 1 + r) * n + r + i] = df[d - 1 - i];
  BigInt res = arith::determinant(std::move(syl), n);
  if ((d * (d - 1) / 2) % 2 == 1)
    res = -res;
  return res;
}

bool is_irreducible(const IntPoly &f) {
  if (f.size() < 2 || f.back() != 1)
    throw DomainError("irreducibility test needs a monic polynomial of degree >= 1");
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  if (d == 1)
    return true;
  if (f[0] == 0 || has_rational_root(f))
    return false;
  if (d <= 3)
    return true;

  const BigInt disc = discriminant(f);
  std::set<unsigned> possible;
  for (unsigned j = 1; j < d; ++j)
    possible.insert(j);
  std::uint64_t best_prime = 0;
  std::vector<Poly> best_factors;
  unsigned used = 0;
  for (std::uint64_t p = 3; used < 40 && !possible.empty(); p += 2) {
    if (!arith::is_prime(p) || mpz_divisible_ui_p(disc.get_mpz_t(), p))
      continue;
    ++used;
    auto factors = polymod::distinct_irreducible_factors(polymod::from_integers(f, p), p);
    auto sums = subset_degree_sums(factors);
    std::set<unsigned> keep;
    for (unsigned j : possible)
      if (sums.count(j))
        keep.insert(j);
    possible = std::move(keep);
    if (best_prime == 0 || factors.size() < best_factors.size()) {
      best_prime = p;
      best_factors = std::move(factors);
    }
  }
  if (possible.empty())
    return true;

  // Zassenhaus: lift past twice the Mignotte bound, then try every
  // combination whose degree is still possible.
  BigInt norm2 = 0;
  for (const auto &c : f)
    norm2 += c * c;
  BigInt bound = sqrt(norm2) + 1;
  bound <<= d;
  bound *= 2;
  unsigned a = 1;
  BigInt pa = static_cast<unsigned long>(best_prime);
  while (pa <= bound) {
    pa *= static_cast<unsigned long>(best_prime);
    ++a;
  }
  auto lifted = hensel_lift(f, best_factors, best_prime, a);
  const std::size_t r = lifted.size();
  if (r > 20)
    throw DomainError("irreducibility test: too many modular factors to recombine");
  BigInt half = pa / 2;
  for (std::uint64_t mask = 1; mask + 1 < (1ULL << r); ++mask) {
    unsigned deg = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1)
        deg += static_cast<unsigned>(lifted[i].size() - 1);
    if (deg > d / 2 || !possible.count(deg))
      continue;
    IntPoly cand{1};
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1)
        cand = reduce_coeffs(mul_int(cand, lifted[i]), pa);
    for (auto &c : cand)
      if (c > half)
        c -= pa;
    if (divide_exact(f, cand))
      return false;
  }
  return true;
}

NumberRing::NumberRing(IntPoly min_poly, BigInt inverted)
    : min_poly_(std::move(min_poly)), inverted_(std::move(inverted)) {
  while (min_poly_.size() > 1 && min_poly_.back() == 0)
    min_poly_.pop_back();
  if (min_poly_.size() < 2)
    throw DomainError("number ring needs a polynomial of degree >= 1");
  if (min_poly_.back() != 1)
    throw DomainError("number ring needs a monic polynomial");
  if (inverted_ < 1)
    throw DomainError("inverted integer must be positive");
  if (!is_irreducible(min_poly_))
    throw DomainError("polynomial is reducible over Q");
  discriminant_ = numring::discriminant(min_poly_);
}

NumberRing NumberRing::parse(std::string_view text) {
  IntPoly f;
  BigInt inv = 1;
  bool have_f = false;
  std::stringstream clauses{std::string(text)};
  std::string clause;
  while (std::getline(clauses, clause, ';')) {
    clause = trim_ws(clause);
    if (clause.empty())
      continue;
    auto eq = clause.find('=');
    if (eq == std::string::npos)
      throw DomainError("ring clause needs 'key = value': " + clause);
    std::string key = trim_ws(std::string_view(clause).substr(0, eq));
    std::string value = trim_ws(std::string_view(clause).substr(eq + 1));
    if (key == "f") {
      std::string tok;
      for (char &c : value)
        if (c == ',')
          c = ' ';
      std::stringstream vs(value);
      while (vs >> tok)
        f.push_back(parse_int(tok));
      have_f = true;
    } else if (key == "invert") {
      inv = parse_int(value);
    } else {
      throw DomainError("unknown ring clause: " + key);
    }
  }
  if (!have_f)
    throw DomainError("ring spec needs 'f = <coefficients>'");
  return NumberRing(std::move(f), std::move(inv));
}

bool NumberRing::is_bad_prime(std::uint64_t p) const {
  return mpz_divisible_ui_p(discriminant_.get_mpz_t(), p) || mpz_divisible_ui_p(inverted_.get_mpz_t(), p);
}

std::string NumberRing::to_string() const {
  std::string s = "f = ";
  for (std::size_t i = 0; i < min_poly_.size(); ++i) {
    if (i)
      s += ",";
    s += min_poly_[i].get_str();
  }
  return s + "; invert = " + inverted_.get_str();
}

RingElement::RingElement(std::shared_ptr<const NumberRing> ring, std::vector<BigInt> coords,
                         unsigned denom_exp)
    : ring_(std::move(ring)), coords_(std::move(coords)), denom_exp_(denom_exp) {
  if (!ring_)
    throw DomainError("ring element needs a ring");
  if (coords_.size() != ring_->degree())
    throw DomainError("coordinate count must equal the ring degree");
  normalize();
}

RingElement RingElement::from_integer(std::shared_ptr<const NumberRing> ring, const BigInt &value) {
  std::vector<BigInt> c(ring->degree(), 0);
  c[0] = value;
  return RingElement(std::move(ring), std::move(c));
}

void RingElement::normalize() {
  const BigInt &f0 = ring_->inverted();
  if (f0 == 1 || is_zero()) {
    denom_exp_ = 0;
    return;
  }
  while (denom_exp_ > 0 && all_divisible(coords_, f0)) {
    for (auto &c : coords_)
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), f0.get_mpz_t());
    --denom_exp_;
  }
}

bool RingElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const BigInt &c) { return c == 0; });
}

BigInt RingElement::max_abs_coord() const {
  BigInt m = 0;
  for (const auto &c : coords_)
    if (abs(c) > m)
      m = abs(c);
  return m;
}

bool RingElement::operator==(const RingElement &other) const {
  return ring() == other.ring() && coords_ == other.coords_ && denom_exp_ == other.denom_exp_;
}

RingElement add(const RingElement &a, const RingElement &b) {
  if (!(a.ring() == b.ring()))
    throw DomainError("ring arithmetic across different rings");
  const BigInt &f0 = a.ring().inverted();
  const unsigned e = std::max(a.denom_exp(), b.denom_exp());
  BigInt sa, sb;
  mpz_pow_ui(sa.get_mpz_t(), f0.get_mpz_t(), e - a.denom_exp());
  mpz_pow_ui(sb.get_mpz_t(), f0.get_mpz_t(), e - b.denom_exp());
  std::vector<BigInt> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = a.coords()[i] * sa + b.coords()[i] * sb;
  return RingElement(a.ring_ptr(), std::move(c), e);
}

RingElement mul(const RingElement &a, const RingElement &b) {
  if (!(a.ring() == b.ring()))
    throw DomainError("ring arithmetic across different rings");
  const IntPoly &f = a.ring().min_poly();
  const std::size_t d = f.size() - 1;
  IntPoly prod = mul_int(a.coords(), b.coords());
  // Reduce with the monic relation x^d = -(f_0 + ... + f_{d-1} x^{d-1}).
  for (std::size_t i = prod.size(); i-- > d;) {
    const BigInt c = prod[i];
    if (c == 0)
      continue;
    for (std::size_t j = 0; j < d; ++j)
      prod[i - d + j] -= c * f[j];
    prod[i] = 0;
  }
  prod.resize(d, 0);
  return RingElement(a.ring_ptr(), std::move(prod), a.denom_exp() + b.denom_exp());
}

RingElement ring_arithmetic(const RingElement &a, const RingElement &b, RingOp op) {
  return op == RingOp::add ? add(a, b) : mul(a, b);
}

std::vector<SplitPrime> split_primes(const NumberRing &ring, std::uint64_t limit) {
  if (limit < 2)
    throw DomainError("split_primes needs limit >= 2");
  const auto primes = arith::primes_up_to(limit);
  const std::size_t d = ring.degree();
  std::vector<std::vector<std::uint64_t>> found(primes.size());
  // Each prime is independent; results are compacted in prime order below.
#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    if (ring.is_bad_prime(p))
      continue;
    auto r = polymod::roots(polymod::from_integers(ring.min_poly(), p), p);
    if (r.size() == d)
      found[i] = std::move(r);
  }
  std::vector<SplitPrime> out;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (!found[i].empty())
      out.push_back({primes[i], std::move(found[i])});
  return out;
}

std::uint64_t reduce_element(const RingElement &a, std::uint64_t p, std::uint64_t root) {
  const NumberRing &ring = a.ring();
  if (mpz_divisible_ui_p(ring.inverted().get_mpz_t(), p))
    throw DomainError("prime divides the inverted integer: localization undefined at p");
  root %= p;
  if (polymod::eval(polymod::from_integers(ring.min_poly(), p), root, p) != 0)
    throw DomainError("not a root of the minimal polynomial mod p");
  std::uint64_t num = polymod::eval(polymod::from_integers(a.coords(), p), root, p);
  std::uint64_t den = arith::powmod(arith::mod_u64(ring.inverted(), p), a.denom_exp(), p);
  return arith::mulmod(num, arith::invmod(den, p), p);
}

SplitDetection detect_split(const RingElement &a, std::uint64_t limit) {
  if (a.is_zero())
    throw Undetectable("zero is not detected by any quotient");
  const NumberRing &ring = a.ring();
  for (std::uint64_t p : arith::primes_up_to(limit)) {
    if (ring.is_bad_prime(p))
      continue;
    auto r = polymod::roots(polymod::from_integers(ring.min_poly(), p), p);
    if (r.size() != ring.degree())
      continue;
    for (std::uint64_t root : r) {
      std::uint64_t v = reduce_element(a, p, root);
      if (v != 0)
        return {p, root, v};
    }
  }
  throw LimitExceeded("no split prime up to " + std::to_string(limit) + " detects the element");
}

std::string to_string(IdealKind kind) {
  switch (kind) {
  case IdealKind::split:
    return "split";
  case IdealKind::inert:
    return "inert";
  case IdealKind::ramified:
    return "ramified";
  case IdealKind::other:
    break;
  }
  return "other";
}

PrimeIdeal min_detecting_ideal(const RingElement &a, std::uint64_t limit) {
  if (a.is_zero())
    throw Undetectable("zero is not detected by any quotient");
  const NumberRing &ring = a.ring();
  const unsigned d = ring.degree();
  std::optional<PrimeIdeal> best;
  for (std::uint64_t p : arith::primes_up_to(limit)) {
    if (best && BigInt(static_cast<unsigned long>(p)) > best->norm)
      break;
    if (mpz_divisible_ui_p(ring.inverted().get_mpz_t(), p))
      continue;
    const Poly fp = polymod::from_integers(ring.min_poly(), p);
    const auto factors = polymod::distinct_irreducible_factors(fp, p);
    unsigned total = 0;
    for (const auto &g : factors)
      total += static_cast<unsigned>(polymod::degree(g));
    IdealKind kind = IdealKind::other;
    if (total < d)
      kind = IdealKind::ramified;
    else if (factors.size() == d)
      kind = IdealKind::split;
    else if (factors.size() == 1)
      kind = IdealKind::inert;
    const Poly num = polymod::from_integers(a.coords(), p);
    for (const auto &g : factors) {
      const unsigned deg = static_cast<unsigned>(polymod::degree(g));
      BigInt norm;
      mpz_ui_pow_ui(norm.get_mpz_t(), p, deg);
      if (norm > limit || (best && norm >= best->norm))
        continue;
      if (polymod::is_zero(polymod::rem(num, g, p)))
        continue;
      best = PrimeIdeal{p, g, deg, norm, kind};
    }
  }
  if (!best)
    throw LimitExceeded("no prime ideal of norm <= " + std::to_string(limit) + " detects the element");
  return *best;
}

} // namespace rfg::numring
