#include "polymod.hpp"

#include <algorithm>

#include "rfg/arith.hpp"
#include "rfg/errors.hpp"
#include "rfg/rng.hpp"

namespace rfg::polymod {

using arith::mulmod;

void trim(Poly &a) {
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

int degree(const Poly &a) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != 0)
      return static_cast<int>(i);
  return -1;
}

bool is_zero(const Poly &a) { return degree(a) < 0; }

Poly add(const Poly &a, const Poly &b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = (x + y) % p;
  }
  trim(r);
  return r;
}

Poly sub(const Poly &a, const Poly &b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = (x + p - y) % p;
  }
  trim(r);
  return r;
}

Poly mul(const Poly &a, const Poly &b, std::uint64_t p) {
  if (is_zero(a) || is_zero(b))
    return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b, std::uint64_t p) {
  const int db = degree(b);
  if (db < 0)
    throw DomainError("polynomial division by zero");
  Poly r = a;
  trim(r);
  const int da = degree(r);
  if (da < db)
    return {{}, r};
  Poly q(static_cast<std::size_t>(da - db + 1), 0);
  const std::uint64_t inv = arith::invmod(b[db], p);
  for (int i = da; i >= db; --i) {
    const std::uint64_t c = mulmod(r[i], inv, p);
    if (c == 0)
      continue;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j)
      r[i - db + j] = (r[i - db + j] + p - mulmod(c, b[j], p)) % p;
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly rem(const Poly &a, const Poly &b, std::uint64_t p) { return divmod(a, b, p).second; }

Poly monic(const Poly &a, std::uint64_t p) {
  Poly r = a;
  trim(r);
  if (r.empty())
    return r;
  const std::uint64_t inv = arith::invmod(r.back(), p);
  for (auto &c : r)
    c = mulmod(c, inv, p);
  return r;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly powmod(const Poly &base, const mpz_class &e, const Poly &f, std::uint64_t p) {
  Poly result{1 % p};
  trim(result);
  Poly b = rem(base, f, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i))
      result = rem(mul(result, b, p), f, p);
  }
  return result;
}

std::uint64_t eval(const Poly &a, std::uint64_t x, std::uint64_t p) {
  std::uint64_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;)
    r = (mulmod(r, x, p) + a[i]) % p;
  return r;
}

Poly from_integers(const std::vector<mpz_class> &coeffs, std::uint64_t p) {
  Poly r(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    r[i] = arith::mod_u64(coeffs[i], p);
  trim(r);
  return r;
}

namespace {

Poly random_poly(Rng &rng, int deg_below, std::uint64_t p) {
  Poly r(static_cast<std::size_t>(deg_below));
  for (auto &c : r)
    c = rng.below(p);
  trim(r);
  return r;
}

// Splits a squarefree g whose irreducible factors all have degree j.
void equal_degree_split(const Poly &g, int j, std::uint64_t p, Rng &rng, std::vector<Poly> &out) {
  const int dg = degree(g);
  if (dg == j) {
    out.push_back(monic(g, p));
    return;
  }
  mpz_class pj;
  mpz_ui_pow_ui(pj.get_mpz_t(), p, static_cast<unsigned long>(j));
  for (;;) {
    Poly a = random_poly(rng, dg, p);
    if (degree(a) < 1)
      continue;
    Poly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(j-1)).
      Poly t = rem(a, g, p);
      b = t;
      for (int i = 1; i < j; ++i) {
        t = rem(mul(t, t, p), g, p);
        b = add(b, t, p);
      }
    } else {
      mpz_class e = (pj - 1) / 2;
      b = sub(powmod(a, e, g, p), Poly{1}, p);
    }
    Poly h = gcd(g, b, p);
    const int dh = degree(h);
    if (dh > 0 && dh < dg) {
      equal_degree_split(h, j, p, rng, out);
      equal_degree_split(divmod(g, h, p).first, j, p, rng, out);
      return;
    }
  }
}

bool poly_less(const Poly &a, const Poly &b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

} // namespace

std::vector<Poly> distinct_irreducible_factors(const Poly &f_in, std::uint64_t p) {
  Poly rest = monic(f_in, p);
  std::vector<Poly> out;
  if (degree(rest) < 1)
    return out;
  Rng rng(0x5eed + p);
  const Poly x{0, 1};
  Poly h = rem(x, rest, p);
  const mpz_class pe = static_cast<unsigned long>(p);
  for (int j = 1; degree(rest) >= 2 * j; ++j) {
    h = powmod(h, pe, rest, p);
    Poly g = gcd(sub(h, x, p), rest, p);
    if (degree(g) > 0) {
      equal_degree_split(g, j, p, rng, out);
      for (;;) {
        Poly c = gcd(rest, g, p);
        if (degree(c) < 1)
          break;
        rest = divmod(rest, c, p).first;
      }
      rest = monic(rest, p);
      h = rem(h, rest, p);
    }
  }
  if (degree(rest) > 0)
    out.push_back(rest);
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

std::vector<std::uint64_t> roots(const Poly &f, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  Poly g = f;
  trim(g);
  if (g.empty())
    throw DomainError("roots of the zero polynomial");
  if (p <= 64) {
    for (std::uint64_t x = 0; x < p; ++x)
      if (eval(g, x, p) == 0)
        out.push_back(x);
    return out;
  }
  g = monic(g, p);
  const Poly x{0, 1};
  Poly xp = powmod(x, mpz_class(static_cast<unsigned long>(p)), g, p);
  Poly lin = gcd(sub(xp, x, p), g, p);
  if (degree(lin) < 1)
    return out;
  std::vector<Poly> factors;
  Rng rng(0x900d + p);
  equal_degree_split(lin, 1, p, rng, factors);
  for (const auto &fac : factors)
    out.push_back((p - fac[0]) % p);
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<Poly, Poly> bezout(const Poly &a, const Poly &b, std::uint64_t p) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!is_zero(r1)) {
    auto [q, r] = divmod(r0, r1, p);
    Poly s2 = sub(s0, mul(q, s1, p), p);
    Poly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (degree(r0) != 0)
    throw DomainError("bezout: polynomials are not coprime");
  const std::uint64_t inv = arith::invmod(r0[0], p);
  for (auto &c : s0)
    c = mulmod(c, inv, p);
  for (auto &c : t0)
    c = mulmod(c, inv, p);
  return {s0, t0};
}

} // namespace rfg::polymod
