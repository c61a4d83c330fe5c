#include "rfg/growth.hpp"

#include <algorithm>

#include "rfg/errors.hpp"

namespace rfg::growth {

namespace {

std::vector<Letter> inverted(const std::vector<Letter> &w) {
  std::vector<Letter> out(w.rbegin(), w.rend());
  for (auto &l : out)
    l.inverse = !l.inverse;
  return out;
}

unsigned third_index(unsigned i, unsigned j) {
  unsigned l = 0;
  while (l == i || l == j)
    ++l;
  return l;
}

struct Split {
  BigInt a, b, c; // z = a*b + c
};

Split split(const BigInt &z) {
  // balanced divisor when z factors nicely
  if (mpz_sizeinbase(z.get_mpz_t(), 2) <= 62) {
    const std::uint64_t zz = z.get_ui();
    std::vector<std::uint64_t> divisors{1};
    const auto fz = arith::factorize(z);
    for (const auto &pp : fz.factors()) {
      const std::uint64_t p = pp.prime.get_ui();
      const std::size_t size = divisors.size();
      std::uint64_t pk = 1;
      for (unsigned e = 1; e <= pp.exponent; ++e) {
        pk *= p;
        for (std::size_t t = 0; t < size; ++t)
          divisors.push_back(divisors[t] * pk);
      }
    }
    std::uint64_t best = 1;
    for (auto d : divisors)
      if (static_cast<unsigned __int128>(d) * d <= zz)
        best = std::max(best, d);
    const unsigned __int128 b2 = static_cast<unsigned __int128>(best) * best;
    if (best >= 2 && b2 * b2 >= zz)
      return {BigInt(static_cast<unsigned long>(best)), BigInt(static_cast<unsigned long>(zz / best)), 0};
  }
  const std::size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2) - 1; // floor(log2 z)
  BigInt a;
  mpz_ui_pow_ui(a.get_mpz_t(), 2, bits / 2);
  return {a, z / a, z % a};
}

void build(unsigned i, unsigned j, const BigInt &z, std::vector<Letter> &out) {
  if (z <= 3) {
    for (unsigned t = 0; t < z.get_ui(); ++t)
      out.push_back({i, j, false});
    return;
  }
  const unsigned l = third_index(i, j);
  const Split s = split(z);
  std::vector<Letter> wa, wb;
  build(i, l, s.a, wa);
  build(l, j, s.b, wb);
  // [E_il(a), E_lj(b)] = E_ij(ab)
  out.insert(out.end(), wa.begin(), wa.end());
  out.insert(out.end(), wb.begin(), wb.end());
  const auto ia = inverted(wa), ib = inverted(wb);
  out.insert(out.end(), ia.begin(), ia.end());
  out.insert(out.end(), ib.begin(), ib.end());
  if (s.c > 0)
    build(i, j, s.c, out);
}

} // namespace

std::string UnipotentWord::to_string() const {
  std::string s;
  for (const auto &l : letters) {
    if (!s.empty())
      s += ' ';
    s += "E" + std::to_string(l.i + 1) + std::to_string(l.j + 1);
    if (l.inverse)
      s += "^-1";
  }
  return s;
}

IntMat UnipotentWord::evaluate() const {
  IntMat g = IntMat::identity(n);
  for (const auto &l : letters) {
    // right multiplication by E_ij(s) adds s * column i to column j
    for (unsigned r = 0; r < n; ++r) {
      if (l.inverse)
        g(r, l.j) -= g(r, l.i);
      else
        g(r, l.j) += g(r, l.i);
    }
  }
  return g;
}

UnipotentWord short_unipotent_word(const GroupSpec &spec, const BigInt &z) {
  if (spec.n() < 3)
    throw DomainError("unipotent word synthesis needs rank >= 2 (n >= 3)");
  if (z == 0)
    throw DomainError("z must be nonzero");
  UnipotentWord w;
  w.n = spec.n();
  build(0, 2, abs(z), w.letters);
  if (z < 0)
    w.letters = inverted(w.letters);
  return w;
}

} // namespace rfg::growth
