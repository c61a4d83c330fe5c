#include "rfg/group_spec.hpp"

#include <numeric>

#include "rfg/errors.hpp"

namespace rfg::chevalley {

GroupSpec GroupSpec::sl(unsigned n) {
  if (n < 2)
    throw DomainError("SL_n needs n >= 2");
  if (n > 4)
    throw DomainError("SL_n is supported for n <= 4");
  return GroupSpec(n);
}

GroupSpec GroupSpec::parse(std::string_view name) {
  if (name.size() >= 3 && (name.substr(0, 2) == "sl" || name.substr(0, 2) == "SL")) {
    unsigned n = 0;
    for (char c : name.substr(2)) {
      if (c < '0' || c > '9')
        throw DomainError("unknown group: " + std::string(name));
      n = n * 10 + static_cast<unsigned>(c - '0');
    }
    return sl(n);
  }
  throw DomainError("unknown group: " + std::string(name));
}

BigInt order_fp(const GroupSpec &spec, std::uint64_t p) {
  if (!arith::is_prime(p))
    throw DomainError("order_fp needs a prime");
  const unsigned n = spec.n();
  const BigInt bp = static_cast<unsigned long>(p);
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), bp.get_mpz_t(), n * (n - 1) / 2);
  for (unsigned i = 2; i <= n; ++i) {
    BigInt t;
    mpz_pow_ui(t.get_mpz_t(), bp.get_mpz_t(), i);
    r *= t - 1;
  }
  return r;
}

BigInt order_mod(const GroupSpec &spec, std::uint64_t m) {
  if (m < 1)
    throw DomainError("order_mod needs m >= 1");
  BigInt r = 1;
  auto fac = arith::factorize(BigInt(static_cast<unsigned long>(m)));
  for (const auto &pp : fac.factors()) {
    BigInt t;
    mpz_pow_ui(t.get_mpz_t(), pp.prime.get_mpz_t(), (pp.exponent - 1) * spec.dim());
    r *= t * order_fp(spec, pp.prime.get_ui());
  }
  return r;
}

std::uint64_t center_order_mod(const GroupSpec &spec, std::uint64_t m) {
  if (m < 1)
    throw DomainError("center_order_mod needs m >= 1");
  const std::uint64_t n = spec.n();
  std::uint64_t r = 1;
  auto fac = arith::factorize(BigInt(static_cast<unsigned long>(m)));
  for (const auto &pp : fac.factors()) {
    const std::uint64_t p = pp.prime.get_ui();
    const unsigned k = pp.exponent;
    if (p == 2) {
      // (Z/2^k)^x is trivial, Z/2, or Z/2 x Z/2^(k-2).
      if (k == 2)
        r *= std::gcd(n, std::uint64_t{2});
      else if (k >= 3)
        r *= std::gcd(n, std::uint64_t{2}) * std::gcd(n, arith::ipow(2, k - 2));
    } else {
      // cyclic of order phi(p^k)
      r *= std::gcd(n, arith::ipow(p, k - 1) * (p - 1));
    }
  }
  return r;
}

} // namespace rfg::chevalley
