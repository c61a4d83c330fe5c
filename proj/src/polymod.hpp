#pragma once

// Dense univariate polynomials over F_p, coefficients low-to-high. Internal
// helper for the number-ring module; p is a prime below 2^63.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace rfg::polymod {

using Poly = std::vector<std::uint64_t>;

void trim(Poly &a);
int degree(const Poly &a); // -1 for the zero polynomial
bool is_zero(const Poly &a);

Poly add(const Poly &a, const Poly &b, std::uint64_t p);
Poly sub(const Poly &a, const Poly &b, std::uint64_t p);
Poly mul(const Poly &a, const Poly &b, std::uint64_t p);
std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b, std::uint64_t p);
Poly rem(const Poly &a, const Poly &b, std::uint64_t p);
Poly monic(const Poly &a, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
Poly powmod(const Poly &base, const mpz_class &e, const Poly &f, std::uint64_t p);
std::uint64_t eval(const Poly &a, std::uint64_t x, std::uint64_t p);

/// Reduces integer coefficients into F_p.
Poly from_integers(const std::vector<mpz_class> &coeffs, std::uint64_t p);

/// Distinct roots of f in F_p, ascending.
std::vector<std::uint64_t> roots(const Poly &f, std::uint64_t p);

/// Distinct monic irreducible factors of f (f need not be squarefree),
/// sorted by degree then coefficients.
std::vector<Poly> distinct_irreducible_factors(const Poly &f, std::uint64_t p);

/// Extended Euclid: returns (s, t) with s*a + t*b = 1 for coprime a, b.
std::pair<Poly, Poly> bezout(const Poly &a, const Poly &b, std::uint64_t p);

} // namespace rfg::polymod
