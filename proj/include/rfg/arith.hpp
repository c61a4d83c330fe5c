#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace rfg {

using BigInt = mpz_class;

namespace arith {

/// Primality is only certified below this bound (first 13 primes as
/// Miller-Rabin witnesses); larger inputs are rejected.
BigInt primality_bound();

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower &) const = default;
};

/// Prime decomposition with strictly increasing primes.
class Factorization {
public:
  Factorization() = default;
  explicit Factorization(std::vector<PrimePower> factors);

  const std::vector<PrimePower> &factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  std::size_t size() const { return factors_.size(); }

  /// Product of prime^exponent.
  BigInt value() const;

  bool operator==(const Factorization &) const = default;

private:
  std::vector<PrimePower> factors_;
};

bool is_prime(std::uint64_t n);
bool is_prime(const BigInt &n);

/// Throws DomainError for n <= 0 or n above primality_bound().
Factorization factorize(const BigInt &n);

/// v_p(lcm(1..k)) = max{i : p^i <= k}.
unsigned lcm_valuation(std::uint64_t k, std::uint64_t p);

/// Smallest d >= 2 with d not dividing m. Always a prime power.
std::uint64_t least_nondivisor(const BigInt &m);

struct PrimePowerEntry {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  std::uint64_t value = 0;

  bool operator==(const PrimePowerEntry &) const = default;
};

/// All prime powers q = p^i with k < q <= limit, sorted by q. These are
/// exactly the prime powers not dividing lcm(1..k).
std::vector<PrimePowerEntry> prime_powers_above(std::uint64_t k, std::uint64_t limit);

/// Sieve of Eratosthenes; limit is capped at 1e8.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// lcm(1..k); only materialized for k <= 64.
BigInt lcm_upto(unsigned k);

/// If q = p^i with i >= 1, returns (p, i).
std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t q);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Inverse of a mod m; throws DomainError when gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// Residue of a BigInt in [0, m).
std::uint64_t mod_u64(const BigInt &a, std::uint64_t m);

/// Converts when the value fits, throws DomainError otherwise.
std::uint64_t to_u64(const BigInt &a);

/// log2 of a positive BigInt, accurate to double precision.
double log2(const BigInt &a);

std::string to_string(const Factorization &f);

/// Determinant of an n x n integer matrix (row-major), fraction-free
/// Bareiss elimination.
BigInt determinant(std::vector<BigInt> entries, std::size_t n);

} // namespace arith
} // namespace rfg
