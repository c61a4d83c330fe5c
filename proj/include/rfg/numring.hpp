#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rfg/arith.hpp"

namespace rfg::numring {

/// Integer polynomial, coefficients low-to-high.
using IntPoly = std::vector<BigInt>;

/// The monogenic order Z[x]/(f), optionally localized at an integer f0.
/// The power basis 1, x, ..., x^(d-1) serves as the integral basis.
class NumberRing {
public:
  /// Throws DomainError unless f is monic of degree >= 1, irreducible over Q,
  /// and f0 >= 1.
  NumberRing(IntPoly min_poly, BigInt inverted = 1);

  /// Parses `f = c0,c1,...,cd; invert = f0` (the invert clause is optional).
  static NumberRing parse(std::string_view text);

  const IntPoly &min_poly() const { return min_poly_; }
  const BigInt &inverted() const { return inverted_; }
  const BigInt &discriminant() const { return discriminant_; }
  unsigned degree() const { return static_cast<unsigned>(min_poly_.size() - 1); }

  /// Primes dividing disc(f) * f0; these are skipped by split-prime scans.
  bool is_bad_prime(std::uint64_t p) const;

  std::string to_string() const;

  bool operator==(const NumberRing &other) const {
    return min_poly_ == other.min_poly_ && inverted_ == other.inverted_;
  }

private:
  IntPoly min_poly_;
  BigInt inverted_;
  BigInt discriminant_;
};

/// Element (sum coords_i x^i) / f0^denom_exp, kept with minimal denom_exp.
class RingElement {
public:
  RingElement(std::shared_ptr<const NumberRing> ring, std::vector<BigInt> coords,
              unsigned denom_exp = 0);

  static RingElement from_integer(std::shared_ptr<const NumberRing> ring, const BigInt &value);

  const NumberRing &ring() const { return *ring_; }
  const std::shared_ptr<const NumberRing> &ring_ptr() const { return ring_; }
  const std::vector<BigInt> &coords() const { return coords_; }
  unsigned denom_exp() const { return denom_exp_; }
  bool is_zero() const;

  /// Largest absolute coordinate of the numerator.
  BigInt max_abs_coord() const;

  bool operator==(const RingElement &other) const;

private:
  void normalize();

  std::shared_ptr<const NumberRing> ring_;
  std::vector<BigInt> coords_;
  unsigned denom_exp_ = 0;
};

RingElement add(const RingElement &a, const RingElement &b);
RingElement mul(const RingElement &a, const RingElement &b);

enum class RingOp { add, mul };
RingElement ring_arithmetic(const RingElement &a, const RingElement &b, RingOp op);

struct SplitPrime {
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> roots; // ascending
};

/// Primes p <= limit, not dividing disc(f) * f0, at which f has deg(f)
/// distinct roots mod p.
std::vector<SplitPrime> split_primes(const NumberRing &ring, std::uint64_t limit);

/// Image of a under x -> root in F_p. Throws DomainError if p | f0 or
/// root is not a root of f mod p.
std::uint64_t reduce_element(const RingElement &a, std::uint64_t p, std::uint64_t root);

struct SplitDetection {
  std::uint64_t prime = 0;
  std::uint64_t root = 0;
  std::uint64_t residue = 0;
};

/// Smallest completely split prime with a root at which a survives.
/// Throws Undetectable for a = 0 and LimitExceeded if no prime <= limit works.
SplitDetection detect_split(const RingElement &a, std::uint64_t limit);

enum class IdealKind { split, inert, ramified, other };
std::string to_string(IdealKind kind);

struct PrimeIdeal {
  std::uint64_t prime = 0;
  std::vector<std::uint64_t> factor; // monic irreducible factor of f mod p, low-to-high
  unsigned residue_degree = 0;
  BigInt norm;                       // p^residue_degree = |residue field|
  IdealKind kind = IdealKind::other;
};

/// Brute force over all prime ideals (p, g(x)) of norm <= limit, minimizing
/// the residue field size among those where a is nonzero.
PrimeIdeal min_detecting_ideal(const RingElement &a, std::uint64_t limit);

/// Exhaustive irreducibility test over Q for a monic integer polynomial:
/// rational roots, factor-degree patterns mod small primes, then Hensel
/// lifting with recombination when the patterns are inconclusive.
bool is_irreducible(const IntPoly &f);

/// disc(f) for monic f.
BigInt discriminant(const IntPoly &f);

} // namespace rfg::numring
