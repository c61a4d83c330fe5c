#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "rfg/arith.hpp"

namespace rfg::examples {

/// Minimal detecting quotient inside a designated family.
struct QuotientWitness {
  std::uint64_t modulus = 0;
  BigInt order;
  /// "lamplighter" (Z/2 wr Z/m), "cyclic" (Z/d), "semidirect" ((Z/d)^2 x| Q), "abelian"
  std::string family;

  bool operator==(const QuotientWitness &) const = default;
};

// ---- Z/2 wr Z ----

/// (f, t): lamps f (finite support) and cursor shift t.
struct LampElement {
  std::set<std::int64_t> support;
  std::int64_t shift = 0;

  static LampElement delta(std::int64_t i) { return {{i}, 0}; }
  static LampElement step() { return {{}, 1}; }
  bool is_identity() const { return support.empty() && shift == 0; }
  bool operator==(const LampElement &) const = default;
};

/// (f, t)(g, s) = (f + g shifted by t, t + s)
LampElement operator*(const LampElement &a, const LampElement &b);
LampElement inverse(const LampElement &a);

/// Image in Z/2 wr Z/m.
struct FoldedLamp {
  std::uint64_t m = 0;
  std::vector<char> lamps;
  std::uint64_t shift = 0;

  bool is_identity() const;
  bool operator==(const FoldedLamp &) const = default;
};

FoldedLamp fold(const LampElement &a, std::uint64_t m);
FoldedLamp operator*(const FoldedLamp &a, const FoldedLamp &b);

/// delta_1 + delta_{1+lcm(1..k)}, or the literal delta_1 + delta_{lcm(1..k)};
/// materialized for k <= 40.
LampElement lamp_candidate(unsigned k, bool literal = false);

/// Minimal m for the candidate over Z/2 wr Z/m, from valuations; any k >= 2.
QuotientWitness lamp_quotient_D(unsigned k, bool literal = false);

/// Scan of the family {Z/d} u {Z/2 wr Z/m} for m, d <= m_max by folding.
QuotientWitness lamp_family_D(const LampElement &a, std::uint64_t m_max);

/// The set {(delta_n, t) : 1 <= n, t <= floor(k/4)} maps injectively into
/// Z/2 wr Z/m. Throws DomainError unless m detects the corrected candidate.
bool lamp_injectivity_certificate(unsigned k, std::uint64_t m);

// ---- Z^2 x| Q ----

using Mat2 = std::array<std::int64_t, 4>; // row-major

/// Q = <A, B>, A = diag(1, -1), B = swap; 8 elements, identity first.
const std::vector<Mat2> &q_group();

struct SemidirectElement {
  std::int64_t x = 0, y = 0;
  unsigned q = 0; // index into q_group()

  bool operator==(const SemidirectElement &) const = default;
};

/// (v, q)(w, r) = (v + q w, q r)
SemidirectElement operator*(const SemidirectElement &a, const SemidirectElement &b);
SemidirectElement inverse(const SemidirectElement &a);

/// Image in (Z/d)^2 x| Q, vector entries reduced to [0, d).
SemidirectElement quotient_image(const SemidirectElement &a, std::uint64_t d);

/// (lcm(1..k), 0) over the family (Z/d)^2 x| Q; order 8 d^2.
QuotientWitness semidirect_quotient_D(unsigned k);

/// Scan of the family for d <= d_max through quotient_image.
QuotientWitness semidirect_family_D(const SemidirectElement &a, std::uint64_t d_max);

struct KernelStructure {
  /// Q-invariant lattices V with dZ^2 in V checked
  std::size_t lattices = 0;
  /// largest [V : d'Z x d'Z] seen, d' the generator of V n (Z x 0)
  std::uint64_t max_index = 0;
  bool pass = false;
};

/// For every Q-invariant lattice V between dZ^2 and Z^2 (the kernels on
/// Delta of quotients through (Z/d)^2 x| Q): V n (Z x 0) = d'Z, and
/// d'Z x d'Z sits in V with index at most 4.
KernelStructure semidirect_kernel_structure_check(std::uint64_t d);

// ---- Z^n ----

/// Minimal finite abelian quotient detecting v: least non-divisor of gcd(v).
QuotientWitness abelian_D(const std::vector<BigInt> &v);

} // namespace rfg::examples
