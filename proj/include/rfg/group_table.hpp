#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rfg/exec.hpp"
#include "rfg/group_spec.hpp"
#include "rfg/matrix.hpp"

namespace rfg::chevalley {

struct EnumerationOptions {
  std::uint64_t budget = 1'000'000;     // max group order
  std::uint64_t scan_limit = 50'000'000; // max candidates for a brute-force scan
  Exec exec = Exec::parallel;
};

struct PrimeLevel {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
};

/// Explicit G(Z/m): every element, sorted by mixed-radix code, with lookup.
/// Immutable after construction.
class FiniteGroupTable {
public:
  FiniteGroupTable(GroupSpec spec, std::uint64_t modulus, std::vector<ModMat> elements);

  const GroupSpec &spec() const { return spec_; }
  std::uint64_t modulus() const { return modulus_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ModMat> &elements() const { return elements_; }
  const ModMat &operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const ModMat &g) const;
  /// Index of g; throws DomainError if g is not in the table.
  std::size_t at(const ModMat &g) const;
  std::size_t product(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;
  std::size_t identity() const { return identity_; }

  /// Elementary matrices E_ij(1), i != j: a generating set.
  const std::vector<std::size_t> &generators() const { return generators_; }

  /// (p, k) when the modulus is a prime power.
  std::optional<PrimeLevel> prime_level() const;

private:
  GroupSpec spec_;
  std::uint64_t modulus_;
  std::vector<ModMat> elements_;
  std::vector<std::uint64_t> codes_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> generators_;
};

/// Exhaustive G(Z/m). Small instances are found by scanning every matrix
/// and testing det = 1; larger ones by closure from elementary generators.
/// Throws BudgetExceeded when order_mod(spec, m) exceeds the budget.
FiniteGroupTable enumerate_group(const GroupSpec &spec, std::uint64_t m, const EnumerationOptions &opts = {});

/// Scan-only enumeration of SL_n(Z/m) by determinant test, no formula.
std::vector<ModMat> scan_special_linear(const GroupSpec &spec, std::uint64_t m, Exec exec,
                                        std::uint64_t scan_limit = 50'000'000);

/// G_k^i = ker(G(Z/p^k) -> G(Z/p^i)), enumerated directly as 1 + p^i x.
std::vector<ModMat> enumerate_kernel(const GroupSpec &spec, std::uint64_t p, unsigned k, unsigned i,
                                     Exec exec = Exec::parallel, std::uint64_t scan_limit = 50'000'000);

/// Closure of a generating set inside SL_n(Z/m); result sorted by code.
std::vector<ModMat> closure(const std::vector<ModMat> &gens, std::uint64_t budget);

/// Lifts an element of SL_n(Z/d) to SL_n(Z/m) for d | m with gcd structure
/// such that the determinant of the naive lift is a unit mod m.
ModMat lift_special(const ModMat &g, std::uint64_t m);

/// Elementary generators E_ij(+-1) of SL_n(Z/m).
std::vector<ModMat> elementary_generators(const GroupSpec &spec, std::uint64_t m, bool with_inverses = true);

} // namespace rfg::chevalley
