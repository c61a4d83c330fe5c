#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rfg/group_table.hpp"
#include "rfg/report.hpp"

namespace rfg::chevalley {

struct CheckOptions {
  /// Pair families up to this size are checked exhaustively.
  std::uint64_t pair_budget = 10'000'000;
  /// Number of seeded random pairs otherwise.
  std::uint64_t samples = 200'000;
  /// Subspace enumeration limit for the irreducibility check.
  std::uint64_t subspace_budget = 2'000'000;
  std::uint64_t seed = 1;
  EnumerationOptions enumeration;
};

/// Elements commuting with every generator of the table.
std::vector<ModMat> center_of(const FiniteGroupTable &table);

/// G_k^i inside a table for modulus p^k.
std::vector<ModMat> filtration_subgroup(const FiniteGroupTable &table, unsigned i);

/// The graded map 1 + p^i x -> x mod p on G_k^i: trace zero image, kernel
/// G_k^{i+1}, onto sl_n(F_p), additive, and equivariant for lifts of G(F_p).
CheckReport moy_prasad_check(const GroupSpec &spec, std::uint64_t p, unsigned k, unsigned i,
                             const CheckOptions &opts = {});

/// [G_k^i, G_k^j] inside G_k^{i+j} for every 0 <= i <= j with i + j <= k.
CheckReport commutator_filtration_check(const GroupSpec &spec, std::uint64_t p, unsigned k,
                                        const CheckOptions &opts = {});

struct LieAlgebraBasis {
  std::uint64_t p = 0;
  unsigned n = 0;
  /// E_ij (i != j) in row-major order, then E_ii - E_{i+1,i+1}.
  std::vector<ModMat> basis;
};

LieAlgebraBasis lie_algebra(const GroupSpec &spec, std::uint64_t p);

/// Coordinates of a trace-zero matrix in the basis above.
std::vector<std::uint64_t> lie_coordinates(const LieAlgebraBasis &lie, const ModMat &x);

/// (a) sl_n(F_p) has no center, (b) no proper invariant subspace under the
/// adjoint action of the elementary generators, (c) the kernel of Ad on
/// G(F_p) is the scalars. Subspaces are enumerated exhaustively when few
/// enough, otherwise every line's invariant closure is computed.
CheckReport adjoint_irreducibility_check(const GroupSpec &spec, std::uint64_t p, const CheckOptions &opts = {});

/// True when g = z * h with z central scalar and h = I mod p^j.
bool in_level_times_center(const GroupSpec &spec, const ModMat &g, std::uint64_t p, unsigned k, unsigned j);

/// Searches h in G_k^1 with [h, g] in G_k^{i+1} minus G_k^{i+2} Z. Candidates
/// are lifts 1 + p y of sl_n(F_p) elements, basis first. Throws DomainError
/// when the preconditions fail; nullopt means no witness was found.
std::optional<ModMat> annuli_witness(const GroupSpec &spec, std::uint64_t p, unsigned k, const ModMat &g,
                                     unsigned i);

struct NormalSubgroup {
  std::size_t size = 0;
  /// i with N = G_k^i Z, when there is one.
  std::optional<unsigned> level;
};

struct NormalSubgroupReport {
  std::vector<NormalSubgroup> subgroups; // ascending by size
  unsigned distinct_levels = 0;
  std::size_t conjugacy_classes = 0;
  /// every subgroup is a level and every level occurs
  bool matches_levels = false;
};

NormalSubgroupReport normal_subgroups_containing_center(const FiniteGroupTable &table);

/// Center of G/Z is trivial, by brute force on lifts.
CheckReport centerless_quotient_check(const FiniteGroupTable &table);

/// Reduction Z(G(Z/p^k)) -> Z(G(Z/p^(k-1))) is bijective.
CheckReport center_reduction_check(const GroupSpec &spec, std::uint64_t p, unsigned k,
                                   const CheckOptions &opts = {});

/// Images of the level-N congruence kernel generate G(Z/m). Exact for
/// N = 1; for N > 1 uses conjugates of E_ij(N) by `trials` seeded words and
/// reports inconclusive when the closure falls short.
CheckReport strong_approx_check(const GroupSpec &spec, std::uint64_t level, std::uint64_t m, unsigned trials,
                                const CheckOptions &opts = {});

/// |enumerate_group| against order_mod.
CheckReport order_check(const GroupSpec &spec, std::uint64_t m, const CheckOptions &opts = {});

} // namespace rfg::chevalley
