#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rfg/exec.hpp"
#include "rfg/group_spec.hpp"
#include "rfg/matrix.hpp"

namespace rfg::matgrp {

using chevalley::GroupSpec;

/// Witness for the family-relative D(A): a congruence quotient G(Z/q), or
/// its central quotient, in which A survives.
struct DetectionResult {
  std::uint64_t modulus = 0;
  BigInt quotient_order;
  bool central_quotient = false;

  bool operator==(const DetectionResult &) const = default;
};

/// gcd of the entries of A - I; nullopt when A = I. A mod m is trivial iff
/// m divides the result.
std::optional<BigInt> detection_gcd(const IntMat &a);

/// Minimal order over congruence quotients G(Z/q), q a prime power, and,
/// with allow_central, their central quotients when A mod q is not scalar.
/// Ties go to the smaller modulus. Throws Undetectable for A = I.
DetectionResult congruence_D(const IntMat &a, const GroupSpec &spec, bool allow_central = false);

struct BruteForceResult {
  DetectionResult detection;
  /// The true minimum could lie beyond m_max.
  bool range_may_be_short = false;
};

/// Scans every modulus 2..m_max, reducing A directly; independent of the
/// prime-power search in congruence_D. Throws LimitExceeded when nothing in
/// range detects A.
BruteForceResult brute_force_D(const IntMat &a, const GroupSpec &spec, std::uint64_t m_max,
                               Exec exec = Exec::serial);

std::string to_string(const DetectionResult &d);

} // namespace rfg::matgrp
