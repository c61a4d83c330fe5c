#include "rfg/matgrp.hpp"

#include <omp.h>
#include <tuple>
#include <vector>

#include "rfg/errors.hpp"

namespace rfg::matgrp {

namespace {

bool better(const BigInt &order, std::uint64_t modulus, const DetectionResult &best) {
  return std::tie(order, modulus) < std::tie(best.quotient_order, best.modulus);
}

} // namespace

std::optional<BigInt> detection_gcd(const IntMat &a) {
  BigInt g = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      BigInt e = a(i, j);
      if (i == j)
        e -= 1;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    }
  if (g == 0)
    return std::nullopt;
  return g;
}

DetectionResult congruence_D(const IntMat &a, const GroupSpec &spec, bool allow_central) {
  if (a.dim() != spec.n())
    throw DomainError("matrix dimension does not match the group");
  const auto g = detection_gcd(a);
  if (!g)
    throw Undetectable("identity is undetectable");
  const unsigned dim = spec.dim();
  // |G(Z/q)| >= q^dim / 2 and the center has at most 2n elements (4 for
  // SL_2 mod 2^a), so once q^dim exceeds 4n * best no larger q can win.
  std::optional<DetectionResult> best;
  for (std::uint64_t q = 2;; ++q) {
    if (best) {
      BigInt qd;
      mpz_ui_pow_ui(qd.get_mpz_t(), q, dim);
      if (qd > 4 * spec.n() * best->quotient_order)
        break;
    }
    if (!arith::as_prime_power(q))
      continue;
    if (mpz_divisible_ui_p(g->get_mpz_t(), q))
      continue;
    BigInt order = order_mod(spec, q);
    bool central = false;
    if (allow_central) {
      const std::uint64_t z = chevalley::center_order_mod(spec, q);
      if (z > 1 && !reduce_mod(a, q).is_scalar()) {
        order /= z;
        central = true;
      }
    }
    if (!best || better(order, q, *best))
      best = DetectionResult{q, order, central};
  }
  return *best;
}

BruteForceResult brute_force_D(const IntMat &a, const GroupSpec &spec, std::uint64_t m_max, Exec exec) {
  if (a.dim() != spec.n())
    throw DomainError("matrix dimension does not match the group");
  if (a.is_identity())
    throw Undetectable("identity is undetectable");
  const std::int64_t count = m_max >= 2 ? static_cast<std::int64_t>(m_max - 1) : 0;
  // Per-modulus results first, then an ordered min; the parallel path only
  // changes who fills the slots.
  std::vector<std::optional<BigInt>> orders(static_cast<std::size_t>(count));
  auto visit = [&](std::int64_t idx) {
    const std::uint64_t m = static_cast<std::uint64_t>(idx) + 2;
    if (!reduce_mod(a, m).is_identity())
      orders[static_cast<std::size_t>(idx)] = order_mod(spec, m);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t idx = 0; idx < count; ++idx)
      visit(idx);
  } else {
    for (std::int64_t idx = 0; idx < count; ++idx)
      visit(idx);
  }
  std::optional<DetectionResult> best;
  std::uint64_t least_prime_power = 0;
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const auto &o = orders[static_cast<std::size_t>(idx)];
    if (!o)
      continue;
    const std::uint64_t m = static_cast<std::uint64_t>(idx) + 2;
    if (least_prime_power == 0 && arith::as_prime_power(m))
      least_prime_power = m;
    if (!best || better(*o, m, *best))
      best = DetectionResult{m, *o, false};
  }
  if (!best)
    throw LimitExceeded("no modulus up to " + std::to_string(m_max) + " detects the element");
  return {*best, least_prime_power == 0 || m_max < 2 * least_prime_power};
}

std::string to_string(const DetectionResult &d) {
  return "modulus=" + std::to_string(d.modulus) + ",order=" + d.quotient_order.get_str() +
         (d.central_quotient ? ",central" : "");
}

} // namespace rfg::matgrp
