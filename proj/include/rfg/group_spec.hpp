#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rfg/arith.hpp"

namespace rfg::chevalley {

/// A Chevalley family. Only SL_n is implemented; the accessors are the
/// interface other families would fill in.
class GroupSpec {
public:
  /// SL_n for n >= 2.
  static GroupSpec sl(unsigned n);
  /// Parses "sl2", "sl3", "sl4", ...
  static GroupSpec parse(std::string_view name);

  unsigned n() const { return n_; }
  unsigned dim() const { return n_ * n_ - 1; }
  unsigned rank() const { return n_ - 1; }
  /// ord Z(G) = n for SL_n.
  unsigned center_order() const { return n_; }
  std::string name() const { return "sl" + std::to_string(n_); }

  bool operator==(const GroupSpec &) const = default;

private:
  explicit GroupSpec(unsigned n) : n_(n) {}
  unsigned n_;
};

/// |SL_n(F_p)| = p^(n(n-1)/2) prod_{i=2..n} (p^i - 1).
BigInt order_fp(const GroupSpec &spec, std::uint64_t p);

/// |G(Z/m)|, multiplicative over coprime factors, with
/// |G(Z/p^k)| = p^((k-1) dim) |G(F_p)|.
BigInt order_mod(const GroupSpec &spec, std::uint64_t m);

/// |Z(G(Z/m))| = #{scalars lambda in (Z/m)^x with lambda^n = 1}.
std::uint64_t center_order_mod(const GroupSpec &spec, std::uint64_t m);

} // namespace rfg::chevalley
