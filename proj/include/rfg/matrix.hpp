#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <span>
#include <string_view>
#include <vector>

#include "rfg/arith.hpp"

namespace rfg {

class ModMat;

/// Square matrix over Z, row-major, arbitrary precision entries.
class IntMat {
public:
  IntMat() = default;
  explicit IntMat(std::size_t n);
  IntMat(std::size_t n, std::vector<BigInt> entries);

  static IntMat identity(std::size_t n);
  /// I + a * e_{ij}, indices 0-based, i != j.
  static IntMat elementary(std::size_t n, std::size_t i, std::size_t j, const BigInt &a);
  /// Parses `a,b;c,d` (rows by ';', entries by ',').
  static IntMat parse(std::string_view text);

  std::size_t dim() const { return n_; }
  const BigInt &operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  BigInt &operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const std::vector<BigInt> &entries() const { return entries_; }

  BigInt det() const;
  bool is_identity() const;
  /// Exact inverse; throws DomainError unless det = +-1.
  IntMat inverse() const;
  IntMat pow(unsigned k) const;
  /// Largest absolute entry.
  BigInt max_abs_entry() const;

  std::string to_string() const;
  std::size_t hash() const;

  bool operator==(const IntMat &) const = default;

private:
  std::size_t n_ = 0;
  std::vector<BigInt> entries_;
};

IntMat operator*(const IntMat &a, const IntMat &b);

struct IntMatHash {
  std::size_t operator()(const IntMat &m) const { return m.hash(); }
};

/// Square matrix over Z/m with residues in [0, m), stored inline (n <= 4).
class ModMat {
public:
  static constexpr std::size_t kMaxDim = 4;

  ModMat() = default;
  ModMat(std::size_t n, std::uint64_t modulus);
  ModMat(std::size_t n, std::uint64_t modulus, std::span<const std::uint64_t> entries);

  static ModMat identity(std::size_t n, std::uint64_t modulus);
  static ModMat elementary(std::size_t n, std::uint64_t modulus, std::size_t i, std::size_t j,
                           std::uint64_t a);
  static ModMat scalar(std::size_t n, std::uint64_t modulus, std::uint64_t lambda);

  std::size_t dim() const { return n_; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::uint64_t &operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  std::span<const std::uint64_t> entries() const { return {entries_.data(), n_ * n_}; }

  std::uint64_t det() const;
  bool is_identity() const;
  bool is_scalar() const;
  /// Inverse via the adjugate; throws DomainError when det is not a unit.
  ModMat inverse() const;
  /// Entrywise reduction to a divisor of the modulus.
  ModMat reduce(std::uint64_t divisor) const;
  /// Mixed-radix code; requires modulus^(n^2) < 2^64.
  std::uint64_t code() const;
  static ModMat decode(std::size_t n, std::uint64_t modulus, std::uint64_t code);
  std::string to_string() const;

  bool operator==(const ModMat &) const = default;

private:
  std::size_t n_ = 0;
  std::uint64_t modulus_ = 0;
  std::array<std::uint64_t, kMaxDim * kMaxDim> entries_{};
};

struct ModMatHash {
  std::size_t operator()(const ModMat &m) const;
};

ModMat operator*(const ModMat &a, const ModMat &b);
ModMat operator+(const ModMat &a, const ModMat &b);
ModMat operator-(const ModMat &a, const ModMat &b);
/// g h g^-1 h^-1
ModMat commutator(const ModMat &g, const ModMat &h);

/// True when modulus^(n^2) fits the mixed-radix code.
bool codeable(std::size_t n, std::uint64_t modulus);

/// Entrywise reduction of an integer matrix.
ModMat reduce_mod(const IntMat &a, std::uint64_t m);

} // namespace rfg
