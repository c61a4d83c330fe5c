#include "rfg/matrix.hpp"

#include <sstream>

#include "rfg/errors.hpp"

namespace rfg {

namespace {

// Determinant of the minor with row r and column c removed, generic over
// the entry type through the supplied determinant function.
template <typename T, typename Det>
T minor_det(const std::vector<T> &a, std::size_t n, std::size_t r, std::size_t c, Det det) {
  std::vector<T> m;
  m.reserve((n - 1) * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == r)
      continue;
    for (std::size_t j = 0; j < n; ++j)
      if (j != c)
        m.push_back(a[i * n + j]);
  }
  return det(m, n - 1);
}

using Small = std::array<std::uint64_t, ModMat::kMaxDim * ModMat::kMaxDim>;

// Determinant of the k x k matrix stored row-major in the first k*k slots.
std::uint64_t det_small(const Small &a, std::size_t k, std::uint64_t m) {
  using arith::mulmod;
  switch (k) {
  case 0:
    return 1 % m;
  case 1:
    return a[0] % m;
  case 2:
    return (mulmod(a[0], a[3], m) + m - mulmod(a[1], a[2], m)) % m;
  default:
    break;
  }
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (a[j] == 0)
      continue;
    Small minor{};
    std::size_t t = 0;
    for (std::size_t r = 1; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (c != j)
          minor[t++] = a[r * k + c];
    const std::uint64_t term = mulmod(a[j], det_small(minor, k - 1, m), m);
    total = (j % 2 == 0) ? (total + term) % m : (total + m - term) % m;
  }
  return total;
}

std::uint64_t cofactor_small(const Small &a, std::size_t k, std::size_t r, std::size_t c, std::uint64_t m) {
  Small minor{};
  std::size_t t = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i == r)
      continue;
    for (std::size_t j = 0; j < k; ++j)
      if (j != c)
        minor[t++] = a[i * k + j];
  }
  std::uint64_t d = det_small(minor, k - 1, m);
  return ((r + c) % 2 == 1) ? (m - d) % m : d;
}

} // namespace

IntMat::IntMat(std::size_t n) : n_(n), entries_(n * n, 0) {}

IntMat::IntMat(std::size_t n, std::vector<BigInt> entries) : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n * n)
    throw DomainError("matrix entry count does not match dimension");
}

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMat IntMat::elementary(std::size_t n, std::size_t i, std::size_t j, const BigInt &a) {
  if (i == j || i >= n || j >= n)
    throw DomainError("elementary matrix needs distinct in-range indices");
  IntMat m = identity(n);
  m(i, j) = a;
  return m;
}

IntMat IntMat::parse(std::string_view text) {
  std::vector<std::vector<BigInt>> rows;
  std::stringstream ss{std::string(text)};
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<BigInt> r;
    std::stringstream rs(row);
    std::string tok;
    while (std::getline(rs, tok, ',')) {
      std::size_t b = tok.find_first_not_of(" \t");
      std::size_t e = tok.find_last_not_of(" \t");
      if (b == std::string::npos)
        throw DomainError("empty matrix entry");
      BigInt v;
      if (v.set_str(tok.substr(b, e - b + 1), 10) != 0)
        throw DomainError("bad matrix entry: '" + tok + "'");
      r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  const std::size_t n = rows.size();
  if (n == 0)
    throw DomainError("empty matrix");
  std::vector<BigInt> entries;
  for (auto &r : rows) {
    if (r.size() != n)
      throw DomainError("matrix must be square");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return IntMat(n, std::move(entries));
}

BigInt IntMat::det() const { return arith::determinant(entries_, n_); }

bool IntMat::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0))
        return false;
  return true;
}

IntMat IntMat::inverse() const {
  const BigInt d = det();
  if (d != 1 && d != -1)
    throw DomainError("integer matrix is not invertible over Z");
  if (n_ == 1)
    return IntMat(1, {d});
  IntMat inv(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      BigInt c = minor_det(entries_, n_, j, i, [](const std::vector<BigInt> &x, std::size_t k) {
        return arith::determinant(x, k);
      });
      if ((i + j) % 2 == 1)
        c = -c;
      inv(i, j) = c * d;
    }
  return inv;
}

IntMat IntMat::pow(unsigned k) const {
  IntMat r = identity(n_), b = *this;
  while (k) {
    if (k & 1)
      r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

BigInt IntMat::max_abs_entry() const {
  BigInt m = 0;
  for (const auto &e : entries_)
    if (abs(e) > m)
      m = abs(e);
  return m;
}

std::string IntMat::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i)
      s += ";";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j)
        s += ",";
      s += (*this)(i, j).get_str();
    }
  }
  return s;
}

std::size_t IntMat::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (const auto &e : entries_) {
    std::size_t v = mpz_getlimbn(e.get_mpz_t(), 0);
    v ^= static_cast<std::size_t>(mpz_sgn(e.get_mpz_t()) + 1) << 61;
    h = (h ^ v) * 1099511628211ULL;
    h ^= h >> 29;
  }
  return h;
}

IntMat operator*(const IntMat &a, const IntMat &b) {
  if (a.dim() != b.dim())
    throw DomainError("matrix dimensions differ");
  const std::size_t n = a.dim();
  IntMat c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const BigInt &aik = a(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        c(i, j) += aik * b(k, j);
    }
  return c;
}

ModMat::ModMat(std::size_t n, std::uint64_t modulus) : n_(n), modulus_(modulus) {
  if (modulus < 1)
    throw DomainError("modulus must be positive");
  if (n > kMaxDim)
    throw DomainError("modular matrices are limited to dimension 4");
}

ModMat::ModMat(std::size_t n, std::uint64_t modulus, std::span<const std::uint64_t> entries)
    : ModMat(n, modulus) {
  if (entries.size() != n * n)
    throw DomainError("matrix entry count does not match dimension");
  for (std::size_t i = 0; i < entries.size(); ++i)
    entries_[i] = entries[i] % modulus_;
}

ModMat ModMat::identity(std::size_t n, std::uint64_t modulus) { return scalar(n, modulus, 1); }

ModMat ModMat::scalar(std::size_t n, std::uint64_t modulus, std::uint64_t lambda) {
  ModMat m(n, modulus);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = lambda % modulus;
  return m;
}

ModMat ModMat::elementary(std::size_t n, std::uint64_t modulus, std::size_t i, std::size_t j,
                          std::uint64_t a) {
  if (i == j || i >= n || j >= n)
    throw DomainError("elementary matrix needs distinct in-range indices");
  ModMat m = identity(n, modulus);
  m(i, j) = a % modulus;
  return m;
}

std::uint64_t ModMat::det() const { return det_small(entries_, n_, modulus_); }

bool ModMat::is_identity() const { return is_scalar() && (n_ == 0 || entries_[0] == 1 % modulus_); }

bool ModMat::is_scalar() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && (*this)(i, j) != 0)
        return false;
      if (i == j && (*this)(i, j) != entries_[0])
        return false;
    }
  return true;
}

ModMat ModMat::inverse() const {
  const std::uint64_t m = modulus_;
  const std::uint64_t dinv = arith::invmod(det(), m);
  ModMat inv(n_, m);
  if (n_ == 1) {
    inv(0, 0) = dinv;
    return inv;
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      inv(i, j) = arith::mulmod(cofactor_small(entries_, n_, j, i, m), dinv, m);
  return inv;
}

ModMat ModMat::reduce(std::uint64_t divisor) const {
  if (divisor == 0 || modulus_ % divisor != 0)
    throw DomainError("reduction target must divide the modulus");
  return ModMat(n_, divisor, entries());
}

bool codeable(std::size_t n, std::uint64_t modulus) {
  unsigned __int128 v = 1;
  for (std::size_t i = 0; i < n * n; ++i) {
    v *= modulus;
    if (v > static_cast<unsigned __int128>(UINT64_MAX))
      return false;
  }
  return true;
}

std::uint64_t ModMat::code() const {
  std::uint64_t c = 0;
  for (auto e : entries())
    c = c * modulus_ + e;
  return c;
}

ModMat ModMat::decode(std::size_t n, std::uint64_t modulus, std::uint64_t code) {
  ModMat out(n, modulus);
  for (std::size_t i = n * n; i-- > 0;) {
    out.entries_[i] = code % modulus;
    code /= modulus;
  }
  return out;
}

std::string ModMat::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i)
      s += ";";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j)
        s += ",";
      s += std::to_string((*this)(i, j));
    }
  }
  return s;
}

std::size_t ModMatHash::operator()(const ModMat &m) const {
  std::size_t h = 1469598103934665603ULL ^ m.modulus();
  for (auto e : m.entries()) {
    h = (h ^ e) * 1099511628211ULL;
    h ^= h >> 31;
  }
  return h;
}

ModMat operator*(const ModMat &a, const ModMat &b) {
  if (a.dim() != b.dim() || a.modulus() != b.modulus())
    throw DomainError("matrix dimensions or moduli differ");
  const std::size_t n = a.dim();
  const std::uint64_t m = a.modulus();
  ModMat c(n, m);
  if (m <= (1ULL << 30)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < n; ++k)
          s += a(i, k) * b(k, j);
        c(i, j) = s % m;
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t s = 0;
        for (std::size_t k = 0; k < n; ++k)
          s = (s + arith::mulmod(a(i, k), b(k, j), m)) % m;
        c(i, j) = s;
      }
  }
  return c;
}

ModMat operator+(const ModMat &a, const ModMat &b) {
  ModMat c(a.dim(), a.modulus());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      c(i, j) = (a(i, j) + b(i, j)) % a.modulus();
  return c;
}

ModMat operator-(const ModMat &a, const ModMat &b) {
  ModMat c(a.dim(), a.modulus());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      c(i, j) = (a(i, j) + a.modulus() - b(i, j)) % a.modulus();
  return c;
}

ModMat commutator(const ModMat &g, const ModMat &h) { return g * h * g.inverse() * h.inverse(); }

ModMat reduce_mod(const IntMat &a, std::uint64_t m) {
  if (m < 1)
    throw DomainError("modulus must be positive");
  ModMat out(a.dim(), m);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      out(i, j) = arith::mod_u64(a(i, j), m);
  return out;
}

} // namespace rfg
