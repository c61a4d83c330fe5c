#include "rfg/group_table.hpp"

#include <algorithm>
#include <deque>
#include <omp.h>
#include <unordered_set>

#include "rfg/errors.hpp"

namespace rfg::chevalley {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  unsigned __int128 v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    v *= base;
    if (v > cap)
      return cap + 1;
  }
  return static_cast<std::uint64_t>(v);
}

// Runs body(code) for code in [0, total) and keeps the codes it accepts,
// preserving ascending order in both paths.
template <typename Accept>
std::vector<std::uint64_t> filter_codes(std::uint64_t total, Exec exec, Accept accept) {
  std::vector<std::uint64_t> out;
  if (exec == Exec::serial) {
    for (std::uint64_t c = 0; c < total; ++c)
      if (accept(c))
        out.push_back(c);
    return out;
  }
  const std::uint64_t chunk = 1 << 16;
  const std::int64_t nchunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
  std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(nchunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < nchunks; ++b) {
    const std::uint64_t lo = static_cast<std::uint64_t>(b) * chunk;
    const std::uint64_t hi = std::min(total, lo + chunk);
    auto &part = parts[static_cast<std::size_t>(b)];
    for (std::uint64_t c = lo; c < hi; ++c)
      if (accept(c))
        part.push_back(c);
  }
  for (auto &part : parts)
    out.insert(out.end(), part.begin(), part.end());
  return out;
}

} // namespace

FiniteGroupTable::FiniteGroupTable(GroupSpec spec, std::uint64_t modulus, std::vector<ModMat> elements)
    : spec_(spec), modulus_(modulus), elements_(std::move(elements)) {
  if (!codeable(spec_.n(), modulus_))
    throw DomainError("group table needs modulus^(n^2) < 2^64");
  std::sort(elements_.begin(), elements_.end(),
            [](const ModMat &a, const ModMat &b) { return a.code() < b.code(); });
  codes_.reserve(elements_.size());
  for (const auto &g : elements_)
    codes_.push_back(g.code());
  if (std::adjacent_find(codes_.begin(), codes_.end()) != codes_.end())
    throw DomainError("group table has duplicate elements");
  identity_ = at(ModMat::identity(spec_.n(), modulus_));
  for (std::size_t i = 0; i < spec_.n(); ++i)
    for (std::size_t j = 0; j < spec_.n(); ++j)
      if (i != j)
        generators_.push_back(at(ModMat::elementary(spec_.n(), modulus_, i, j, 1)));
}

std::optional<std::size_t> FiniteGroupTable::index_of(const ModMat &g) const {
  if (g.modulus() != modulus_ || g.dim() != spec_.n())
    return std::nullopt;
  const std::uint64_t c = g.code();
  auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
  if (it == codes_.end() || *it != c)
    return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

std::size_t FiniteGroupTable::at(const ModMat &g) const {
  auto idx = index_of(g);
  if (!idx)
    throw DomainError("element not in group table: " + g.to_string());
  return *idx;
}

std::size_t FiniteGroupTable::product(std::size_t i, std::size_t j) const {
  return at(elements_[i] * elements_[j]);
}

std::size_t FiniteGroupTable::inverse(std::size_t i) const { return at(elements_[i].inverse()); }

std::optional<PrimeLevel> FiniteGroupTable::prime_level() const {
  auto pp = arith::as_prime_power(modulus_);
  if (!pp)
    return std::nullopt;
  return PrimeLevel{pp->first, pp->second};
}

std::vector<ModMat> scan_special_linear(const GroupSpec &spec, std::uint64_t m, Exec exec,
                                        std::uint64_t scan_limit) {
  const std::size_t n = spec.n();
  const std::uint64_t total = checked_pow(m, n * n, scan_limit);
  if (total > scan_limit)
    throw BudgetExceeded("scan of M_n(Z/m) exceeds the scan limit");
  auto codes = filter_codes(total, exec, [&](std::uint64_t c) {
    return ModMat::decode(n, m, c).det() == 1 % m;
  });
  std::vector<ModMat> out;
  out.reserve(codes.size());
  for (auto c : codes)
    out.push_back(ModMat::decode(n, m, c));
  return out;
}

std::vector<ModMat> elementary_generators(const GroupSpec &spec, std::uint64_t m, bool with_inverses) {
  std::vector<ModMat> gens;
  const std::size_t n = spec.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j)
        continue;
      gens.push_back(ModMat::elementary(n, m, i, j, 1));
      if (with_inverses && m > 2)
        gens.push_back(ModMat::elementary(n, m, i, j, m - 1));
    }
  return gens;
}

std::vector<ModMat> closure(const std::vector<ModMat> &gens, std::uint64_t budget) {
  if (gens.empty())
    throw DomainError("closure needs at least one generator");
  const std::size_t n = gens.front().dim();
  const std::uint64_t m = gens.front().modulus();
  std::unordered_set<ModMat, ModMatHash> seen;
  std::vector<ModMat> order{ModMat::identity(n, m)};
  seen.insert(order.front());
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto &s : gens) {
      ModMat y = order[head] * s;
      if (seen.insert(y).second) {
        order.push_back(y);
        if (order.size() > budget)
          throw BudgetExceeded("closure exceeds the element budget");
      }
    }
  }
  if (codeable(n, m))
    std::sort(order.begin(), order.end(), [](const ModMat &a, const ModMat &b) { return a.code() < b.code(); });
  return order;
}

FiniteGroupTable enumerate_group(const GroupSpec &spec, std::uint64_t m, const EnumerationOptions &opts) {
  if (m < 2)
    throw DomainError("enumerate_group needs m >= 2");
  const BigInt order = order_mod(spec, m);
  if (order > opts.budget)
    throw BudgetExceeded("|G(Z/" + std::to_string(m) + ")| = " + order.get_str() + " exceeds the budget");
  const std::uint64_t total = checked_pow(m, spec.n() * spec.n(), opts.scan_limit);
  std::vector<ModMat> elems = total <= opts.scan_limit
                                  ? scan_special_linear(spec, m, opts.exec, opts.scan_limit)
                                  : closure(elementary_generators(spec, m), opts.budget);
  return FiniteGroupTable(spec, m, std::move(elems));
}

std::vector<ModMat> enumerate_kernel(const GroupSpec &spec, std::uint64_t p, unsigned k, unsigned i, Exec exec,
                                     std::uint64_t scan_limit) {
  if (i > k || k == 0)
    throw DomainError("filtration index out of range");
  const std::size_t n = spec.n();
  const std::uint64_t m = arith::ipow(p, k);
  if (i == 0)
    return scan_special_linear(spec, m, exec, scan_limit);
  const std::uint64_t pi = arith::ipow(p, i);
  const std::uint64_t base = arith::ipow(p, k - i);
  const std::uint64_t total = checked_pow(base, n * n, scan_limit);
  if (total > scan_limit)
    throw BudgetExceeded("kernel scan exceeds the scan limit");
  auto build = [&](std::uint64_t c) {
    ModMat x = ModMat::decode(n, base, c);
    ModMat g(n, m);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s)
        g(r, s) = (pi * x(r, s) + (r == s ? 1 : 0)) % m;
    return g;
  };
  auto codes = filter_codes(total, exec, [&](std::uint64_t c) { return build(c).det() == 1 % m; });
  std::vector<ModMat> out;
  out.reserve(codes.size());
  for (auto c : codes)
    out.push_back(build(c));
  return out;
}

ModMat lift_special(const ModMat &g, std::uint64_t m) {
  const std::size_t n = g.dim();
  ModMat h(n, m);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      h(r, s) = g(r, s);
  const std::uint64_t dinv = arith::invmod(h.det(), m);
  for (std::size_t s = 0; s < n; ++s)
    h(0, s) = arith::mulmod(h(0, s), dinv, m);
  return h;
}

} // namespace rfg::chevalley
