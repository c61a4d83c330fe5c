#include "rfg/chevalley.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "rfg/errors.hpp"
#include "rfg/rng.hpp"

namespace rfg::chevalley {

using arith::invmod;
using arith::ipow;
using arith::mulmod;

namespace {

std::string level_name(const GroupSpec &spec, std::uint64_t m) { return spec.name() + " mod " + std::to_string(m); }

bool congruent_identity(const ModMat &g, std::uint64_t q) {
  const std::size_t n = g.dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      if ((g(r, s) + q - (r == s ? 1 : 0)) % q != 0)
        return false;
  return true;
}

// Pair checks: exhaustive over A x B when it fits the budget, else seeded
// sampling. pred must be pure; it runs concurrently.
struct PairOutcome {
  bool ok = true;
  bool exhaustive = true;
  std::uint64_t tested = 0;
};

template <typename Pred>
PairOutcome check_pairs(std::uint64_t na, std::uint64_t nb, const CheckOptions &opts, Rng &rng, Pred pred) {
  PairOutcome out;
  const unsigned __int128 total = static_cast<unsigned __int128>(na) * nb;
  std::atomic<bool> bad{false};
  if (total <= opts.pair_budget) {
    out.tested = static_cast<std::uint64_t>(total);
    if (opts.enumeration.exec == Exec::serial) {
      for (std::uint64_t a = 0; a < na && !bad; ++a)
        for (std::uint64_t b = 0; b < nb; ++b)
          if (!pred(a, b)) {
            bad = true;
            break;
          }
    } else {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t a = 0; a < static_cast<std::int64_t>(na); ++a) {
        if (bad.load(std::memory_order_relaxed))
          continue;
        for (std::uint64_t b = 0; b < nb; ++b)
          if (!pred(static_cast<std::uint64_t>(a), b)) {
            bad = true;
            break;
          }
      }
    }
  } else {
    out.exhaustive = false;
    out.tested = opts.samples;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> picks(opts.samples);
    for (auto &pk : picks)
      pk = {rng.below(na), rng.below(nb)};
    if (opts.enumeration.exec == Exec::serial) {
      for (const auto &pk : picks)
        if (!pred(pk.first, pk.second)) {
          bad = true;
          break;
        }
    } else {
#pragma omp parallel for schedule(static)
      for (std::int64_t t = 0; t < static_cast<std::int64_t>(picks.size()); ++t)
        if (!bad.load(std::memory_order_relaxed) && !pred(picks[t].first, picks[t].second))
          bad = true;
    }
  }
  out.ok = !bad;
  return out;
}

const char *mode(const PairOutcome &o) { return o.exhaustive ? "exhaustive" : "sampled"; }

// (h - I) / p^i mod p, or nullopt when h is not I mod p^i.
std::optional<ModMat> graded_image(const ModMat &h, std::uint64_t p, std::uint64_t pi) {
  const std::size_t n = h.dim();
  const std::uint64_t m = h.modulus();
  ModMat x(n, p);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint64_t e = (h(r, s) + m - (r == s ? 1 : 0)) % m;
      if (e % pi != 0)
        return std::nullopt;
      x(r, s) = (e / pi) % p;
    }
  return x;
}

std::uint64_t trace(const ModMat &x) {
  std::uint64_t t = 0;
  for (std::size_t r = 0; r < x.dim(); ++r)
    t = (t + x(r, r)) % x.modulus();
  return t;
}

// Scalars lambda mod m with lambda^n = 1.
std::vector<std::uint64_t> central_scalars(unsigned n, std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t l = 1; l < m; ++l)
    if (std::gcd(l, m) == 1 && arith::powmod(l, n, m) == 1)
      out.push_back(l);
  if (m == 1)
    out.push_back(0);
  return out;
}

// G(F_p) as a list: scan when small, closure otherwise.
std::vector<ModMat> group_fp(const GroupSpec &spec, std::uint64_t p, const CheckOptions &opts) {
  const std::uint64_t total = ipow(p, spec.n() * spec.n());
  if (total <= opts.enumeration.scan_limit && total / p <= opts.enumeration.scan_limit)
    return scan_special_linear(spec, p, opts.enumeration.exec, opts.enumeration.scan_limit);
  return closure(elementary_generators(spec, p), opts.enumeration.budget);
}

// Row echelon basis over F_p, used for spans and invariance tests.
class Echelon {
public:
  Echelon(std::uint64_t p, std::size_t dim) : p_(p), dim_(dim) {}

  std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> v) const {
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      const std::uint64_t c = v[pivots_[t]];
      if (c == 0)
        continue;
      for (std::size_t j = 0; j < dim_; ++j)
        v[j] = (v[j] + p_ - mulmod(c, rows_[t][j], p_)) % p_;
    }
    return v;
  }

  bool contains(const std::vector<std::uint64_t> &v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; });
  }

  /// Adds v to the span; false when already inside.
  bool insert(const std::vector<std::uint64_t> &v) {
    auto r = reduce(v);
    std::size_t piv = 0;
    while (piv < dim_ && r[piv] == 0)
      ++piv;
    if (piv == dim_)
      return false;
    const std::uint64_t inv = invmod(r[piv], p_);
    for (auto &x : r)
      x = mulmod(x, inv, p_);
    for (auto &row : rows_) {
      const std::uint64_t c = row[piv];
      if (c == 0)
        continue;
      for (std::size_t j = 0; j < dim_; ++j)
        row[j] = (row[j] + p_ - mulmod(c, r[j], p_)) % p_;
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<std::uint64_t>> &rows() const { return rows_; }

private:
  std::uint64_t p_;
  std::size_t dim_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

using Operator = std::vector<std::vector<std::uint64_t>>; // columns

std::vector<std::uint64_t> apply(const Operator &op, const std::vector<std::uint64_t> &v, std::uint64_t p) {
  std::vector<std::uint64_t> out(v.size(), 0);
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] == 0)
      continue;
    for (std::size_t r = 0; r < v.size(); ++r)
      out[r] = (out[r] + mulmod(op[c][r], v[c], p)) % p;
  }
  return out;
}

bool invariant(const Echelon &w, const std::vector<Operator> &ops, std::uint64_t p) {
  for (const auto &op : ops)
    for (const auto &row : w.rows())
      if (!w.contains(apply(op, row, p)))
        return false;
  return true;
}

std::uint64_t count_subspaces(std::uint64_t p, unsigned dim, std::uint64_t cap) {
  // sum over r of the Gaussian binomial [dim, r]_p, saturating at cap
  long double total = 0;
  for (unsigned r = 1; r < dim; ++r) {
    long double g = 1;
    for (unsigned t = 0; t < r; ++t)
      g *= (std::pow((long double)p, dim - t) - 1) / (std::pow((long double)p, t + 1) - 1);
    total += g;
    if (total > cap)
      return cap + 1;
  }
  return static_cast<std::uint64_t>(total + 0.5L);
}

// Calls visit(echelon) for every proper nonzero subspace, via reduced row
// echelon forms; stops early when visit returns false.
template <typename Visit>
bool for_each_subspace(std::uint64_t p, unsigned dim, Visit visit) {
  for (unsigned r = 1; r < dim; ++r) {
    std::vector<unsigned> piv(r);
    std::iota(piv.begin(), piv.end(), 0u);
    while (true) {
      std::vector<std::pair<unsigned, unsigned>> free; // (row, column)
      for (unsigned t = 0; t < r; ++t)
        for (unsigned c = piv[t] + 1; c < dim; ++c)
          if (std::find(piv.begin(), piv.end(), c) == piv.end())
            free.emplace_back(t, c);
      std::vector<std::uint64_t> digits(free.size(), 0);
      while (true) {
        std::vector<std::vector<std::uint64_t>> rows(r, std::vector<std::uint64_t>(dim, 0));
        for (unsigned t = 0; t < r; ++t)
          rows[t][piv[t]] = 1;
        for (std::size_t f = 0; f < free.size(); ++f)
          rows[free[f].first][free[f].second] = digits[f];
        Echelon e(p, dim);
        for (const auto &row : rows)
          e.insert(row);
        if (!visit(e))
          return false;
        std::size_t f = 0;
        while (f < digits.size() && ++digits[f] == p)
          digits[f++] = 0;
        if (f == digits.size())
          break;
      }
      // next combination of pivot columns
      int t = static_cast<int>(r) - 1;
      while (t >= 0 && piv[t] == dim - r + static_cast<unsigned>(t))
        --t;
      if (t < 0)
        break;
      ++piv[t];
      for (unsigned u = static_cast<unsigned>(t) + 1; u < r; ++u)
        piv[u] = piv[u - 1] + 1;
    }
  }
  return true;
}

ModMat lift_unipotent(const ModMat &y, std::uint64_t p, std::uint64_t m) {
  const std::size_t n = y.dim();
  ModMat h = ModMat::identity(n, m);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      h(r, s) = (h(r, s) + mulmod(p, y(r, s), m)) % m;
  return lift_special(h, m);
}

} // namespace

std::vector<ModMat> center_of(const FiniteGroupTable &table) {
  std::vector<ModMat> out;
  for (const auto &g : table.elements()) {
    bool central = true;
    for (auto s : table.generators())
      if (g * table[s] != table[s] * g) {
        central = false;
        break;
      }
    if (central)
      out.push_back(g);
  }
  return out;
}

std::vector<ModMat> filtration_subgroup(const FiniteGroupTable &table, unsigned i) {
  auto level = table.prime_level();
  if (!level)
    throw DomainError("filtration needs a prime power modulus");
  if (i > level->exponent)
    throw DomainError("filtration index out of range");
  if (i == 0)
    return table.elements();
  const std::uint64_t q = ipow(level->prime, i);
  std::vector<ModMat> out;
  for (const auto &g : table.elements())
    if (congruent_identity(g, q))
      out.push_back(g);
  return out;
}

CheckReport moy_prasad_check(const GroupSpec &spec, std::uint64_t p, unsigned k, unsigned i,
                             const CheckOptions &opts) {
  if (!arith::is_prime(p))
    throw DomainError("moy_prasad_check needs a prime");
  if (i < 1 || i + 1 > k)
    throw DomainError("moy_prasad_check needs 1 <= i <= k-1");
  CheckReport rep{"moy-prasad", level_name(spec, ipow(p, k)) + " i=" + std::to_string(i), CheckStatus::pass, ""};
  const auto &ex = opts.enumeration;
  const std::uint64_t m = ipow(p, k);
  const std::uint64_t pi = ipow(p, i);
  const auto gi = enumerate_kernel(spec, p, k, i, ex.exec, ex.scan_limit);

  std::vector<ModMat> image(gi.size());
  bool well_defined = true;
  std::unordered_set<std::uint64_t> seen;
  std::uint64_t kernel = 0;
  for (std::size_t t = 0; t < gi.size(); ++t) {
    auto x = graded_image(gi[t], p, pi);
    if (!x || trace(*x) != 0) {
      well_defined = false;
      break;
    }
    image[t] = *x;
    seen.insert(x->code());
    const bool zero = x->is_scalar() && (*x)(0, 0) == 0;
    // the kernel must be exactly the next filtration step
    if (zero != congruent_identity(gi[t], pi * p))
      well_defined = false;
    kernel += zero;
  }
  const bool bijective = well_defined && seen.size() == ipow(p, spec.dim()) &&
                         kernel == ipow(p, (k - i - 1) * spec.dim());

  Rng rng(opts.seed);
  auto hom = check_pairs(gi.size(), gi.size(), opts, rng, [&](std::uint64_t a, std::uint64_t b) {
    auto x = graded_image(gi[a] * gi[b], p, pi);
    return x && *x == image[a] + image[b];
  });

  const auto gfp = group_fp(spec, p, opts);
  std::vector<ModMat> lifts, lift_inv, gfp_inv;
  for (const auto &g : gfp) {
    lifts.push_back(lift_special(g, m));
    lift_inv.push_back(lifts.back().inverse());
    gfp_inv.push_back(g.inverse());
  }
  auto equi = check_pairs(gfp.size(), gi.size(), opts, rng, [&](std::uint64_t a, std::uint64_t b) {
    auto x = graded_image(lifts[a] * gi[b] * lift_inv[a], p, pi);
    return x && *x == gfp[a] * image[b] * gfp_inv[a];
  });

  std::ostringstream d;
  d << "quotient=" << seen.size() << " kernel=" << kernel << " bijective=" << (bijective ? "yes" : "no")
    << " hom=" << (hom.ok ? "yes" : "no") << ":" << mode(hom) << " equivariant=" << (equi.ok ? "yes" : "no") << ":"
    << mode(equi);
  rep.detail = d.str();
  rep.status = bijective && hom.ok && equi.ok ? CheckStatus::pass : CheckStatus::fail;
  return rep;
}

CheckReport commutator_filtration_check(const GroupSpec &spec, std::uint64_t p, unsigned k,
                                        const CheckOptions &opts) {
  if (!arith::is_prime(p) || k < 1)
    throw DomainError("commutator_filtration_check needs a prime and k >= 1");
  const auto &ex = opts.enumeration;
  const std::uint64_t m = ipow(p, k);
  CheckReport rep{"commutator-filtration", level_name(spec, m), CheckStatus::pass, ""};
  std::vector<std::vector<ModMat>> levels(k + 1);
  for (unsigned i = 1; i <= k; ++i)
    levels[i] = enumerate_kernel(spec, p, k, i, ex.exec, ex.scan_limit);
  // G_k itself is reached as lift(g) * h with g in G(F_p), h in G_k^1.
  std::vector<ModMat> lifts;
  for (const auto &g : group_fp(spec, p, opts))
    lifts.push_back(lift_special(g, m));

  Rng rng(opts.seed);
  std::ostringstream d;
  bool ok = true;
  for (unsigned i = 0; i <= k; ++i)
    for (unsigned j = std::max(i, 1u); i + j <= k; ++j) {
      if (j == k)
        continue; // G_k^k is trivial
      const std::uint64_t target = ipow(p, i + j);
      const auto &b = levels[j];
      PairOutcome o;
      if (i == 0) {
        const auto &g1 = levels[1];
        const std::uint64_t na = lifts.size() * g1.size();
        o = check_pairs(na, b.size(), opts, rng, [&](std::uint64_t a, std::uint64_t t) {
          const ModMat x = lifts[a / g1.size()] * g1[a % g1.size()];
          return congruent_identity(commutator(x, b[t]), target);
        });
      } else {
        const auto &a = levels[i];
        o = check_pairs(a.size(), b.size(), opts, rng, [&](std::uint64_t s, std::uint64_t t) {
          return congruent_identity(commutator(a[s], b[t]), target);
        });
      }
      ok = ok && o.ok;
      d << (d.tellp() > 0 ? " " : "") << "(" << i << ";" << j << "):" << (o.ok ? "ok" : "FAIL") << ":" << mode(o);
    }
  rep.detail = d.str().empty() ? "no pairs" : d.str();
  rep.status = ok ? CheckStatus::pass : CheckStatus::fail;
  return rep;
}

LieAlgebraBasis lie_algebra(const GroupSpec &spec, std::uint64_t p) {
  if (!arith::is_prime(p))
    throw DomainError("lie_algebra needs a prime");
  const unsigned n = spec.n();
  LieAlgebraBasis lie{p, n, {}};
  for (unsigned r = 0; r < n; ++r)
    for (unsigned s = 0; s < n; ++s)
      if (r != s) {
        ModMat e(n, p);
        e(r, s) = 1;
        lie.basis.push_back(e);
      }
  for (unsigned r = 0; r + 1 < n; ++r) {
    ModMat h(n, p);
    h(r, r) = 1;
    h(r + 1, r + 1) = p - 1;
    lie.basis.push_back(h);
  }
  return lie;
}

std::vector<std::uint64_t> lie_coordinates(const LieAlgebraBasis &lie, const ModMat &x) {
  const unsigned n = lie.n;
  const std::uint64_t p = lie.p;
  std::vector<std::uint64_t> c;
  for (unsigned r = 0; r < n; ++r)
    for (unsigned s = 0; s < n; ++s)
      if (r != s)
        c.push_back(x(r, s) % p);
  // x_rr = c_r - c_{r-1}, so c_r is the running diagonal sum
  std::uint64_t run = 0;
  for (unsigned r = 0; r + 1 < n; ++r) {
    run = (run + x(r, r)) % p;
    c.push_back(run);
  }
  return c;
}

CheckReport adjoint_irreducibility_check(const GroupSpec &spec, std::uint64_t p, const CheckOptions &opts) {
  const auto lie = lie_algebra(spec, p);
  const unsigned dim = spec.dim();
  CheckReport rep{"adjoint-irreducibility", spec.name() + "(F_" + std::to_string(p) + ")", CheckStatus::pass, ""};

  // (a) center: kernel of c -> ([sum c_i b_i, b_j])_j
  Echelon columns(p, static_cast<std::size_t>(dim) * lie.n * lie.n);
  for (const auto &bi : lie.basis) {
    std::vector<std::uint64_t> col;
    for (const auto &bj : lie.basis) {
      const ModMat br = bi * bj - bj * bi;
      col.insert(col.end(), br.entries().begin(), br.entries().end());
    }
    columns.insert(col);
  }
  const std::size_t center_dim = dim - columns.rank();

  // (b) invariant subspaces under Ad of the elementary generators
  std::vector<Operator> ops;
  for (const auto &g : elementary_generators(spec, p, false)) {
    const ModMat gi = g.inverse();
    Operator op;
    for (const auto &b : lie.basis)
      op.push_back(lie_coordinates(lie, g * b * gi));
    ops.push_back(std::move(op));
  }
  const std::uint64_t subspaces = count_subspaces(p, dim, opts.subspace_budget);
  const bool exhaustive = subspaces <= opts.subspace_budget;
  std::atomic<bool> found{false};
  if (exhaustive) {
    for_each_subspace(p, dim, [&](const Echelon &w) {
      if (invariant(w, ops, p))
        found = true;
      return !found;
    });
  } else {
    // every invariant subspace contains the invariant closure of a line
    const std::uint64_t total = ipow(p, dim);
    auto line_closure_proper = [&](std::uint64_t code) {
      std::vector<std::uint64_t> v(dim);
      std::uint64_t c = code;
      for (auto &x : v) {
        x = c % p;
        c /= p;
      }
      auto lead = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
      if (lead == v.end() || *lead != 1)
        return false;
      Echelon w(p, dim);
      w.insert(v);
      std::deque<std::vector<std::uint64_t>> work{v};
      while (!work.empty() && w.rank() < dim) {
        auto u = std::move(work.front());
        work.pop_front();
        for (const auto &op : ops) {
          auto img = apply(op, u, p);
          if (w.insert(img))
            work.push_back(std::move(img));
        }
      }
      return w.rank() < dim;
    };
    if (opts.enumeration.exec == Exec::serial) {
      for (std::uint64_t code = 1; code < total && !found; ++code)
        if (line_closure_proper(code))
          found = true;
    } else {
#pragma omp parallel for schedule(dynamic, 256)
      for (std::int64_t code = 1; code < static_cast<std::int64_t>(total); ++code)
        if (!found.load(std::memory_order_relaxed) && line_closure_proper(static_cast<std::uint64_t>(code)))
          found = true;
    }
  }

  // (c) kernel of Ad on G(F_p) versus the scalars
  const auto gfp = group_fp(spec, p, opts);
  std::uint64_t kernel = 0;
  bool kernel_scalar = true;
  for (const auto &g : gfp) {
    bool trivial = true;
    for (const auto &b : lie.basis)
      if (g * b != b * g) {
        trivial = false;
        break;
      }
    if (trivial) {
      ++kernel;
      kernel_scalar = kernel_scalar && g.is_scalar();
    }
  }
  const bool kernel_ok = kernel_scalar && kernel == center_order_mod(spec, p);

  std::ostringstream d;
  d << "center_dim=" << center_dim << " invariant_subspace=" << (found ? "found" : "none") << ":"
    << (exhaustive ? "exhaustive" : "line-closure") << " kernel=" << kernel << (kernel_ok ? ":scalars" : ":NOT-scalars");
  rep.detail = d.str();
  rep.status = center_dim == 0 && !found && kernel_ok ? CheckStatus::pass : CheckStatus::fail;
  return rep;
}

bool in_level_times_center(const GroupSpec &spec, const ModMat &g, std::uint64_t p, unsigned k, unsigned j) {
  const std::uint64_t m = ipow(p, k);
  const std::uint64_t q = ipow(p, std::min(j, k));
  for (auto l : central_scalars(spec.n(), m)) {
    const ModMat z = ModMat::scalar(spec.n(), m, invmod(l, m));
    if (congruent_identity(z * g, q))
      return true;
  }
  return false;
}

std::optional<ModMat> annuli_witness(const GroupSpec &spec, std::uint64_t p, unsigned k, const ModMat &g,
                                     unsigned i) {
  if (!arith::is_prime(p) || p < 5)
    throw DomainError("annuli_witness needs a prime p >= 5");
  const std::uint64_t m = ipow(p, k);
  if (i + 2 > k)
    throw DomainError("annuli_witness needs i <= k-2");
  if (g.modulus() != m || g.dim() != spec.n() || g.det() != 1)
    throw DomainError("annuli_witness needs an element of the level-p^k group");
  if (!congruent_identity(g, ipow(p, i)) || in_level_times_center(spec, g, p, k, i + 1))
    throw DomainError("element is not in the i-th annulus");

  auto works = [&](const ModMat &y) -> std::optional<ModMat> {
    const ModMat h = lift_unipotent(y, p, m);
    const ModMat c = commutator(h, g);
    if (congruent_identity(c, ipow(p, i + 1)) && !in_level_times_center(spec, c, p, k, i + 2))
      return h;
    return std::nullopt;
  };
  const auto lie = lie_algebra(spec, p);
  for (const auto &y : lie.basis)
    if (auto h = works(y))
      return h;
  // fall back to every element of sl_n(F_p)
  const std::uint64_t total = ipow(p, spec.dim());
  for (std::uint64_t code = 1; code < total && total <= 10'000'000; ++code) {
    ModMat y(spec.n(), p);
    std::uint64_t c = code;
    for (const auto &b : lie.basis) {
      y = y + ModMat::scalar(spec.n(), p, c % p) * b;
      c /= p;
    }
    if (auto h = works(y))
      return h;
  }
  return std::nullopt;
}

NormalSubgroupReport normal_subgroups_containing_center(const FiniteGroupTable &table) {
  auto level = table.prime_level();
  if (!level)
    throw DomainError("normal subgroup scan needs a prime power modulus");
  const std::size_t size = table.size();
  const auto &gens = table.generators();
  using Set = std::vector<char>;

  auto closure_of = [&](const std::vector<std::size_t> &subgens) {
    Set in(size, 0);
    std::vector<std::size_t> queue{table.identity()};
    in[table.identity()] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (auto s : subgens) {
        const std::size_t y = table.product(queue[head], s);
        if (!in[y]) {
          in[y] = 1;
          queue.push_back(y);
        }
      }
    return in;
  };
  std::vector<std::size_t> gen_inv;
  for (auto s : gens)
    gen_inv.push_back(table.inverse(s));
  auto normal_closure = [&](std::vector<std::size_t> subgens) {
    Set h = closure_of(subgens);
    for (std::size_t t = 0; t < subgens.size(); ++t)
      for (std::size_t u = 0; u < gens.size(); ++u) {
        const std::size_t c = table.product(table.product(gens[u], subgens[t]), gen_inv[u]);
        if (!h[c]) {
          subgens.push_back(c);
          h = closure_of(subgens);
        }
      }
    return std::make_pair(h, subgens);
  };

  // conjugacy class representatives
  NormalSubgroupReport rep;
  std::vector<std::size_t> reps;
  {
    Set done(size, 0);
    for (std::size_t x = 0; x < size; ++x) {
      if (done[x])
        continue;
      reps.push_back(x);
      std::vector<std::size_t> cls{x};
      done[x] = 1;
      for (std::size_t head = 0; head < cls.size(); ++head)
        for (std::size_t u = 0; u < gens.size(); ++u) {
          const std::size_t y = table.product(table.product(gens[u], cls[head]), gen_inv[u]);
          if (!done[y]) {
            done[y] = 1;
            cls.push_back(y);
          }
        }
    }
  }
  rep.conjugacy_classes = reps.size();

  std::vector<std::size_t> center_idx;
  for (const auto &z : center_of(table))
    center_idx.push_back(table.at(z));
  std::vector<std::pair<Set, std::vector<std::size_t>>> found{normal_closure(center_idx)};
  for (std::size_t t = 0; t < found.size(); ++t)
    for (auto r : reps) {
      if (found[t].first[r])
        continue;
      auto gensN = found[t].second;
      gensN.push_back(r);
      auto cand = normal_closure(gensN);
      bool dup = false;
      for (const auto &f : found)
        if (f.first == cand.first) {
          dup = true;
          break;
        }
      if (!dup)
        found.push_back(std::move(cand));
    }

  // the candidate levels G^i Z
  const std::uint64_t p = level->prime;
  const unsigned k = level->exponent;
  std::vector<Set> levels;
  for (unsigned i = 0; i <= k; ++i) {
    Set s(size, 0);
    for (std::size_t x = 0; x < size; ++x)
      s[x] = in_level_times_center(table.spec(), table[x], p, k, i);
    if (std::find(levels.begin(), levels.end(), s) == levels.end())
      levels.push_back(s);
  }
  rep.distinct_levels = static_cast<unsigned>(levels.size());

  std::vector<char> level_hit(levels.size(), 0);
  bool all_levels = true;
  for (const auto &f : found) {
    NormalSubgroup ns;
    ns.size = static_cast<std::size_t>(std::count(f.first.begin(), f.first.end(), 1));
    for (unsigned i = 0; i <= k; ++i) {
      Set s(size, 0);
      for (std::size_t x = 0; x < size; ++x)
        s[x] = in_level_times_center(table.spec(), table[x], p, k, i);
      if (s == f.first) {
        ns.level = i;
        break;
      }
    }
    if (!ns.level)
      all_levels = false;
    else
      for (std::size_t l = 0; l < levels.size(); ++l)
        if (levels[l] == f.first)
          level_hit[l] = 1;
    rep.subgroups.push_back(ns);
  }
  std::sort(rep.subgroups.begin(), rep.subgroups.end(),
            [](const NormalSubgroup &a, const NormalSubgroup &b) { return a.size < b.size; });
  rep.matches_levels = all_levels && std::all_of(level_hit.begin(), level_hit.end(), [](char c) { return c; });
  return rep;
}

CheckReport centerless_quotient_check(const FiniteGroupTable &table) {
  CheckReport rep{"centerless-quotient", level_name(table.spec(), table.modulus()), CheckStatus::pass, ""};
  const auto center = center_of(table);
  std::unordered_set<ModMat, ModMatHash> zset(center.begin(), center.end());
  std::size_t lifts = 0;
  for (const auto &g : table.elements()) {
    bool central_mod_z = true;
    for (auto s : table.generators())
      if (!zset.count(commutator(g, table[s]))) {
        central_mod_z = false;
        break;
      }
    lifts += central_mod_z;
  }
  rep.detail = "center=" + std::to_string(center.size()) + " center_of_quotient_lifts=" + std::to_string(lifts);
  rep.status = lifts == center.size() ? CheckStatus::pass : CheckStatus::fail;
  return rep;
}

CheckReport center_reduction_check(const GroupSpec &spec, std::uint64_t p, unsigned k, const CheckOptions &opts) {
  if (k < 2)
    throw DomainError("center_reduction_check needs k >= 2");
  const std::uint64_t m = ipow(p, k), m1 = ipow(p, k - 1);
  CheckReport rep{"center-reduction", level_name(spec, m), CheckStatus::pass, ""};
  const auto z = center_of(enumerate_group(spec, m, opts.enumeration));
  const auto z1 = center_of(enumerate_group(spec, m1, opts.enumeration));
  std::unordered_set<ModMat, ModMatHash> images, target(z1.begin(), z1.end());
  bool into = true;
  for (const auto &g : z) {
    const ModMat r = g.reduce(m1);
    into = into && target.count(r);
    images.insert(r);
  }
  const bool bijective = into && images.size() == z.size() && z.size() == z1.size();
  rep.detail = "center=" + std::to_string(z.size()) + " reduced_center=" + std::to_string(z1.size());
  rep.status = bijective ? CheckStatus::pass : CheckStatus::fail;
  return rep;
}

CheckReport strong_approx_check(const GroupSpec &spec, std::uint64_t level, std::uint64_t m, unsigned trials,
                                const CheckOptions &opts) {
  if (level < 1 || m < 2 || std::gcd(level, m) != 1)
    throw DomainError("strong_approx_check needs gcd(N, m) = 1");
  const BigInt order = order_mod(spec, m);
  if (order > opts.enumeration.budget)
    throw BudgetExceeded("|G(Z/m)| exceeds the budget");
  CheckReport rep{"strong-approx", spec.name() + " N=" + std::to_string(level) + " m=" + std::to_string(m),
                  CheckStatus::pass, ""};
  const unsigned n = spec.n();
  std::vector<ModMat> gens;
  std::vector<IntMat> elem;
  for (unsigned r = 0; r < n; ++r)
    for (unsigned s = 0; s < n; ++s)
      if (r != s)
        for (int sign : {1, -1}) {
          elem.push_back(IntMat::elementary(n, r, s, sign));
          gens.push_back(reduce_mod(IntMat::elementary(n, r, s, BigInt(sign) * BigInt(static_cast<unsigned long>(level))), m));
        }
  if (level > 1) {
    Rng rng(opts.seed);
    for (unsigned t = 0; t < trials; ++t) {
      const unsigned len = static_cast<unsigned>(rng.between(1, 6));
      IntMat w = IntMat::identity(n);
      for (unsigned u = 0; u < len; ++u)
        w = w * elem[rng.below(elem.size())];
      const IntMat wi = w.inverse();
      for (unsigned r = 0; r < n; ++r)
        for (unsigned s = 0; s < n; ++s)
          if (r != s)
            gens.push_back(reduce_mod(w * IntMat::elementary(n, r, s, BigInt(static_cast<unsigned long>(level))) * wi, m));
    }
  }
  const auto reached = closure(gens, opts.enumeration.budget);
  const bool full = BigInt(static_cast<unsigned long>(reached.size())) == order;
  rep.detail = "closure=" + std::to_string(reached.size()) + " order=" + order.get_str() +
               (level == 1 ? " mode=exact" : " mode=seeded trials=" + std::to_string(trials));
  rep.status = full ? CheckStatus::pass : (level == 1 ? CheckStatus::fail : CheckStatus::inconclusive);
  return rep;
}

CheckReport order_check(const GroupSpec &spec, std::uint64_t m, const CheckOptions &opts) {
  CheckReport rep{"order", level_name(spec, m), CheckStatus::pass, ""};
  const auto table = enumerate_group(spec, m, opts.enumeration);
  const BigInt formula = order_mod(spec, m);
  rep.detail = "enumerated=" + std::to_string(table.size()) + " formula=" + formula.get_str();
  rep.status = BigInt(static_cast<unsigned long>(table.size())) == formula ? CheckStatus::pass : CheckStatus::fail;
  return rep;
}

} // namespace rfg::chevalley
