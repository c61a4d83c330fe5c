#include "rfg/growth.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <omp.h>
#include <unordered_map>

#include "rfg/errors.hpp"

namespace rfg::growth {

GeneratingSet GeneratingSet::sl2_st() {
  const IntMat s = IntMat::parse("0,-1;1,0");
  const IntMat t = IntMat::parse("1,1;0,1");
  return {{s, s.inverse(), t, t.inverse()}, {"S", "S^-1", "T", "T^-1"}};
}

GeneratingSet GeneratingSet::elementary(const GroupSpec &spec) {
  GeneratingSet gs;
  const unsigned n = spec.n();
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      if (i == j)
        continue;
      const std::string name = "E" + std::to_string(i + 1) + std::to_string(j + 1);
      gs.elements.push_back(IntMat::elementary(n, i, j, 1));
      gs.labels.push_back(name);
      gs.elements.push_back(IntMat::elementary(n, i, j, -1));
      gs.labels.push_back(name + "^-1");
    }
  return gs;
}

GeneratingSet GeneratingSet::named(std::string_view name, const GroupSpec &spec) {
  if (name == "st") {
    if (spec.n() != 2)
      throw DomainError("the S,T generating set is for sl2");
    return sl2_st();
  }
  if (name == "elementary")
    return elementary(spec);
  throw DomainError("unknown generating set: " + std::string(name));
}

std::vector<BallEntry> word_ball(const GeneratingSet &gens, unsigned n, std::uint64_t budget, Exec exec) {
  if (gens.elements.empty())
    throw DomainError("empty generating set");
  const std::size_t dim = gens.elements.front().dim();
  std::vector<BallEntry> ball{{IntMat::identity(dim), 0}};
  std::unordered_map<IntMat, unsigned, IntMatHash> seen{{ball.front().element, 0}};
  std::size_t layer_begin = 0;
  const std::size_t ng = gens.elements.size();
  for (unsigned len = 1; len <= n; ++len) {
    const std::size_t layer_end = ball.size();
    const std::int64_t count = static_cast<std::int64_t>((layer_end - layer_begin) * ng);
    std::vector<IntMat> products(static_cast<std::size_t>(count));
    auto fill = [&](std::int64_t t) {
      const std::size_t src = layer_begin + static_cast<std::size_t>(t) / ng;
      products[static_cast<std::size_t>(t)] = ball[src].element * gens.elements[static_cast<std::size_t>(t) % ng];
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
      for (std::int64_t t = 0; t < count; ++t)
        fill(t);
    } else {
      for (std::int64_t t = 0; t < count; ++t)
        fill(t);
    }
    // merge in a fixed order so both paths agree
    for (auto &g : products)
      if (seen.emplace(g, len).second) {
        ball.push_back({std::move(g), len});
        if (ball.size() > budget)
          throw BudgetExceeded("word ball exceeds the budget at radius " + std::to_string(len));
      }
    layer_begin = layer_end;
  }
  return ball;
}

GrowthTable farb_growth(const GeneratingSet &gens, const GroupSpec &spec, unsigned n_max,
                        const GrowthOptions &opts) {
  if (opts.power < 1)
    throw DomainError("power must be >= 1");
  const auto ball = word_ball(gens, n_max, opts.budget, opts.exec);
  const std::int64_t count = static_cast<std::int64_t>(ball.size());
  std::vector<std::optional<DetectionResult>> d(ball.size());
  auto eval = [&](std::int64_t t) {
    const IntMat &g = ball[static_cast<std::size_t>(t)].element;
    const IntMat x = opts.power == 1 ? g : g.pow(opts.power);
    if (!x.is_identity())
      d[static_cast<std::size_t>(t)] = matgrp::congruence_D(x, spec, opts.allow_central);
  };
  if (opts.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t t = 0; t < count; ++t)
      eval(t);
  } else {
    for (std::int64_t t = 0; t < count; ++t)
      eval(t);
  }

  GrowthTable table;
  table.power = opts.power;
  GrowthRow row;
  std::size_t t = 0;
  for (unsigned n = 0; n <= n_max; ++n) {
    for (; t < ball.size() && ball[t].length <= n; ++t)
      if (d[t] && d[t]->quotient_order > row.value) {
        row.value = d[t]->quotient_order;
        row.witness = ball[t].element;
        row.detection = d[t];
      }
    row.n = n;
    row.ball_size = t;
    table.rows.push_back(row);
  }
  return table;
}

CandidateSeq::CandidateSeq(GroupSpec g, std::vector<std::uint64_t> primes, std::uint64_t e)
    : spec(g), s_primes(std::move(primes)), index(e) {
  std::sort(s_primes.begin(), s_primes.end());
  for (std::size_t i = 0; i < s_primes.size(); ++i) {
    if (!arith::is_prime(s_primes[i]))
      throw DomainError("S must consist of primes");
    if (i > 0 && s_primes[i] == s_primes[i - 1])
      throw DomainError("S primes must be distinct");
  }
  if (index < 1)
    throw DomainError("index must be positive");
}

BigInt candidate_parameter(const CandidateSeq &cs, unsigned k) {
  if (k < 1 || k > 64)
    throw DomainError("candidate elements are materialized for 1 <= k <= 64");
  BigInt alpha = 1;
  for (auto p : cs.s_primes)
    alpha *= static_cast<unsigned long>(p);
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), alpha.get_mpz_t(), k);
  return r * arith::lcm_upto(k) * static_cast<unsigned long>(cs.index);
}

IntMat candidate_element(const CandidateSeq &cs, unsigned k) {
  return IntMat::elementary(cs.spec.n(), 0, 1, candidate_parameter(cs, k));
}

double r_k_log2(const CandidateSeq &cs, unsigned k) {
  if (k < 1)
    throw DomainError("k must be >= 1");
  double total = 0;
  for (auto p : cs.s_primes)
    total += k * std::log2(static_cast<double>(p));
  for (auto p : arith::primes_up_to(k))
    total += arith::lcm_valuation(k, p) * std::log2(static_cast<double>(p));
  return total;
}

namespace {

unsigned valuation(std::uint64_t x, std::uint64_t p) {
  unsigned v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

} // namespace

DetectionResult candidate_D_analytic(const CandidateSeq &cs, unsigned k, bool allow_central) {
  if (k < 1)
    throw DomainError("k must be >= 1");
  const auto &spec = cs.spec;
  std::optional<DetectionResult> best;
  for (std::uint64_t p = 2;; ++p) {
    if (!arith::is_prime(p))
      continue;
    if (best) {
      BigInt pd;
      mpz_ui_pow_ui(pd.get_mpz_t(), p, spec.dim());
      if (pd > 4 * spec.n() * best->quotient_order)
        break;
    }
    unsigned v = valuation(cs.index, p) + arith::lcm_valuation(k, p);
    if (std::binary_search(cs.s_primes.begin(), cs.s_primes.end(), p))
      v += k;
    // first power of p not dividing e r_k; skip when it overflows, a
    // prime above k always wins long before that
    std::uint64_t q = 1;
    bool fits = true;
    for (unsigned i = 0; i <= v && fits; ++i) {
      if (q > UINT64_MAX / p)
        fits = false;
      else
        q *= p;
    }
    if (!fits)
      continue;
    BigInt order = chevalley::order_mod(spec, q);
    bool central = false;
    if (allow_central) {
      const std::uint64_t z = chevalley::center_order_mod(spec, q);
      if (z > 1) {
        order /= z;
        central = true;
      }
    }
    if (!best || std::tie(order, q) < std::tie(best->quotient_order, best->modulus))
      best = DetectionResult{q, order, central};
  }
  return *best;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>> &pairs) {
  if (pairs.size() < 3)
    throw DomainError("fit needs at least 3 points");
  std::vector<double> xs, ys;
  for (const auto &[x, y] : pairs) {
    if (!(x > 0) || !(y > 0))
      throw DomainError("fit needs positive data");
    xs.push_back(std::log(x));
    ys.push_back(std::log(y));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0)
    throw DomainError("fit is degenerate: all x equal");
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::abs(ys[i] - (f.intercept + f.slope * xs[i])));
  return f;
}

std::vector<std::pair<double, double>> candidate_pairs(const CandidateSeq &cs, unsigned lo, unsigned hi,
                                                       bool allow_central, Exec exec) {
  if (lo < 1 || hi < lo)
    throw DomainError("bad k range");
  const std::int64_t count = hi - lo + 1;
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(count));
  auto eval = [&](std::int64_t t) {
    const unsigned k = lo + static_cast<unsigned>(t);
    out[static_cast<std::size_t>(t)] = {static_cast<double>(k),
                                        candidate_D_analytic(cs, k, allow_central).quotient_order.get_d()};
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t t = 0; t < count; ++t)
      eval(t);
  } else {
    for (std::int64_t t = 0; t < count; ++t)
      eval(t);
  }
  return out;
}

} // namespace rfg::growth
