#include "rfg/arith.hpp"

#include <algorithm>
#include <climits>
#include <tuple>
#include <cmath>
#include <numeric>

#include "rfg/errors.hpp"

namespace rfg::arith {

namespace {

const BigInt kPrimalityBound{"3317044064679887385961981"};

constexpr std::uint64_t kTrialLimit = 1000;

bool miller_rabin_u64(std::uint64_t n, std::uint64_t a) {
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::uint64_t x = powmod(a % n, d, n);
  if (x == 0 || x == 1 || x == n - 1)
    return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1)
      return true;
  }
  return false;
}

bool miller_rabin(const BigInt &n, unsigned long a) {
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  BigInt x;
  BigInt base = a;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const BigInt nm1 = n - 1;
  if (x == 1 || x == nm1)
    return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1)
      return true;
  }
  return false;
}

// Brent's variant of Pollard rho. n is odd, composite, not a prime power of a
// small prime.
BigInt pollard_brent(const BigInt &n) {
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const BigInt &v) { return BigInt((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i)
        y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        BigInt diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n)
      return g;
  }
}

void split_into(const BigInt &n, std::vector<BigInt> &out) {
  if (n == 1)
    return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  BigInt d = pollard_brent(n);
  split_into(d, out);
  split_into(BigInt(n / d), out);
}

} // namespace

BigInt primality_bound() { return kPrimalityBound; }

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].exponent == 0 || factors_[i].prime < 2)
      throw DomainError("factorization entries need a prime and a positive exponent");
    if (i > 0 && !(factors_[i - 1].prime < factors_[i].prime))
      throw DomainError("factorization primes must be strictly increasing");
  }
}

BigInt Factorization::value() const {
  BigInt v = 1;
  for (const auto &pp : factors_) {
    BigInt t;
    mpz_pow_ui(t.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    v *= t;
  }
  return v;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1)
      r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, newt = 1;
  __int128 r = m, newr = a % m;
  while (newr != 0) {
    __int128 q = r / newr;
    std::tie(t, newt) = std::make_pair(newt, t - q * newt);
    std::tie(r, newr) = std::make_pair(newr, r - q * newr);
  }
  if (r != 1)
    throw DomainError("element is not invertible modulo " + std::to_string(m));
  if (t < 0)
    t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i)
    r *= base;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0)
      return n == p;
  }
  // Deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!miller_rabin_u64(n, a))
      return false;
  }
  return true;
}

bool is_prime(const BigInt &n) {
  if (n < 2)
    return false;
  if (mpz_fits_ulong_p(n.get_mpz_t()))
    return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  if (n >= kPrimalityBound)
    throw DomainError("primality not certified above 3.3e24");
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL, 41UL}) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p))
      return false;
  }
  for (unsigned long a : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL, 41UL}) {
    if (!miller_rabin(n, a))
      return false;
  }
  return true;
}

Factorization factorize(const BigInt &n) {
  if (n <= 0)
    throw DomainError("factorize needs a positive integer");
  if (n >= kPrimalityBound)
    throw DomainError("factorize input above the certified primality bound");
  std::vector<PrimePower> out;
  BigInt rest = n;
  // composite p never divide: their prime factors are already removed
  for (std::uint64_t p = 2; p < kTrialLimit && rest > 1; p += (p == 2 ? 1 : 2)) {
    if (rest < p * p) {
      out.push_back({rest, 1});
      rest = 1;
      break;
    }
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e)
      out.push_back({BigInt(static_cast<unsigned long>(p)), e});
  }
  if (rest > 1) {
    std::vector<BigInt> primes;
    split_into(rest, primes);
    std::sort(primes.begin(), primes.end());
    for (const auto &p : primes) {
      if (!out.empty() && out.back().prime == p)
        ++out.back().exponent;
      else
        out.push_back({p, 1});
    }
  }
  return Factorization(std::move(out));
}

unsigned lcm_valuation(std::uint64_t k, std::uint64_t p) {
  if (k == 0 || p < 2)
    throw DomainError("lcm_valuation needs k >= 1 and a prime p");
  unsigned v = 0;
  std::uint64_t q = p;
  while (q <= k) {
    ++v;
    if (q > k / p)
      break;
    q *= p;
  }
  return v;
}

std::uint64_t least_nondivisor(const BigInt &m) {
  if (m < 1)
    throw DomainError("least_nondivisor needs m >= 1");
  for (unsigned long d = 2;; ++d) {
    if (!mpz_divisible_ui_p(m.get_mpz_t(), d))
      return d;
  }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  if (limit > 100'000'000ULL)
    throw DomainError("sieving beyond 1e8 is not supported");
  std::vector<std::uint64_t> primes;
  if (limit < 2)
    return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i])
      continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i)
      composite[j] = true;
  }
  return primes;
}

std::vector<PrimePowerEntry> prime_powers_above(std::uint64_t k, std::uint64_t limit) {
  if (k == 0 || limit < k)
    throw DomainError("prime_powers_above needs 1 <= k <= limit");
  std::vector<PrimePowerEntry> out;
  for (std::uint64_t p : primes_up_to(limit)) {
    std::uint64_t q = p;
    unsigned i = 1;
    for (;;) {
      if (q > k)
        out.push_back({p, i, q});
      if (q > limit / p)
        break;
      q *= p;
      ++i;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePowerEntry &a, const PrimePowerEntry &b) { return a.value < b.value; });
  return out;
}

BigInt lcm_upto(unsigned k) {
  if (k > 64)
    throw DomainError("lcm(1..k) is only materialized for k <= 64");
  BigInt l = 1;
  for (unsigned i = 2; i <= k; ++i)
    mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), i);
  return l;
}

std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t q) {
  if (q < 2)
    return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0)
    return std::make_pair(q, 1u);
  unsigned i = 0;
  while (q % p == 0) {
    q /= p;
    ++i;
  }
  if (q != 1)
    return std::nullopt;
  return std::make_pair(p, i);
}

std::uint64_t mod_u64(const BigInt &a, std::uint64_t m) {
  if (m <= ULONG_MAX)
    return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m));
  BigInt mm = static_cast<unsigned long>(m);
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t());
  return r.get_ui();
}

std::uint64_t to_u64(const BigInt &a) {
  if (a < 0 || !mpz_fits_ulong_p(a.get_mpz_t()))
    throw DomainError("integer does not fit in 64 bits: " + a.get_str());
  return a.get_ui();
}

double log2(const BigInt &a) {
  if (a <= 0)
    throw DomainError("log2 of a non-positive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, a.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

std::string to_string(const Factorization &f) {
  std::string s;
  for (const auto &pp : f.factors()) {
    if (!s.empty())
      s += " * ";
    s += pp.prime.get_str();
    if (pp.exponent > 1)
      s += "^" + std::to_string(pp.exponent);
  }
  return s.empty() ? "1" : s;
}

BigInt determinant(std::vector<BigInt> a, std::size_t n) {
  if (a.size() != n * n)
    throw DomainError("determinant: entry count does not match dimension");
  if (n == 0)
    return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap * n + k] == 0)
        ++swap;
      if (swap == n)
        return 0;
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a[k * n + j], a[swap * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = t;
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

} // namespace rfg::arith
