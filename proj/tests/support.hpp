#pragma once

#include <vector>

#include "rfg/matrix.hpp"
#include "rfg/rng.hpp"

namespace rfg::testing {

/// Seeded SL_2(Z) elements with entries bounded by `bound`, mixing three
/// shapes so detection gcds vary: bounded words in S, T; principal
/// congruence elements 1 + g X; and +-E_12(t), +-E_21(t).
inline std::vector<IntMat> random_sl2(std::size_t count, std::uint64_t seed, long bound = 50) {
  Rng rng(seed);
  std::vector<IntMat> out;
  const IntMat gens[] = {IntMat::parse("0,-1;1,0"), IntMat::parse("0,1;-1,0"), IntMat::parse("1,1;0,1"),
                         IntMat::parse("1,-1;0,1")};
  auto fits = [&](const IntMat &a) { return a.max_abs_entry() <= bound && !a.is_identity(); };
  while (out.size() < count) {
    switch (out.size() % 3) {
    case 0: {
      IntMat a = IntMat::identity(2);
      const int len = static_cast<int>(rng.between(1, 12));
      for (int i = 0; i < len; ++i) {
        IntMat b = a * gens[rng.below(4)];
        if (b.max_abs_entry() > bound)
          break;
        a = b;
      }
      if (fits(a))
        out.push_back(a);
      break;
    }
    case 1: {
      // (1 + g x)(1 + g w) - g^2 y z = 1  <=>  w (1 + g x) = g y z - x
      const long g = rng.between(2, 12);
      const long x = rng.between(-4, 4), y = rng.between(-4, 4), z = rng.between(-4, 4);
      const long num = g * y * z - x, den = 1 + g * x;
      if (den == 0 || num % den != 0)
        break;
      const long w = num / den;
      IntMat a(2, {BigInt(1 + g * x), BigInt(g * y), BigInt(g * z), BigInt(1 + g * w)});
      if (fits(a) && a.det() == 1)
        out.push_back(a);
      break;
    }
    default: {
      const long t = rng.between(1, 50);
      IntMat a = rng.below(2) ? IntMat::elementary(2, 0, 1, t) : IntMat::elementary(2, 1, 0, t);
      if (rng.below(2))
        a = IntMat::parse("-1,0;0,-1") * a;
      if (fits(a))
        out.push_back(a);
    }
    }
  }
  return out;
}

} // namespace rfg::testing
