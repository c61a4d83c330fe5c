#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfg/exec.hpp"
#include "rfg/matgrp.hpp"

namespace rfg::growth {

using chevalley::GroupSpec;
using matgrp::DetectionResult;

/// Symmetric generating set of SL_n(Z) with printable labels.
struct GeneratingSet {
  std::vector<IntMat> elements;
  std::vector<std::string> labels;

  /// S = [[0,-1],[1,0]], T = [[1,1],[0,1]] and their inverses.
  static GeneratingSet sl2_st();
  /// E_ij(+-1), i != j.
  static GeneratingSet elementary(const GroupSpec &spec);
  /// "st" or "elementary".
  static GeneratingSet named(std::string_view name, const GroupSpec &spec);
};

struct BallEntry {
  IntMat element;
  unsigned length = 0;
};

/// Breadth-first ball of radius n, in discovery order (so by length).
/// Throws BudgetExceeded when the ball outgrows the budget.
std::vector<BallEntry> word_ball(const GeneratingSet &gens, unsigned n, std::uint64_t budget = 1'000'000,
                                 Exec exec = Exec::parallel);

struct GrowthOptions {
  /// Measure D(g^power) instead of D(g), skipping g with g^power = I.
  unsigned power = 1;
  bool allow_central = false;
  std::uint64_t budget = 1'000'000;
  Exec exec = Exec::parallel;
};

struct GrowthRow {
  unsigned n = 0;
  std::uint64_t ball_size = 0;
  /// 0 while no element of the ball counts.
  BigInt value = 0;
  std::optional<IntMat> witness;
  std::optional<DetectionResult> detection;
};

/// F(n) = max D over the ball of radius n, for n = 0..n_max, family
/// relative. Witnesses are the first maximizer in ball order.
struct GrowthTable {
  std::vector<GrowthRow> rows;
  unsigned power = 1;
};

GrowthTable farb_growth(const GeneratingSet &gens, const GroupSpec &spec, unsigned n_max,
                        const GrowthOptions &opts = {});

/// r_k = alpha^k lcm(1..k), alpha the product of the S primes, raised to
/// the index e: the element E_12(e r_k).
struct CandidateSeq {
  GroupSpec spec;
  std::vector<std::uint64_t> s_primes;
  std::uint64_t index = 1;

  explicit CandidateSeq(GroupSpec g, std::vector<std::uint64_t> primes = {}, std::uint64_t e = 1);
};

/// e * r_k as an integer; k <= 64.
BigInt candidate_parameter(const CandidateSeq &cs, unsigned k);
IntMat candidate_element(const CandidateSeq &cs, unsigned k);
/// log2(r_k) from valuations, for any k.
double r_k_log2(const CandidateSeq &cs, unsigned k);

/// congruence_D of the candidate without forming r_k: for each prime p the
/// first power not dividing e r_k is p^(v+1), v read off the valuations.
DetectionResult candidate_D_analytic(const CandidateSeq &cs, unsigned k, bool allow_central = false);

struct FitResult {
  double slope = 0;
  double intercept = 0;
  /// largest |log y - fit| (natural log)
  double max_residual = 0;
};

/// Least squares of log y on log x. Needs 3 positive pairs and two distinct x.
FitResult fit_exponent(const std::vector<std::pair<double, double>> &pairs);

/// Growth pairs (k, |quotient|) for the candidate sequence, k in [lo, hi].
std::vector<std::pair<double, double>> candidate_pairs(const CandidateSeq &cs, unsigned lo, unsigned hi,
                                                       bool allow_central = false, Exec exec = Exec::parallel);

struct Letter {
  unsigned i = 0; // 0-based
  unsigned j = 0;
  bool inverse = false;

  bool operator==(const Letter &) const = default;
};

/// Word over E_ij(+-1).
struct UnipotentWord {
  unsigned n = 0;
  std::vector<Letter> letters;

  std::size_t length() const { return letters.size(); }
  /// "E12 E23 E12^-1 ..."
  std::string to_string() const;
  IntMat evaluate() const;
};

/// A word for E_13(z) in SL_n(Z), n >= 3, built from the commutator
/// identity [E_il(a), E_lj(b)] = E_ij(ab). z splits as a*b with a the
/// largest divisor <= sqrt z when that divisor is at least z^(1/4),
/// otherwise as 2^h * b + c with 2^h near sqrt z.
UnipotentWord short_unipotent_word(const GroupSpec &spec, const BigInt &z);

} // namespace rfg::growth
