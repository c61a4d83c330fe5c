#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <omp.h>
#include <sstream>

#include "rfg/chevalley.hpp"
#include "rfg/emit.hpp"
#include "rfg/errors.hpp"
#include "rfg/examples.hpp"
#include "rfg/growth.hpp"
#include "rfg/matgrp.hpp"
#include "rfg/numring.hpp"

namespace rfg::cli {

namespace {

using emit::Cell;
using emit::Table;

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3;

struct Config {
  std::string group = "sl2";
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::uint64_t budget = 1'000'000;
  int threads = 0;
  bool allow_central = false;

  // dq
  std::string matrix;
  bool oracle = false;
  std::uint64_t m_max = 200;
  // growth
  std::string gens;
  unsigned n_max = 8;
  unsigned power = 1;
  // candidates / examples
  std::string k_range;
  std::string s_primes;
  std::uint64_t index = 1;
  bool literal = false;
  std::string vector;
  unsigned abelian_dim = 2;
  // fit
  std::string input = "-";
  double x_min = 10;
  // verify
  std::string suite = "all";
  std::uint64_t p = 5;
  unsigned k = 2;
  std::string moduli;
  std::uint64_t level = 1;
  unsigned trials = 64;
  std::uint64_t pair_budget = 10'000'000;
  std::uint64_t samples = 200'000;
  // ring
  std::string ring = "f = 1,0,1";
  std::string op = "split";
  std::string element = "1";
  unsigned denom_exp = 0;
  std::uint64_t limit = 1000;
  std::uint64_t root = 0;
};

std::pair<unsigned, unsigned> parse_range(const std::string &text, unsigned lo_default, unsigned hi_default) {
  if (text.empty())
    return {lo_default, hi_default};
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const unsigned v = static_cast<unsigned>(std::stoul(text));
      return {v, v};
    }
    const unsigned a = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
    const unsigned b = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
    if (b < a)
      throw DomainError("empty range: " + text);
    return {a, b};
  } catch (const std::logic_error &) {
    throw DomainError("bad range: " + text);
  }
}

std::vector<BigInt> parse_integers(const std::string &text) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    BigInt v;
    if (tok.empty() || v.set_str(tok, 10) != 0)
      throw DomainError("bad integer list: " + text);
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string &text) {
  std::vector<std::uint64_t> out;
  for (const auto &v : parse_integers(text)) {
    if (v < 0)
      throw DomainError("expected non-negative integers: " + text);
    out.push_back(arith::to_u64(v));
  }
  return out;
}

chevalley::CheckOptions check_options(const Config &c) {
  chevalley::CheckOptions o;
  o.pair_budget = c.pair_budget;
  o.samples = c.samples;
  o.seed = c.seed;
  o.enumeration.budget = c.budget;
  return o;
}

int dq(const Config &c, std::ostream &out) {
  const auto spec = chevalley::GroupSpec::parse(c.group);
  const IntMat a = IntMat::parse(c.matrix);
  if (a.dim() != spec.n())
    throw DomainError("matrix dimension does not match " + spec.name());
  if (a.det() != 1)
    throw DomainError("matrix is not in " + spec.name() + "(Z): det != 1");
  matgrp::DetectionResult d;
  bool short_range = false;
  if (c.oracle) {
    auto r = matgrp::brute_force_D(a, spec, c.m_max);
    d = r.detection;
    short_range = r.range_may_be_short;
  } else {
    d = matgrp::congruence_D(a, spec, c.allow_central);
  }
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["modulus"] = d.modulus;
    j["quotient_order"] = d.quotient_order.get_str();
    j["central_quotient"] = d.central_quotient;
    if (c.oracle)
      j["range_may_be_short"] = short_range;
    out << j.dump(2) << "\n";
  } else {
    out << matgrp::to_string(d) << (short_range ? ",range_may_be_short" : "") << "\n";
  }
  return kOk;
}

int growth_cmd(const Config &c, std::ostream &out) {
  const auto spec = chevalley::GroupSpec::parse(c.group);
  const std::string gens_name = c.gens.empty() ? (spec.n() == 2 ? "st" : "elementary") : c.gens;
  const auto gens = growth::GeneratingSet::named(gens_name, spec);
  growth::GrowthOptions opts;
  opts.power = c.power;
  opts.allow_central = c.allow_central;
  opts.budget = c.budget;
  const auto table = growth::farb_growth(gens, spec, c.n_max, opts);
  Table t{{"n", "ball_size", "F_value", "witness", "modulus", "quotient_order", "central_flag"}, {}};
  for (const auto &row : table.rows) {
    const bool has = row.detection.has_value();
    t.rows.push_back({BigInt(row.n), BigInt(static_cast<unsigned long>(row.ball_size)), row.value,
                      has ? row.witness->to_string() : std::string("-"),
                      BigInt(static_cast<unsigned long>(has ? row.detection->modulus : 0)),
                      has ? row.detection->quotient_order : BigInt(0), has && row.detection->central_quotient});
  }
  out << emit::emit(t, emit::parse_format(c.format));
  return kOk;
}

int candidates_cmd(const Config &c, std::ostream &out) {
  const auto spec = chevalley::GroupSpec::parse(c.group);
  const growth::CandidateSeq cs(spec, c.s_primes.empty() ? std::vector<std::uint64_t>{} : parse_u64_list(c.s_primes),
                                c.index);
  const auto [lo, hi] = parse_range(c.k_range, 1, 40);
  if (lo < 1)
    throw DomainError("k starts at 1");
  Table t{{"k", "r_k_log2", "modulus", "quotient_order"}, {}};
  for (unsigned k = lo; k <= hi; ++k) {
    const auto d = growth::candidate_D_analytic(cs, k, c.allow_central);
    t.rows.push_back({BigInt(k), growth::r_k_log2(cs, k), BigInt(static_cast<unsigned long>(d.modulus)),
                      d.quotient_order});
  }
  out << emit::emit(t, emit::parse_format(c.format));
  return kOk;
}

int fit_cmd(const Config &c, std::ostream &out) {
  std::string text;
  if (c.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(c.input);
    if (!in)
      throw DomainError("cannot read " + c.input);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto rows = emit::parse_csv(text);
  if (rows.empty())
    throw DomainError("empty input");
  const auto &header = rows.front();
  auto column = [&](const std::string &name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  std::optional<std::size_t> xc = column("k"), yc = column("quotient_order");
  if (!xc || !yc) {
    xc = column("n");
    yc = column("F_value");
  }
  if (!xc || !yc)
    throw DomainError("input needs columns k,quotient_order or n,F_value");
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    BigInt x, y;
    if (x.set_str(rows[r].at(*xc), 10) != 0 || y.set_str(rows[r].at(*yc), 10) != 0)
      throw DomainError("non-integer data in row " + std::to_string(r));
    if (x.get_d() >= c.x_min && y > 0)
      pairs.emplace_back(x.get_d(), y.get_d());
  }
  const auto f = growth::fit_exponent(pairs);
  nlohmann::ordered_json j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["max_residual"] = f.max_residual;
  out << j.dump() << "\n";
  return kOk;
}

std::vector<CheckReport> run_suite(const std::string &suite, const Config &c) {
  const auto spec = chevalley::GroupSpec::parse(c.group);
  const auto opts = check_options(c);
  const std::uint64_t m = arith::ipow(c.p, c.k);
  std::vector<CheckReport> out;
  if (suite == "order") {
    const auto ms = c.moduli.empty() ? std::vector<std::uint64_t>{m} : parse_u64_list(c.moduli);
    for (auto mod : ms)
      out.push_back(chevalley::order_check(spec, mod, opts));
  } else if (suite == "center") {
    const auto table = chevalley::enumerate_group(spec, m, opts.enumeration);
    const auto z = chevalley::center_of(table);
    const bool scalars = std::all_of(z.begin(), z.end(), [](const ModMat &g) { return g.is_scalar(); });
    const bool ok = scalars && z.size() == chevalley::center_order_mod(spec, m) && spec.center_order() % z.size() == 0;
    out.push_back({"center", spec.name() + " mod " + std::to_string(m), ok ? CheckStatus::pass : CheckStatus::fail,
                   "center=" + std::to_string(z.size()) + " N=" + std::to_string(spec.center_order())});
  } else if (suite == "filtration") {
    const auto table = chevalley::enumerate_group(spec, m, opts.enumeration);
    bool ok = true;
    std::string detail;
    for (unsigned i = 0; i <= c.k; ++i) {
      const auto sub = chevalley::filtration_subgroup(table, i);
      const BigInt index = BigInt(static_cast<unsigned long>(table.size())) / static_cast<unsigned long>(sub.size());
      ok = ok && index == chevalley::order_mod(spec, arith::ipow(c.p, i));
      detail += (detail.empty() ? "" : " ") + std::to_string(i) + ":" + std::to_string(sub.size());
    }
    out.push_back({"filtration", spec.name() + " mod " + std::to_string(m), ok ? CheckStatus::pass : CheckStatus::fail,
                   detail});
  } else if (suite == "moy-prasad") {
    out.push_back(chevalley::commutator_filtration_check(spec, c.p, c.k, opts));
    for (unsigned i = 1; i < c.k; ++i)
      out.push_back(chevalley::moy_prasad_check(spec, c.p, c.k, i, opts));
  } else if (suite == "adjoint") {
    out.push_back(chevalley::adjoint_irreducibility_check(spec, c.p, opts));
  } else if (suite == "annuli") {
    for (unsigned i = 0; i + 2 <= c.k; ++i) {
      ModMat g = ModMat::elementary(spec.n(), m, 0, 1, arith::ipow(c.p, i));
      auto h = chevalley::annuli_witness(spec, c.p, c.k, g, i);
      out.push_back({"annuli", spec.name() + " mod " + std::to_string(m) + " i=" + std::to_string(i),
                     h ? CheckStatus::pass : CheckStatus::fail,
                     h ? "g=" + g.to_string() + " h=" + h->to_string() : "no witness"});
    }
    for (auto &r : out)
      std::replace(r.detail.begin(), r.detail.end(), ',', ' ');
  } else if (suite == "normal-subgroups") {
    const auto table = chevalley::enumerate_group(spec, m, opts.enumeration);
    const auto rep = chevalley::normal_subgroups_containing_center(table);
    std::string detail = "classes=" + std::to_string(rep.conjugacy_classes) + " subgroups=";
    for (std::size_t t = 0; t < rep.subgroups.size(); ++t) {
      const auto &s = rep.subgroups[t];
      detail += (t ? ":" : "") + std::to_string(s.size) + (s.level ? "@G" + std::to_string(*s.level) + "Z" : "@none");
    }
    detail += " levels=" + std::to_string(rep.distinct_levels);
    const bool asserted = c.p >= 5;
    if (!asserted)
      detail += " exploratory";
    out.push_back({"normal-subgroups", spec.name() + " mod " + std::to_string(m),
                   rep.matches_levels ? CheckStatus::pass : (asserted ? CheckStatus::fail : CheckStatus::inconclusive),
                   detail});
  } else if (suite == "centerless") {
    out.push_back(chevalley::centerless_quotient_check(chevalley::enumerate_group(spec, m, opts.enumeration)));
  } else if (suite == "center-reduction") {
    out.push_back(chevalley::center_reduction_check(spec, c.p, c.k, opts));
  } else if (suite == "strong-approx") {
    const auto ms = c.moduli.empty() ? std::vector<std::uint64_t>{m} : parse_u64_list(c.moduli);
    for (auto mod : ms)
      out.push_back(chevalley::strong_approx_check(spec, c.level, mod, c.trials, opts));
  } else {
    throw DomainError("unknown suite: " + suite);
  }
  return out;
}

int verify_cmd(const Config &c, std::ostream &out) {
  std::vector<CheckReport> reports;
  if (c.suite == "all") {
    for (const char *s : {"order", "center", "filtration", "moy-prasad", "adjoint", "centerless"}) {
      auto r = run_suite(s, c);
      reports.insert(reports.end(), r.begin(), r.end());
    }
  } else {
    reports = run_suite(c.suite, c);
  }
  Table t{{"check_name", "instance", "status", "detail"}, {}};
  bool failed = false, inconclusive = false;
  for (const auto &r : reports) {
    t.rows.push_back({r.name, r.instance, std::string(to_string(r.status)), r.detail});
    failed = failed || r.status == CheckStatus::fail;
    inconclusive = inconclusive || r.status == CheckStatus::inconclusive;
  }
  out << emit::emit(t, emit::parse_format(c.format));
  return failed ? kCheckFailed : inconclusive ? kBudget : kOk;
}

int examples_cmd(const Config &c, std::ostream &out, const std::string &family) {
  Table t{{"k", "candidate", "modulus", "order", "certificate_pass"}, {}};
  bool all_pass = true;
  if (family == "abelian" && !c.vector.empty()) {
    const auto v = parse_integers(c.vector);
    const auto w = examples::abelian_D(v);
    t.rows.push_back({BigInt(0), "(" + c.vector + ")", BigInt(static_cast<unsigned long>(w.modulus)), w.order, true});
    out << emit::emit(t, emit::parse_format(c.format));
    return kOk;
  }
  const auto [lo, hi] = parse_range(c.k_range, 2, 64);
  if (lo < 2)
    throw DomainError("example candidates need k >= 2");
  for (unsigned k = lo; k <= hi; ++k) {
    std::string cand;
    examples::QuotientWitness w;
    bool pass = false;
    if (family == "lamplighter") {
      w = examples::lamp_quotient_D(k, c.literal);
      BigInt bound = BigInt((k / 4) * (k / 4));
      BigInt two_k;
      mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
      if (two_k > bound)
        bound = two_k;
      if (c.literal) {
        cand = "d1+d(lcm(1.." + std::to_string(k) + "))";
        pass = w.order >= bound;
      } else {
        cand = "d1+d(1+lcm(1.." + std::to_string(k) + "))";
        pass = w.order >= bound && examples::lamp_injectivity_certificate(k, w.modulus);
      }
    } else if (family == "semidirect") {
      w = examples::semidirect_quotient_D(k);
      cand = "(lcm(1.." + std::to_string(k) + ");0)";
      const BigInt d = static_cast<unsigned long>(w.modulus);
      pass = w.modulus > k && w.order == 8 * d * d && 4 * w.order >= d * d &&
             examples::semidirect_kernel_structure_check(w.modulus).pass;
    } else if (family == "abelian") {
      std::vector<BigInt> v(c.abelian_dim, 0);
      v[0] = arith::lcm_upto(std::min(k, 64u));
      if (k > 64)
        throw DomainError("abelian candidates are materialized for k <= 64");
      w = examples::abelian_D(v);
      cand = "(lcm(1.." + std::to_string(k) + ")" + std::string(c.abelian_dim - 1, ';') + ")";
      pass = w.modulus > k;
    } else {
      throw DomainError("examples needs --group lamplighter|semidirect|abelian");
    }
    all_pass = all_pass && pass;
    t.rows.push_back({BigInt(k), cand, BigInt(static_cast<unsigned long>(w.modulus)), w.order, pass});
  }
  out << emit::emit(t, emit::parse_format(c.format));
  // the literal lamplighter form is shown for comparison, not asserted
  return all_pass || c.literal ? kOk : kCheckFailed;
}

int ring_cmd(const Config &c, std::ostream &out) {
  auto ring = std::make_shared<const numring::NumberRing>(numring::NumberRing::parse(c.ring));
  auto element = [&] {
    auto coords = parse_integers(c.element);
    coords.resize(ring->degree(), 0);
    return numring::RingElement(ring, coords, c.denom_exp);
  };
  Table t;
  if (c.op == "split") {
    t.header = {"prime", "roots"};
    for (const auto &sp : numring::split_primes(*ring, c.limit)) {
      std::string roots;
      for (auto r : sp.roots)
        roots += (roots.empty() ? "" : " ") + std::to_string(r);
      t.rows.push_back({BigInt(static_cast<unsigned long>(sp.prime)), roots});
    }
  } else if (c.op == "detect") {
    const auto d = numring::detect_split(element(), c.limit);
    t.header = {"prime", "root", "residue"};
    t.rows.push_back({BigInt(static_cast<unsigned long>(d.prime)), BigInt(static_cast<unsigned long>(d.root)),
                      BigInt(static_cast<unsigned long>(d.residue))});
  } else if (c.op == "ideal") {
    const auto pi = numring::min_detecting_ideal(element(), c.limit);
    std::string factor;
    for (auto x : pi.factor)
      factor += (factor.empty() ? "" : " ") + std::to_string(x);
    t.header = {"prime", "factor", "residue_degree", "norm", "kind"};
    t.rows.push_back({BigInt(static_cast<unsigned long>(pi.prime)), factor, BigInt(pi.residue_degree), pi.norm,
                      numring::to_string(pi.kind)});
  } else if (c.op == "reduce") {
    t.header = {"prime", "root", "residue"};
    t.rows.push_back({BigInt(static_cast<unsigned long>(c.p)), BigInt(static_cast<unsigned long>(c.root)),
                      BigInt(static_cast<unsigned long>(numring::reduce_element(element(), c.p, c.root)))});
  } else {
    throw DomainError("unknown ring operation: " + c.op);
  }
  out << emit::emit(t, emit::parse_format(c.format));
  return kOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  Config c;
  CLI::App app{"Residual finiteness growth: detecting quotients, Farb growth, lemma checks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto common = [&](CLI::App *sub) {
    sub->add_option("--group", c.group, "sl2|sl3|sl4, or lamplighter|semidirect|abelian for examples");
    sub->add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", c.seed, "seed for randomized checks");
    sub->add_option("--budget", c.budget, "element budget for enumerations");
    sub->add_option("--threads", c.threads, "worker threads (default: all)");
    sub->add_flag("--allow-central", c.allow_central, "admit central quotients G(Z/q)/Z");
  };

  auto *dq_cmd = app.add_subcommand("dq", "minimal congruence quotient detecting a matrix");
  common(dq_cmd);
  dq_cmd->add_option("--matrix", c.matrix, "rows by ';', entries by ','")->required();
  dq_cmd->add_flag("--oracle", c.oracle, "scan every modulus up to --m-max instead");
  dq_cmd->add_option("--m-max", c.m_max, "oracle range");

  auto *growth_sub = app.add_subcommand("growth", "normal Farb growth table over a word ball");
  common(growth_sub);
  growth_sub->add_option("--gens", c.gens, "st|elementary");
  growth_sub->add_option("--n-max", c.n_max, "largest radius");
  growth_sub->add_option("--power", c.power, "measure D(g^power)");

  auto *cand_sub = app.add_subcommand("candidates", "candidate sequence E_12(e alpha^k lcm(1..k))");
  common(cand_sub);
  cand_sub->add_option("--k", c.k_range, "a..b");
  cand_sub->add_option("--s-primes", c.s_primes, "comma-separated primes in S");
  cand_sub->add_option("--index", c.index, "exponent e = [G(Z):Delta]");

  auto *fit_sub = app.add_subcommand("fit", "log-log slope of a growth or candidates CSV");
  common(fit_sub);
  fit_sub->add_option("--input", c.input, "CSV path, '-' for stdin");
  fit_sub->add_option("--x-min", c.x_min, "ignore rows with x below this");

  auto *verify_sub = app.add_subcommand("verify", "structural checks on G(Z/p^k)");
  common(verify_sub);
  verify_sub->add_option("--suite", c.suite,
                         "all|order|center|filtration|moy-prasad|adjoint|annuli|normal-subgroups|centerless|"
                         "center-reduction|strong-approx");
  verify_sub->add_option("--p", c.p, "prime");
  verify_sub->add_option("--k", c.k, "exponent");
  verify_sub->add_option("--m", c.moduli, "comma-separated moduli (order, strong-approx)");
  verify_sub->add_option("--level", c.level, "N for strong-approx");
  verify_sub->add_option("--trials", c.trials, "random words for strong-approx");
  verify_sub->add_option("--pair-budget", c.pair_budget, "exhaustive pair limit");
  verify_sub->add_option("--samples", c.samples, "sampled pairs beyond the limit");

  auto *ex_sub = app.add_subcommand("examples", "lamplighter, Z^2 x| Q and Z^n candidates");
  common(ex_sub);
  ex_sub->add_option("--k", c.k_range, "a..b");
  ex_sub->add_flag("--literal", c.literal, "lamplighter: use delta_1 + delta_lcm as printed");
  ex_sub->add_option("--vector", c.vector, "abelian: a single vector");
  ex_sub->add_option("--dim", c.abelian_dim, "abelian: rank");

  auto *ring_sub = app.add_subcommand("ring", "split primes and detection in Z[x]/(f)[1/f0]");
  common(ring_sub);
  ring_sub->add_option("--ring", c.ring, "'f = c0,c1,...; invert = f0'");
  ring_sub->add_option("--op", c.op, "split|detect|ideal|reduce");
  ring_sub->add_option("--element", c.element, "coordinates c0,c1,...");
  ring_sub->add_option("--denom-exp", c.denom_exp, "power of f0 in the denominator");
  ring_sub->add_option("--limit", c.limit, "prime search limit");
  ring_sub->add_option("--p", c.p, "prime for reduce");
  ring_sub->add_option("--root", c.root, "root for reduce");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (c.threads > 0)
    omp_set_num_threads(c.threads);
  try {
    if (dq_cmd->parsed())
      return dq(c, out);
    if (growth_sub->parsed())
      return growth_cmd(c, out);
    if (cand_sub->parsed())
      return candidates_cmd(c, out);
    if (fit_sub->parsed())
      return fit_cmd(c, out);
    if (verify_sub->parsed())
      return verify_cmd(c, out);
    if (ex_sub->parsed())
      return examples_cmd(c, out, c.group);
    if (ring_sub->parsed())
      return ring_cmd(c, out);
  } catch (const DomainError &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded &e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const LimitExceeded &e) {
    err << "limit exceeded: " << e.what() << "\n";
    return kBudget;
  }
  return kUsage;
}

} // namespace rfg::cli
