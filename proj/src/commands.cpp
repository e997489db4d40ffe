#include "hgw/commands.hpp"

#include "hgw/algebra.hpp"
#include "hgw/catalog.hpp"
#include "hgw/derivations.hpp"
#include "hgw/errors.hpp"
#include "hgw/io.hpp"
#include "hgw/moments.hpp"
#include "hgw/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <random>

namespace hgw::cli {

namespace {

using io::Json;

constexpr OperationRoute kRoutes[] = {
    {"hypercore", "validate", "validate"},
    {"hypercore", "haar_measure", "haar"},
    {"hypercore", "from_abelian_group", "catalog"},
    {"hypercore", "two_point", "catalog"},
    {"hypercore", "conjugacy_class_hypergroup", "catalog"},
    {"hypercore", "join", "join"},
    {"hypercore", "direct_product", "catalog"},
    {"algebra", "pair", "verify-theorems"},
    {"algebra", "convolve_mm", "verify-theorems"},
    {"algebra", "spread", "verify-theorems"},
    {"algebra", "translate", "verify-theorems"},
    {"algebra", "convolve_mf", "verify-theorems"},
    {"algebra", "module_action", "verify-theorems"},
    {"spectral", "find_exponentials", "exponentials"},
    {"spectral", "modified_difference", "verify-theorems"},
    {"spectral", "difference_product", "verify-theorems"},
    {"spectral", "is_generalized_monomial", "verify-theorems"},
    {"spectral", "degree", "degree"},
    {"spectral", "is_sine", "degree"},
    {"spectral", "variety_dimension", "degree"},
    {"moments", "verify_moment_sequence", "moments"},
    {"moments", "solve_moment_extension", "moments"},
    {"moments", "enumerate_moment_sequences", "moments"},
    {"moments", "momexp_harness", "verify-theorems"},
    {"derivations", "apply", "derivation"},
    {"derivations", "extract_function", "derivation"},
    {"derivations", "build_from_function", "derivation"},
    {"derivations", "check_multiplicative", "derivation"},
    {"derivations", "check_higher_order", "derivation"},
    {"derivations", "check_generalized_order", "derivation"},
    {"derivations", "rank_of_hom", "verify-theorems"},
    {"derivations", "equivalence_harness", "verify-theorems"},
    {"derivations", "strength_gap_report", "verify-theorems"},
};

Func random_func(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Func f = Func::zero(k);
  for (Index i = 0; i < k; ++i) {
    const double re = u(rng);
    const double im = u(rng);
    f[i] = Complex(re, im);
  }
  return f;
}

Measure random_measure(std::mt19937_64& rng, std::size_t k) { return Measure(random_func(rng, k).values()); }

Json exponential_json(const Exponential& m) { return {{"values", io::to_json(m.values)}, {"residual", m.residual}}; }

std::vector<Exponential> exponentials_or_partial(const Hypergroup& h, double tol, std::uint64_t seed, Section& s) {
  try {
    auto exps = find_exponentials(h, tol, seed);
    s.add("exponentials.count", Outcome::Pass, 0.0, {{{"count", exps.size()}}});
    return exps;
  } catch (const PartialExponentialsError& e) {
    s.add("exponentials.count", Outcome::Warn, 0.0, {{{"count", e.found().size()}, {"message", e.what()}}});
    return e.found();
  }
}

// ---- verify-theorems findings ----------------------------------------------

void axioms_finding(Section& s, const Hypergroup& h, double tol) {
  const AxiomReport r = validate(h, tol);
  double worst = 0.0;
  Json w = Json::array();
  for (const auto& c : r.checks) {
    worst = std::max(worst, c.residual);
    if (!c.pass) w.push_back({{"axiom", axiom_name(c.axiom)}, {"residual", c.residual}, {"at", c.witness}});
  }
  s.expect("axioms", r.all_pass(), worst, std::move(w));
}

void haar_finding(Section& s, const Hypergroup& h, double tol) {
  try {
    const auto fixed = invariant_measures(h);
    const Measure lambda = haar_measure(h, tol);
    double invariance = 0.0;
    for (Index y = 0; y < h.order(); ++y)
      invariance = std::max(invariance, sup_distance(convolve(h, lambda, dirac(h.order(), y)), lambda));
    s.expect("haar", fixed.cols() == 1 && invariance <= tol, invariance,
             {{{"fixed_dimension", fixed.cols()}}});
    Json weights = Json::array();
    for (Index x = 0; x < h.order(); ++x) weights.push_back(io::format_weight(lambda[x].real()));
    s.data["haar"] = std::move(weights);
  } catch (const InfeasibleError& e) {
    s.add("haar", Outcome::Fail, 0.0, {e.what()});
  }
}

void algebra_finding(Section& s, const Hypergroup& h, std::mt19937_64& rng) {
  const std::size_t k = h.order();
  const Index o = h.identity();
  double res = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Measure mu = random_measure(rng, k), nu = random_measure(rng, k), rho = random_measure(rng, k);
    const Func f = random_func(rng, k), phi = random_func(rng, k);
    res = std::max(res, sup_distance(convolve(h, convolve(h, mu, nu), rho), convolve(h, mu, convolve(h, nu, rho))));
    res = std::max(res, sup_distance(convolve(h, mu, nu), convolve(h, nu, mu)));
    res = std::max(res, sup_distance(convolve(h, dirac(k, o), mu), mu));
    Complex direct = 0.0;
    for (Index x = 0; x < k; ++x)
      for (Index y = 0; y < k; ++y) direct += mu[x] * nu[y] * spread(h, f, x, y);
    res = std::max(res, std::abs(pair(convolve(h, mu, nu), f) - direct));
    res = std::max(res, std::abs(pair(module_action(phi, mu), f) - pair(mu, pointwise(f, phi))));
    const Index x = static_cast<Index>(trial) % k, y = static_cast<Index>(trial * 7 + 1) % k;
    const Func lhs = translate(h, translate(h, f, y), x);
    const Func rhs = convolve(h, convolve(h, dirac(k, h.inverse(x)), dirac(k, h.inverse(y))), f);
    res = std::max(res, sup_distance(lhs, rhs));
    res = std::max(res, sup_distance(convolve(h, dirac(k, h.inverse(y)), f), translate(h, f, y)));
  }
  s.expect("algebra.laws", res <= 1e-10, res);
}

void difference_findings(Section& s, const Hypergroup& h, const std::vector<Exponential>& exps, double axiom_tol,
                         std::mt19937_64& rng) {
  double annihilation = 0.0;
  Json bad = Json::array();
  for (std::size_t i = 0; i < exps.size(); ++i)
    for (Index y = 0; y < h.order(); ++y) {
      const double r = convolve(h, modified_difference(h, exps[i], y), exps[i].values).max_abs();
      annihilation = std::max(annihilation, r);
      if (r > axiom_tol) bad.push_back({{"exponential", i}, {"y", y}});
    }
  s.expect("modified-difference.annihilates", bad.empty(), annihilation, std::move(bad));

  double perm = 0.0;
  std::uniform_int_distribution<Index> pick(0, h.order() - 1);
  for (std::size_t i = 0; i < exps.size(); ++i)
    for (int t = 0; t < 3; ++t) {
      std::vector<Index> ys = {pick(rng), pick(rng), pick(rng)};
      const Measure a = difference_product(h, exps[i], ys);
      std::reverse(ys.begin(), ys.end());
      perm = std::max(perm, sup_distance(a, difference_product(h, exps[i], ys)));
      std::rotate(ys.begin(), ys.begin() + 1, ys.end());
      perm = std::max(perm, sup_distance(a, difference_product(h, exps[i], ys)));
    }
  s.expect("difference-product.commutes", perm <= 1e-10, perm);
}

void moment_findings(Section& s, const Hypergroup& h, const std::vector<Exponential>& exps, double tol) {
  bool ext_ok = true, momexp_ok = true, dergen_ok = true, rank_ok = true;
  double verify_res = 0.0;
  Json ext_w = Json::array(), momexp_w = Json::array(), dergen_w = Json::array(), rank_w = Json::array();
  Json dims = Json::array();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const MomentEnumeration en = enumerate_moment_sequences(h, exps[i], 2, 2, tol);
    Json node_dims = Json::array();
    for (const auto& n : en.nodes) node_dims.push_back(n.space.dimension);
    dims.push_back(std::move(node_dims));
    const SequenceCheck v = verify_moment_sequence(h, en.representative, tol);
    verify_res = std::max(verify_res, v.residual);
    if (!en.complete || v.verdict != Verdict::Pass) {
      ext_ok = false;
      ext_w.push_back({{"exponential", i}, {"verdict", verdict_name(v.verdict)}});
    }

    const MomexpReport mr = momexp_harness(h, en.representative, tol);
    if (mr.verdict != Verdict::Pass) {
      momexp_ok = false;
      momexp_w.push_back({{"exponential", i}, {"diagnostic", mr.diagnostic}});
    }

    const DerivationFamily fam = family_from_sequence(en.representative);
    const MultiplierHom& d0 = fam.at(MultiIndex::zero(fam.rank));
    if (check_higher_order(h, fam, Strength::Scalar, tol).verdict != Verdict::Pass) {
      dergen_ok = false;
      dergen_w.push_back({{"exponential", i}, {"check", "higher-order"}});
    }
    for (const auto& [alpha, d] : fam.members) {
      if (check_generalized_order(h, d, d0, alpha.norm(), Strength::Scalar, tol).verdict != Verdict::Pass) {
        dergen_ok = false;
        dergen_w.push_back({{"exponential", i}, {"alpha", alpha.entries()}});
      }
      const std::size_t rank = rank_of_hom(d, tol);
      const std::size_t variety = variety_dimension(h, d.multiplier());
      if (rank > h.order() || variety > lower_set(alpha).size()) {
        rank_ok = false;
        rank_w.push_back({{"exponential", i}, {"alpha", alpha.entries()}, {"rank", rank}, {"variety", variety}});
      }
    }
  }
  s.data["moment_dimensions"] = std::move(dims);
  s.expect("moments.extension", ext_ok, verify_res, std::move(ext_w));
  s.expect("momexp", momexp_ok, 0.0, std::move(momexp_w));
  s.expect("dergen", dergen_ok, 0.0, std::move(dergen_w));
  s.expect("rank-equivalence", rank_ok, 0.0, std::move(rank_w));
}

void correspondence_finding(Section& s, const Hypergroup& h, const std::vector<Exponential>& exps, double tol,
                            std::mt19937_64& rng) {
  const std::size_t k = h.order();
  bool ok = true;
  Json w = Json::array();
  std::size_t cases = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const Exponential& m = exps[i];
    const auto mfidef = as_exponential(h, extract_function(build_from_function(m.values)), tol);
    if (!mfidef) {
      ok = false;
      w.push_back({{"exponential", i}, {"check", "mfidef"}});
    }
    std::vector<Func> candidates = {Complex(2.5, -1.0) * m.values, random_func(rng, k), Func::zero(k)};
    if (exps.size() > 1) {
      const Exponential& other = exps[(i + 1) % exps.size()];
      candidates.push_back(other.values);
      candidates.push_back(m.values + other.values);
    }
    for (std::size_t c = 0; c < candidates.size(); ++c)
      for (unsigned n = 0; n <= 4; ++n) {
        const EquivalenceReport r = equivalence_harness(h, m, candidates[c], n, tol);
        ++cases;
        if (!r.agree || !r.round_trip) {
          ok = false;
          w.push_back({{"exponential", i}, {"candidate", c}, {"n", n}, {"monomial", r.monomial},
                       {"order", r.order_at_most}, {"round_trip", r.round_trip}});
        }
      }
  }
  s.expect("correspondence", ok, 0.0, std::move(w));
  s.data["correspondence_cases"] = cases;
}

void sequence_equivalence_finding(Section& s, const Hypergroup& h, const std::vector<Exponential>& exps, double tol,
                                  std::mt19937_64& rng) {
  if (exps.empty()) return;
  const std::size_t k = h.order();
  std::uniform_int_distribution<std::size_t> pick_exp(0, exps.size() - 1);
  std::uniform_int_distribution<int> pick_kind(0, 3);
  bool ok = true;
  Json w = Json::array();
  for (int t = 0; t < 20; ++t) {
    const std::size_t rank = 1 + static_cast<std::size_t>(t % 2);
    const unsigned order = static_cast<unsigned>(t % 4);
    MomentSequence seq = MomentSequence::zero_extension(exps[pick_exp(rng)].values, rank, order);
    const int kind = pick_kind(rng);
    auto it = seq.entries.begin();
    std::advance(it, static_cast<long>(t % seq.entries.size()));
    if (kind == 1) it->second = random_func(rng, k);
    if (kind == 2) it->second += 1e-3 * Func::constant(k, 1.0);
    const Verdict a = verify_moment_sequence(h, seq, tol).verdict;
    const DerivationFamily fam = family_from_sequence(seq);
    const Verdict b = check_higher_order(h, fam, Strength::Scalar, tol).verdict;
    const Verdict c = check_higher_order(h, fam, Strength::Measure, tol).verdict;
    if (a != b || (c == Verdict::Pass && b != Verdict::Pass)) {
      ok = false;
      w.push_back({{"trial", t}, {"sequence", verdict_name(a)}, {"scalar", verdict_name(b)}, {"measure", verdict_name(c)}});
    }
  }
  s.expect("moment-derivation-equivalence", ok, 0.0, std::move(w));
}

void strength_gap_finding(Section& s, const Hypergroup& h, double tol, std::uint64_t seed) {
  const StrengthGapReport r = strength_gap_report(h, tol, seed);
  Json gaps = Json::array();
  for (std::size_t i = 0; i < r.entries.size(); ++i)
    if (r.entries[i].gap()) {
      const auto& e = r.entries[i];
      Json at = e.measure.failures.empty() ? Json() : Json::array({e.measure.failures[0].x, e.measure.failures[0].y,
                                                                   e.measure.failures[0].z.value_or(0)});
      gaps.push_back({{"exponential", io::to_json(e.exponential)}, {"measure_residual", e.measure.residual},
                      {"first_failure", at}});
    }
  if (r.group)
    s.expect("strength-gap", r.consistent(), 0.0, std::move(gaps));
  else
    s.add("strength-gap", Outcome::Info, 0.0, std::move(gaps));
}

void join_finding(Section& s, const Hypergroup& h, const std::vector<Exponential>& exps, double tol) {
  const auto& part = h.compact_part();
  if (part.empty()) return;
  std::vector<bool> in_compact(h.order(), false);
  for (Index c : part) in_compact[c] = true;
  const Index o = h.identity();
  double worst = 0.0;
  bool ok = true;
  Json w = Json::array();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const Exponential& m = exps[i];
    bool constant_on_compact = true;
    for (Index c : part) constant_on_compact = constant_on_compact && std::abs(m(c) - m(o)) <= tol;
    const linalg::Matrix space = monomial_space(h, m, 3);
    double dev = 0.0;
    for (Eigen::Index j = 0; j < space.cols(); ++j)
      for (Index x = 0; x < h.order(); ++x) {
        const Complex v = space(static_cast<Eigen::Index>(x), j);
        if (!constant_on_compact && !in_compact[x]) dev = std::max(dev, std::abs(v));
        if (constant_on_compact && in_compact[x])
          dev = std::max(dev, std::abs(v - space(static_cast<Eigen::Index>(o), j)));
      }
    worst = std::max(worst, dev);
    if (dev > tol) {
      ok = false;
      w.push_back({{"exponential", i}, {"case", constant_on_compact ? 2 : 1}, {"deviation", dev}});
    }
  }
  s.expect("join-classification", ok, worst, std::move(w));
}

void sine_finding(Section& s, const Hypergroup& h, const std::vector<Exponential>& exps) {
  Json dims = Json::array();
  for (const auto& m : exps) dims.push_back(sine_space(h, m).cols());
  s.add("sine-space", Outcome::Info, 0.0, std::move(dims));
}

// ---- command helpers ---------------------------------------------------------

std::string echo_of(const std::vector<std::string>& args) {
  std::string e = "hgw";
  for (const auto& a : args) e += " " + a;
  return e;
}

int finish(const Report& r, std::ostream& out) {
  out << r.render();
  return r.any_failure() ? kExitFail : kExitPass;
}

const Exponential& pick_exponential(const std::vector<Exponential>& exps, std::size_t index) {
  if (index >= exps.size())
    throw ArgumentError("exponential index " + std::to_string(index) + " out of range (found " +
                        std::to_string(exps.size()) + ")");
  return exps[index];
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"validate", "exponentials", "haar",       "join",   "degree",
                                                 "moments",  "derivation",   "catalog", "verify-theorems"};
  return names;
}

std::span<const OperationRoute> operation_routes() { return kRoutes; }

Report verify_theorems(const std::vector<Hypergroup>& hypergroups, double axiom_tol, double tol, std::uint64_t seed,
                       const std::string& echo) {
  Report report(echo, seed, axiom_tol, tol);
  for (const Hypergroup& h : hypergroups) {
    std::mt19937_64 rng(seed);
    Section& s = report.section(h);
    axioms_finding(s, h, axiom_tol);
    haar_finding(s, h, axiom_tol);
    algebra_finding(s, h, rng);
    const auto exps = exponentials_or_partial(h, tol, seed, s);
    difference_findings(s, h, exps, axiom_tol, rng);
    moment_findings(s, h, exps, tol);
    correspondence_finding(s, h, exps, tol, rng);
    sequence_equivalence_finding(s, h, exps, tol, rng);
    strength_gap_finding(s, h, tol, seed);
    join_finding(s, h, exps, tol);
    sine_finding(s, h, exps);
  }
  return report;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite commutative hypergroup workbench", "hgw"};
  app.require_subcommand(1);

  double tol = kSpectralTol;
  double axiom_tol = kAxiomTol;
  std::uint64_t seed = 0;
  std::string path, path_b, out_path, function_path, family_path, strength_text, catalog_name;
  std::size_t exp_index = 0, rank = 1;
  unsigned max_n = 6, order = 2;
  bool all_catalog = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check the hypergroup axioms");
  validate_cmd->add_option("path", path, "Hypergroup file")->required();
  validate_cmd->add_option("--tol", axiom_tol, "Axiom tolerance");

  auto* exp_cmd = app.add_subcommand("exponentials", "Enumerate exponentials");
  exp_cmd->add_option("path", path, "Hypergroup file")->required();
  exp_cmd->add_option("--tol", tol, "Spectral tolerance");
  exp_cmd->add_option("--seed", seed, "Random seed");

  auto* haar_cmd = app.add_subcommand("haar", "Normalized Haar measure");
  haar_cmd->add_option("path", path, "Hypergroup file")->required();

  auto* join_cmd = app.add_subcommand("join", "Join of a compact and a discrete hypergroup");
  join_cmd->add_option("compact", path, "Compact part C")->required();
  join_cmd->add_option("discrete", path_b, "Discrete part D")->required();
  join_cmd->add_option("--out", out_path, "Output hypergroup file (default: standard output)");

  auto* degree_cmd = app.add_subcommand("degree", "Degree of a generalized exponential monomial");
  degree_cmd->add_option("path", path, "Hypergroup file")->required();
  degree_cmd->add_option("--function", function_path, "Function file")->required();
  degree_cmd->add_option("--exponential", exp_index, "Index into the sorted exponential list");
  degree_cmd->add_option("--max-n", max_n, "Largest degree searched");
  degree_cmd->add_option("--tol", tol, "Spectral tolerance");
  degree_cmd->add_option("--seed", seed, "Random seed");

  auto* moments_cmd = app.add_subcommand("moments", "Enumerate moment function sequences");
  moments_cmd->add_option("path", path, "Hypergroup file")->required();
  moments_cmd->add_option("--exponential", exp_index, "Index into the sorted exponential list");
  moments_cmd->add_option("--rank", rank, "Rank r")->check(CLI::PositiveNumber);
  moments_cmd->add_option("--order", order, "Largest |alpha|");
  moments_cmd->add_option("--out", out_path, "Write the representative sequence here");
  moments_cmd->add_option("--tol", tol, "Spectral tolerance");
  moments_cmd->add_option("--seed", seed, "Random seed");

  auto* der_cmd = app.add_subcommand("derivation", "Check a derivation family");
  der_cmd->add_option("path", path, "Hypergroup file")->required();
  der_cmd->add_option("--family", family_path, "Derivation family file")->required();
  der_cmd->add_option("--strength", strength_text, "scalar | measure (default: the file's tag)")
      ->check(CLI::IsMember({"scalar", "measure"}));
  der_cmd->add_option("--tol", tol, "Spectral tolerance");

  auto* cat_cmd = app.add_subcommand("catalog", "Built-in hypergroups");
  cat_cmd->require_subcommand(1);
  auto* cat_list = cat_cmd->add_subcommand("list", "List catalog names");
  auto* cat_emit = cat_cmd->add_subcommand("emit", "Write one catalog hypergroup");
  cat_emit->add_option("name", catalog_name, "Catalog name")->required();
  cat_emit->add_option("--out", out_path, "Output file (default: standard output)");

  auto* verify_cmd = app.add_subcommand("verify-theorems", "Run the theorem-verification harness");
  verify_cmd->add_option("path", path, "Hypergroup file");
  verify_cmd->add_flag("--all-catalog", all_catalog, "Run on every catalog hypergroup");
  verify_cmd->add_option("--tol", tol, "Spectral tolerance");
  verify_cmd->add_option("--axiom-tol", axiom_tol, "Axiom tolerance");
  verify_cmd->add_option("--seed", seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitError;
  }

  const std::string echo = echo_of(args);
  const auto start = std::chrono::steady_clock::now();
  int status = kExitPass;
  try {
    if (*validate_cmd) {
      const Hypergroup h = io::load_hypergroup(path);
      Report r(echo, seed, axiom_tol, tol);
      Section& s = r.section(h);
      const AxiomReport ar = validate(h, axiom_tol);
      for (const auto& c : ar.checks)
        s.expect(std::string("axiom.") + axiom_name(c.axiom), c.pass, c.residual, c.witness);
      status = finish(r, out);
    } else if (*exp_cmd) {
      const Hypergroup h = io::load_hypergroup(path);
      Report r(echo, seed, axiom_tol, tol);
      Section& s = r.section(h);
      const auto exps = exponentials_or_partial(h, tol, seed, s);
      Json list = Json::array();
      for (const auto& m : exps) list.push_back(exponential_json(m));
      s.data["exponentials"] = std::move(list);
      status = finish(r, out);
    } else if (*haar_cmd) {
      const Hypergroup h = io::load_hypergroup(path);
      Report r(echo, seed, axiom_tol, tol);
      haar_finding(r.section(h), h, axiom_tol);
      status = finish(r, out);
    } else if (*join_cmd) {
      const Hypergroup j = join(io::load_hypergroup(path), io::load_hypergroup(path_b));
      if (out_path.empty()) {
        out << io::to_json(j).dump(2) << "\n";
      } else {
        io::save_hypergroup(j, out_path);
        Report r(echo, seed, axiom_tol, tol);
        Section& s = r.section(j);
        const AxiomReport ar = validate(j, axiom_tol);
        s.expect("axioms", ar.all_pass());
        s.data["written"] = out_path;
        status = finish(r, out);
      }
    } else if (*degree_cmd) {
      const Hypergroup h = io::load_hypergroup(path);
      const Func phi = io::func_from_json(io::read_json(function_path), h.order());
      Report r(echo, seed, axiom_tol, tol);
      Section& s = r.section(h);
      const auto exps = exponentials_or_partial(h, tol, seed, s);
      const Exponential& m = pick_exponential(exps, exp_index);
      const DegreeReport d = degree(h, phi, m, max_n, tol);
      Json dj = {{"degree", d.degree ? Json(*d.degree) : Json()},
                 {"zero_function", d.zero_function},
                 {"witness", d.witness},
                 {"residual", d.residual},
                 {"is_sine", is_sine(h, phi, m, tol)},
                 {"variety_dimension", variety_dimension(h, phi)}};
      s.data["degree"] = std::move(dj);
      s.add("degree", Outcome::Info, d.residual, {{{"degree", d.degree ? Json(*d.degree) : Json()}}});
      if (d.degree && *d.degree >= 1) {
        const double hit = convolve(h, difference_product(h, m, d.witness), phi).max_abs();
        s.expect("degree.witness", hit > tol * phi.max_abs(), hit, d.witness);
      }
      status = finish(r, out);
    } else if (*moments_cmd) {
      const Hypergroup h = io::load_hypergroup(path);
      Report r(echo, seed, axiom_tol, tol);
      Section& s = r.section(h);
      const auto exps = exponentials_or_partial(h, tol, seed, s);
      const Exponential& m = pick_exponential(exps, exp_index);
      const MomentEnumeration en = enumerate_moment_sequences(h, m, rank, order, tol);
      Json nodes = Json::array();
      for (const auto& n : en.nodes)
        nodes.push_back({{"alpha", n.alpha.entries()}, {"dimension", n.space.dimension}, {"residual", n.space.residual}});
      s.data["nodes"] = std::move(nodes);
      s.expect("moments.extension", en.complete);
      const SequenceCheck v = verify_moment_sequence(h, en.representative, tol);
      s.expect("moments.verify", v.verdict == Verdict::Pass, v.residual);
      const MomexpReport mr = momexp_harness(h, en.representative, tol);
      Json entries = Json::array();
      for (const auto& e : mr.entries)
        entries.push_back({{"alpha", e.alpha.entries()},
                           {"zero_function", e.zero_function},
                           {"degree", e.degree ? Json(*e.degree) : Json()},
                           {"variety_dimension", e.variety_dim},
                           {"variety_bound", e.variety_bound}});
      s.expect("momexp", mr.verdict == Verdict::Pass, 0.0, std::move(entries));
      if (!out_path.empty()) io::write_text(out_path, io::to_json(en.representative).dump(2) + "\n");
      status = finish(r, out);
    } else if (*der_cmd) {
      const Hypergroup h = io::load_hypergroup(path);
      auto [fam, strength] = io::family_from_json(io::read_json(family_path), h.order());
      if (!strength_text.empty()) strength = strength_text == "measure" ? Strength::Measure : Strength::Scalar;
      Report r(echo, seed, axiom_tol, tol);
      Section& s = r.section(h);
      const MultiplierHom& d0 = fam.at(MultiIndex::zero(fam.rank));
      const std::string tag = strength_name(strength);
      const IdentityCheck mult = check_multiplicative(h, d0, strength, tol);
      s.expect("multiplicative." + tag, mult.verdict == Verdict::Pass, mult.residual);
      const IdentityCheck ho = check_higher_order(h, fam, strength, tol);
      Json failures = Json::array();
      for (const auto& f : ho.failures)
        failures.push_back({{"alpha", f.alpha ? Json(f.alpha->entries()) : Json()},
                            {"x", f.x},
                            {"y", f.y},
                            {"z", f.z ? Json(*f.z) : Json()},
                            {"residual", f.residual}});
      s.expect("higher-order." + tag, ho.verdict == Verdict::Pass, ho.residual, std::move(failures));
      Json order_w = Json::array();
      bool order_ok = true, refused = false;
      for (const auto& [alpha, d] : fam.members) {
        const OrderCheck oc = check_generalized_order(h, d, d0, alpha.norm(), strength, tol);
        if (oc.verdict == Verdict::PreconditionFailed) refused = true;
        if (oc.verdict == Verdict::Fail) order_ok = false;
        if (oc.verdict != Verdict::Pass)
          order_w.push_back({{"alpha", alpha.entries()}, {"verdict", verdict_name(oc.verdict)}, {"diagnostic", oc.diagnostic}});
      }
      if (refused && order_ok)
        s.add("generalized-order." + tag, Outcome::Warn, 0.0, std::move(order_w));
      else
        s.expect("generalized-order." + tag, order_ok, 0.0, std::move(order_w));
      status = finish(r, out);
    } else if (*cat_cmd) {
      if (*cat_list) {
        for (const auto& n : catalog::names()) out << n << "\n";
      } else if (*cat_emit) {
        const Hypergroup h = catalog::make(catalog_name);
        if (out_path.empty())
          out << io::to_json(h).dump(2) << "\n";
        else
          io::save_hypergroup(h, out_path);
      }
    } else if (*verify_cmd) {
      std::vector<Hypergroup> hs;
      if (all_catalog) hs = catalog::all();
      if (!path.empty()) hs.push_back(io::load_hypergroup(path));
      if (hs.empty()) throw ArgumentError("verify-theorems needs a hypergroup file or --all-catalog");
      status = finish(verify_theorems(hs, axiom_tol, tol, seed, echo), out);
    }
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  err << "wall_time_ms: " << elapsed << "\n";
  return status;
}

}  // namespace hgw::cli
