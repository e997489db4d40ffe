#include "hgw/derivations.hpp"

#include "hgw/errors.hpp"

#include <algorithm>
#include <functional>

namespace hgw {

namespace {

constexpr std::size_t kMaxListedFailures = 32;
// Below this weight a structure constant is treated as outside the support.
constexpr double kSupportCut = 1e-12;

Measure dirac_of(const Hypergroup& h, Index x) { return dirac(h.order(), x); }

}  // namespace

Measure apply(const MultiplierHom& d, const Measure& mu) { return d(mu); }

Func extract_function(const MultiplierHom& d) {
  const std::size_t k = d.multiplier().size();
  const Func one = Func::constant(k, 1.0);
  Func out = Func::zero(k);
  for (Index x = 0; x < k; ++x) out[x] = pair(apply(d, dirac(k, x)), one);
  return out;
}

MultiplierHom build_from_function(Func phi) { return MultiplierHom(std::move(phi)); }

double module_homogeneity_defect(const linalg::Matrix& f, std::span<const Func> psis) {
  double worst = 0.0;
  for (const Func& psi : psis)
    for (Eigen::Index x = 0; x < f.cols(); ++x) {
      // F(psi . delta_x) = psi(x) F delta_x, against psi . F(delta_x).
      const linalg::Vector lhs = psi[static_cast<Index>(x)] * f.col(x);
      const linalg::Vector rhs = psi.values().cwiseProduct(f.col(x));
      worst = std::max(worst, linalg::max_abs(linalg::Vector(lhs - rhs)));
    }
  return worst;
}

const MultiplierHom& DerivationFamily::at(const MultiIndex& alpha) const {
  auto it = members.find(alpha);
  if (it == members.end()) throw ArgumentError("derivation family has no member " + alpha.str());
  return it->second;
}

DerivationFamily family_from_sequence(const MomentSequence& seq) {
  DerivationFamily fam;
  fam.rank = seq.rank;
  fam.order = seq.order;
  for (const auto& [alpha, phi] : seq.entries) fam.members.emplace(alpha, build_from_function(phi));
  return fam;
}

MomentSequence sequence_from_family(const DerivationFamily& fam) {
  MomentSequence seq;
  seq.rank = fam.rank;
  seq.order = fam.order;
  for (const auto& [alpha, d] : fam.members) seq.entries.emplace(alpha, extract_function(d));
  return seq;
}

const char* strength_name(Strength s) { return s == Strength::Scalar ? "scalar" : "measure"; }

namespace {

// Residual of a measure identity lhs = rhs on the Dirac pair (x, y).
// SCALAR pairs the difference with 1; MEASURE compares densities against
// delta_x * delta_y on its support (and raw masses off it).
void compare(const Hypergroup& h, Index x, Index y, const Measure& lhs, const Measure& rhs, Strength strength,
             const std::optional<MultiIndex>& alpha, double tol, IdentityCheck& out) {
  const Measure diff = lhs - rhs;
  auto note = [&](double r, std::optional<Index> z) {
    out.residual = std::max(out.residual, r);
    if (r <= tol) return;
    ++out.failure_count;
    if (out.failures.size() < kMaxListedFailures) out.failures.push_back({alpha, x, y, z, r});
  };
  if (strength == Strength::Scalar) {
    note(std::abs(pair(diff, Func::constant(h.order(), 1.0))), std::nullopt);
    return;
  }
  for (Index z = 0; z < h.order(); ++z) {
    const double c = h.weight(x, y, z);
    note(c > kSupportCut ? std::abs(diff[z]) / c : std::abs(diff[z]), z);
  }
}

}  // namespace

IdentityCheck check_multiplicative(const Hypergroup& h, const MultiplierHom& d0, Strength strength, double tol) {
  if (d0.multiplier().size() != h.order()) throw StructuralError("check_multiplicative: size mismatch");
  IdentityCheck out;
  for (Index x = 0; x < h.order(); ++x)
    for (Index y = 0; y < h.order(); ++y) {
      const Measure dx = dirac_of(h, x), dy = dirac_of(h, y);
      const Measure lhs = d0(convolve(h, dx, dy));
      const Measure rhs = convolve(h, d0(dx), d0(dy));
      compare(h, x, y, lhs, rhs, strength, std::nullopt, tol, out);
    }
  out.verdict = out.failure_count == 0 ? Verdict::Pass : Verdict::Fail;
  return out;
}

IdentityCheck check_higher_order(const Hypergroup& h, const DerivationFamily& fam, Strength strength, double tol) {
  const MomentSequence seq = sequence_from_family(fam);
  if (!seq.downward_closed()) throw ArgumentError("check_higher_order: index set is not downward closed");
  const std::size_t k = h.order();
  for (const auto& [alpha, d] : fam.members)
    if (d.multiplier().size() != k) throw StructuralError("check_higher_order: size mismatch");

  IdentityCheck out;
  const MultiplierHom& d0 = fam.at(MultiIndex::zero(fam.rank));
  const double base = exponential_residual(h, extract_function(d0));
  if (base > tol) {
    out.verdict = Verdict::PreconditionFailed;
    out.residual = base;
    out.diagnostic = "D_0 multiplier is not an exponential";
    return out;
  }

  // Images D_beta(delta_x), computed once.
  std::map<MultiIndex, std::vector<Measure>, GradedLess> images;
  for (const auto& [alpha, d] : fam.members) {
    auto& row = images[alpha];
    for (Index x = 0; x < k; ++x) row.push_back(d(dirac_of(h, x)));
  }

  for (const auto& [alpha, d] : fam.members) {
    struct Term {
      double coeff;
      const std::vector<Measure>* left;
      const std::vector<Measure>* right;
    };
    std::vector<Term> terms;
    for (const auto& beta : lower_set(alpha))
      terms.push_back({binomial(alpha, beta), &images.at(beta), &images.at(alpha - beta)});
    for (Index x = 0; x < k; ++x)
      for (Index y = 0; y < k; ++y) {
        const Measure lhs = d(convolve(h, dirac_of(h, x), dirac_of(h, y)));
        Measure rhs = Measure::zero(k);
        for (const Term& t : terms) rhs += t.coeff * convolve(h, (*t.left)[x], (*t.right)[y]);
        compare(h, x, y, lhs, rhs, strength, alpha, tol, out);
      }
  }
  out.verdict = out.failure_count == 0 ? Verdict::Pass : Verdict::Fail;
  return out;
}

namespace {

// <B(delta_x, delta_y), 1> for D = multiplier g, D_0 = multiplier m:
// entry (x, y) of the returned matrix.
linalg::Matrix scalar_defect(const Hypergroup& h, const Func& g, const MultiplierHom& d0) {
  const std::size_t k = h.order();
  const MultiplierHom d = build_from_function(g);
  const Func one = Func::constant(k, 1.0);
  linalg::Matrix b(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (Index x = 0; x < k; ++x)
    for (Index y = 0; y < k; ++y) {
      const Measure dx = dirac_of(h, x), dy = dirac_of(h, y);
      const Measure defect =
          d(convolve(h, dx, dy)) - convolve(h, d0(dx), d(dy)) - convolve(h, d(dx), d0(dy));
      b(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = pair(defect, one);
    }
  return b;
}

// Distance of each unit column from span{target}; max over columns.
double off_span_residual(const linalg::Matrix& basis, const linalg::Vector& target) {
  const linalg::Vector u = target / target.norm();
  const linalg::Matrix off = basis - u * (u.adjoint() * basis);
  return off.cols() == 0 ? 0.0 : off.colwise().norm().maxCoeff();
}

OrderCheck run_levels(unsigned n, linalg::Matrix basis, const linalg::Vector& order_zero_direction, double tol,
                      const std::function<linalg::Matrix(const linalg::Matrix&)>& slices) {
  OrderCheck out;
  for (unsigned level = n;; --level) {
    if (basis.cols() == 0) return out;
    if (level == 0) {
      out.residual = off_span_residual(basis, order_zero_direction);
      if (out.residual > tol) {
        out.verdict = Verdict::Fail;
        out.failing_level = 0;
        out.diagnostic = "defect slices are not multiples of D_0";
      }
      return out;
    }
    const linalg::Matrix images = slices(basis);
    out.residual = linalg::spectral_norm(images);
    basis = linalg::column_basis(images, tol);
  }
}

}  // namespace

OrderCheck check_generalized_order(const Hypergroup& h, const MultiplierHom& d, const MultiplierHom& d0, unsigned n,
                                   Strength strength, double tol) {
  const std::size_t k = h.order();
  if (d.multiplier().size() != k || d0.multiplier().size() != k)
    throw StructuralError("check_generalized_order: size mismatch");
  const Func m = extract_function(d0);
  const Func g = extract_function(d);

  if (strength == Strength::Scalar) {
    if (exponential_residual(h, m) > tol) {
      OrderCheck out;
      out.verdict = Verdict::PreconditionFailed;
      out.diagnostic = "D_0 is not multiplicative";
      return out;
    }
    if (g.max_abs() == 0.0) return {};
    linalg::Matrix basis(static_cast<Eigen::Index>(k), 1);
    basis.col(0) = g.values() / g.values().norm();
    auto slices = [&](const linalg::Matrix& b) {
      const auto kk = static_cast<Eigen::Index>(k);
      linalg::Matrix out(kk, b.cols() * kk);
      for (Eigen::Index j = 0; j < b.cols(); ++j) out.middleCols(j * kk, kk) = scalar_defect(h, Func(b.col(j)), d0);
      return out;
    };
    return run_levels(n, std::move(basis), m.values(), tol, slices);
  }

  const IdentityCheck mult = check_multiplicative(h, d0, Strength::Measure, tol);
  if (mult.verdict != Verdict::Pass) {
    OrderCheck out;
    out.verdict = Verdict::PreconditionFailed;
    out.residual = mult.residual;
    out.diagnostic = "refused: D_0 is not multiplicative as a map of measures, so the defect recursion is not "
                     "well-posed at MEASURE strength";
    return out;
  }
  if (g.max_abs() == 0.0) return {};

  // Linear maps are k x k matrices (column x = L delta_x), vectorized
  // column-major into C^{k^2}. conv[x] is the matrix of nu -> delta_x * nu.
  const auto kk = static_cast<Eigen::Index>(k);
  std::vector<linalg::Matrix> conv(k, linalg::Matrix::Zero(kk, kk));
  for (Index x = 0; x < k; ++x)
    for (Index w = 0; w < k; ++w)
      for (Index z = 0; z < k; ++z)
        conv[x](static_cast<Eigen::Index>(z), static_cast<Eigen::Index>(w)) = h.weight(x, w, z);
  linalg::Matrix products(kk, kk * kk);  // column x * k + y = delta_x * delta_y
  for (Index x = 0; x < k; ++x)
    for (Index y = 0; y < k; ++y)
      products.col(static_cast<Eigen::Index>(x * k + y)) = convolve(h, dirac_of(h, x), dirac_of(h, y)).values();

  auto slices = [&](const linalg::Matrix& b) {
    linalg::Matrix out(kk * kk, b.cols() * kk);
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const Eigen::Map<const linalg::Matrix> l(b.col(j).data(), kk, kk);
      for (Eigen::Index y = 0; y < kk; ++y) {
        Eigen::Map<linalg::Matrix> slice(out.col(j * kk + y).data(), kk, kk);
        for (Eigen::Index x = 0; x < kk; ++x)
          slice.col(x) = l * products.col(x * kk + y) - m[static_cast<Index>(x)] * (conv[static_cast<Index>(x)] * l.col(y)) -
                         m[static_cast<Index>(y)] * (conv[static_cast<Index>(y)] * l.col(x));
      }
    }
    return out;
  };
  linalg::Matrix basis = linalg::Matrix::Zero(kk * kk, 1);
  linalg::Vector d0_vec = linalg::Vector::Zero(kk * kk);
  for (Eigen::Index x = 0; x < kk; ++x) {
    basis(x * kk + x, 0) = g[static_cast<Index>(x)];
    d0_vec(x * kk + x) = m[static_cast<Index>(x)];
  }
  basis /= basis.norm();
  return run_levels(n, std::move(basis), d0_vec, tol, slices);
}

std::size_t rank_of_hom(const MultiplierHom& f, double tol) {
  const auto& v = f.multiplier().values();
  return static_cast<std::size_t>((v.cwiseAbs().array() > tol).count());
}

EquivalenceReport equivalence_harness(const Hypergroup& h, const Exponential& m, const Func& phi, unsigned n,
                                      double tol, const std::optional<MomentRoute>& route) {
  EquivalenceReport r;
  r.monomial = is_generalized_monomial(h, phi, m, n, tol).holds;
  const MultiplierHom d = build_from_function(phi);
  const MultiplierHom d0 = build_from_function(m.values);
  r.order_at_most = check_generalized_order(h, d, d0, n, Strength::Scalar, tol).verdict == Verdict::Pass;
  r.agree = r.monomial == r.order_at_most;
  const DegreeReport deg = degree(h, phi, m, n, tol);
  r.degree = deg.degree;
  r.zero_function = deg.zero_function;
  r.round_trip = extract_function(d) == phi;
  r.rank = rank_of_hom(d, tol);
  r.variety_dim = variety_dimension(h, phi);
  if (route) {
    const unsigned level = route->alpha.norm();
    bool ok = verify_moment_sequence(h, route->sequence, tol).verdict == Verdict::Pass &&
              route->sequence.contains(route->alpha) && sup_distance(route->sequence.at(route->alpha), phi) <= tol;
    ok = ok && is_generalized_monomial(h, phi, m, level, tol).holds &&
         check_generalized_order(h, d, d0, level, Strength::Scalar, tol).verdict == Verdict::Pass;
    r.moment_route_agrees = ok;
  }
  return r;
}

std::size_t StrengthGapReport::gaps() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.gap(); }));
}

StrengthGapReport strength_gap_report(const Hypergroup& h, double tol, std::uint64_t seed) {
  StrengthGapReport report;
  report.group = h.is_group();
  std::vector<Exponential> exps;
  try {
    exps = find_exponentials(h, tol, seed);
  } catch (const PartialExponentialsError& e) {
    exps = e.found();
  }
  for (const auto& m : exps) {
    const MultiplierHom d0 = build_from_function(m.values);
    report.entries.push_back({m.values, check_multiplicative(h, d0, Strength::Scalar, tol),
                              check_multiplicative(h, d0, Strength::Measure, tol)});
  }
  return report;
}

}  // namespace hgw
