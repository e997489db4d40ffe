#include "hgw/moments.hpp"

#include "hgw/algebra.hpp"
#include "hgw/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hgw {

unsigned MultiIndex::norm() const { return std::accumulate(entries_.begin(), entries_.end(), 0u); }

double MultiIndex::factorial() const {
  double f = 1.0;
  for (unsigned a : entries_)
    for (unsigned i = 2; i <= a; ++i) f *= i;
  return f;
}

bool MultiIndex::leq(const MultiIndex& other) const {
  if (rank() != other.rank()) throw ArgumentError("multi-index rank mismatch");
  for (std::size_t i = 0; i < rank(); ++i)
    if (entries_[i] > other.entries_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.leq(*this)) throw ArgumentError("multi-index difference requires beta <= alpha");
  std::vector<unsigned> d(rank());
  for (std::size_t i = 0; i < rank(); ++i) d[i] = entries_[i] - other.entries_[i];
  return MultiIndex(std::move(d));
}

std::string MultiIndex::str() const {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < rank(); ++i) s << (i ? "," : "") << entries_[i];
  s << ')';
  return s.str();
}

double binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  if (!beta.leq(alpha)) throw ArgumentError("binomial(alpha, beta) requires beta <= alpha");
  double b = 1.0;
  for (std::size_t j = 0; j < alpha.rank(); ++j) {
    const unsigned n = alpha[j];
    const unsigned r = std::min(beta[j], n - beta[j]);
    for (unsigned i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  }
  return b;
}

bool GradedLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  const unsigned na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb;
  return a.entries() < b.entries();
}

std::vector<MultiIndex> graded_indices(std::size_t rank, unsigned max_norm) {
  std::vector<MultiIndex> out;
  std::vector<unsigned> cur(rank, 0);
  // Odometer over the box [0, max_norm]^rank, keeping |alpha| <= max_norm.
  while (true) {
    if (std::accumulate(cur.begin(), cur.end(), 0u) <= max_norm) out.emplace_back(cur);
    std::size_t i = 0;
    while (i < rank && cur[i] == max_norm) cur[i++] = 0;
    if (i == rank) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end(), GradedLess{});
  return out;
}

std::vector<MultiIndex> lower_set(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  std::vector<unsigned> cur(alpha.rank(), 0);
  while (true) {
    out.emplace_back(cur);
    std::size_t i = 0;
    while (i < alpha.rank() && cur[i] == alpha[i]) cur[i++] = 0;
    if (i == alpha.rank()) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end(), GradedLess{});
  return out;
}

const Func& MomentSequence::at(const MultiIndex& alpha) const {
  auto it = entries.find(alpha);
  if (it == entries.end()) throw ArgumentError("moment sequence has no entry " + alpha.str());
  return it->second;
}

bool MomentSequence::downward_closed() const {
  for (const auto& [alpha, f] : entries) {
    if (alpha.rank() != rank) return false;
    for (const auto& beta : lower_set(alpha))
      if (!contains(beta)) return false;
  }
  return contains(MultiIndex::zero(rank));
}

MomentSequence MomentSequence::zero_extension(const Func& m, std::size_t rank, unsigned order) {
  MomentSequence seq;
  seq.rank = rank;
  seq.order = order;
  for (const auto& alpha : graded_indices(rank, order))
    seq.entries.emplace(alpha, alpha.is_zero() ? m : Func::zero(m.size()));
  return seq;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::PreconditionFailed: return "precondition-failed";
  }
  return "?";
}

SequenceCheck verify_moment_sequence(const Hypergroup& h, const MomentSequence& seq, double tol) {
  if (!seq.downward_closed()) throw ArgumentError("verify_moment_sequence: index set is not downward closed");
  const std::size_t k = h.order();
  SequenceCheck out;
  const Func& m = seq.base();
  if (m.size() != k) throw StructuralError("verify_moment_sequence: size mismatch");
  const double base_res = exponential_residual(h, m);
  if (base_res > tol) {
    out.verdict = Verdict::PreconditionFailed;
    out.residual = base_res;
    out.diagnostic = "phi_0 is not an exponential";
    return out;
  }
  for (const auto& [alpha, phi] : seq.entries) {
    if (phi.size() != k) throw StructuralError("verify_moment_sequence: size mismatch");
    struct Term {
      double coeff;
      const Func* left;
      const Func* right;
    };
    std::vector<Term> terms;
    for (const auto& beta : lower_set(alpha)) terms.push_back({binomial(alpha, beta), &seq.at(beta), &seq.at(alpha - beta)});
    for (Index x = 0; x < k; ++x)
      for (Index y = 0; y < k; ++y) {
        Complex rhs = 0.0;
        for (const Term& t : terms) rhs += t.coeff * (*t.left)[x] * (*t.right)[y];
        const double r = std::abs(spread(h, phi, x, y) - rhs);
        if (!out.alpha || r > out.residual) {
          out.residual = r;
          out.alpha = alpha;
          out.x = x;
          out.y = y;
        }
      }
  }
  out.verdict = out.residual <= tol ? Verdict::Pass : Verdict::Fail;
  return out;
}

std::pair<linalg::Matrix, linalg::Vector> extension_system(const Hypergroup& h, const MomentSequence& below,
                                                           const MultiIndex& alpha) {
  const auto k = static_cast<Eigen::Index>(h.order());
  const Func& m = below.base();
  linalg::Matrix a = linalg::Matrix::Zero(k * k, k);
  linalg::Vector b = linalg::Vector::Zero(k * k);
  std::vector<MultiIndex> middle;
  for (const auto& beta : lower_set(alpha))
    if (!beta.is_zero() && beta != alpha) middle.push_back(beta);
  for (Eigen::Index x = 0; x < k; ++x)
    for (Eigen::Index y = 0; y < k; ++y) {
      const Eigen::Index row = x * k + y;
      const auto ux = static_cast<Index>(x), uy = static_cast<Index>(y);
      for (Eigen::Index z = 0; z < k; ++z) a(row, z) = h.weight(ux, uy, static_cast<Index>(z));
      a(row, x) -= m[uy];
      a(row, y) -= m[ux];
      for (const auto& beta : middle) b(row) += binomial(alpha, beta) * below.at(beta)[ux] * below.at(alpha - beta)[uy];
    }
  return {std::move(a), std::move(b)};
}

SolutionSpace solve_moment_extension(const Hypergroup& h, const MomentSequence& below, const MultiIndex& alpha,
                                     double tol, std::uint64_t seed, double rank_tol) {
  if (alpha.rank() != below.rank) throw ArgumentError("solve_moment_extension: rank mismatch");
  SolutionSpace out;
  if (alpha.is_zero()) {
    for (const auto& e : find_exponentials(h, tol, seed)) out.isolated.push_back(e.values);
    out.particular = out.isolated.front();
    return out;
  }
  for (const auto& beta : lower_set(alpha))
    if (beta != alpha && !below.contains(beta))
      throw ArgumentError("solve_moment_extension: missing predecessor " + beta.str() + " of " + alpha.str());

  const auto [a, b] = extension_system(h, below, alpha);
  const linalg::LeastSquares ls = linalg::solve_least_squares(a, b, rank_tol);
  out.particular = Func(ls.solution);
  out.residual = ls.residual;
  if (ls.residual > tol * std::max(1.0, linalg::max_abs(b))) {
    out.dimension = -1;
    return out;
  }
  for (Eigen::Index j = 0; j < ls.null_basis.cols(); ++j) out.basis.emplace_back(ls.null_basis.col(j));
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

MomentEnumeration enumerate_moment_sequences(const Hypergroup& h, const Exponential& m, std::size_t rank,
                                             unsigned order, double tol, Materialize policy) {
  if (rank == 0) throw ArgumentError("enumerate_moment_sequences: rank must be positive");
  MomentEnumeration out;
  MomentSequence& rep = out.representative;
  rep.rank = rank;
  rep.order = order;
  const MultiIndex zero = MultiIndex::zero(rank);
  rep.entries.emplace(zero, m.values);

  SolutionSpace base;
  base.particular = m.values;
  base.residual = m.residual;
  base.isolated = {m.values};
  out.nodes.push_back({zero, std::move(base)});

  for (const auto& alpha : graded_indices(rank, order)) {
    if (alpha.is_zero()) continue;
    SolutionSpace space = solve_moment_extension(h, rep, alpha, tol);
    if (!space.consistent()) {
      out.nodes.push_back({alpha, std::move(space)});
      out.complete = false;
      const unsigned broken = alpha.norm();
      std::erase_if(rep.entries, [broken](const auto& e) { return e.first.norm() >= broken; });
      rep.order = broken - 1;
      break;
    }
    Func chosen = space.particular;
    if (policy == Materialize::FirstDirection && !space.basis.empty()) chosen += space.basis.front();
    rep.entries.emplace(alpha, std::move(chosen));
    out.nodes.push_back({alpha, std::move(space)});
  }
  return out;
}

MomexpReport momexp_harness(const Hypergroup& h, const MomentSequence& seq, double tol) {
  MomexpReport report;
  const SequenceCheck check = verify_moment_sequence(h, seq, tol);
  if (check.verdict == Verdict::PreconditionFailed) {
    report.verdict = Verdict::PreconditionFailed;
    report.diagnostic = check.diagnostic;
    return report;
  }
  if (check.verdict == Verdict::Fail) {
    report.verdict = Verdict::Fail;
    report.diagnostic = "moment equation fails (residual " + std::to_string(check.residual) +
                        (check.alpha ? " at " + check.alpha->str() : std::string()) + ")";
  }
  const Exponential m{seq.base(), exponential_residual(h, seq.base())};
  for (const auto& [alpha, phi] : seq.entries) {
    MomexpEntry e;
    e.alpha = alpha;
    e.variety_bound = lower_set(alpha).size();
    if (phi.max_abs() <= tol) {
      e.zero_function = true;
      report.entries.push_back(std::move(e));
      continue;
    }
    const DegreeReport d = degree(h, phi, m, alpha.norm(), tol);
    e.degree = d.degree;
    e.variety_dim = variety_dimension(h, phi);
    e.pass = d.degree.has_value() && e.variety_dim <= e.variety_bound;
    if (!e.pass) {
      report.verdict = Verdict::Fail;
      if (!report.diagnostic.empty()) report.diagnostic += "; ";
      report.diagnostic += "bound violated at " + alpha.str();
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace hgw
