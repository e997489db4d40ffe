#include "hgw/spectral.hpp"

#include "hgw/algebra.hpp"
#include "hgw/errors.hpp"

#include <algorithm>
#include <random>

namespace hgw {

double exponential_residual(const Hypergroup& h, const Func& m) {
  const std::size_t k = h.order();
  if (m.size() != k) throw StructuralError("exponential_residual: size mismatch");
  double res = std::abs(m[h.identity()] - 1.0);
  for (Index x = 0; x < k; ++x)
    for (Index y = x; y < k; ++y) res = std::max(res, std::abs(spread(h, m, x, y) - m[x] * m[y]));
  return res;
}

std::optional<Exponential> as_exponential(const Hypergroup& h, const Func& m, double tol) {
  const double res = exponential_residual(h, m);
  if (res > tol) return std::nullopt;
  return Exponential{m, res};
}

namespace {

// Orders exponentials by real parts descending, then imaginary parts
// descending, coordinate by coordinate; differences below kDedupTol are ties.
bool exponential_before(const Exponential& a, const Exponential& b) {
  for (Index x = 0; x < a.values.size(); ++x) {
    const Complex d = a.values[x] - b.values[x];
    if (std::abs(d.real()) > kDedupTol) return d.real() > 0.0;
  }
  for (Index x = 0; x < a.values.size(); ++x) {
    const Complex d = a.values[x] - b.values[x];
    if (std::abs(d.imag()) > kDedupTol) return d.imag() > 0.0;
  }
  return false;
}

std::vector<linalg::Matrix> translation_matrices(const Hypergroup& h) {
  std::vector<linalg::Matrix> ts;
  ts.reserve(h.order());
  for (Index y = 0; y < h.order(); ++y) ts.push_back(translation_matrix(h, y));
  return ts;
}

// Columns: (tau_y - m(y) id) g for every column g of basis and every y.
linalg::Matrix difference_images(const std::vector<linalg::Matrix>& ts, const Exponential& m,
                                 const linalg::Matrix& basis) {
  const Eigen::Index k = basis.rows(), d = basis.cols();
  linalg::Matrix out(k, d * static_cast<Eigen::Index>(ts.size()));
  for (std::size_t y = 0; y < ts.size(); ++y)
    out.middleCols(static_cast<Eigen::Index>(y) * d, d) = ts[y] * basis - m(y) * basis;
  return out;
}

bool same_subspace(const linalg::Matrix& a, const linalg::Matrix& b) {
  if (a.cols() != b.cols()) return false;
  const linalg::Matrix off = a - b * (b.adjoint() * a);
  return linalg::max_abs(off) <= kDedupTol;
}

linalg::Matrix unit_column(const Func& phi) {
  linalg::Matrix col(phi.size(), 1);
  col.col(0) = phi.values() / phi.values().norm();
  return col;
}

}  // namespace

std::vector<Exponential> find_exponentials(const Hypergroup& h, double tol, std::uint64_t seed) {
  const std::size_t k = h.order();
  const Index o = h.identity();
  const auto ts = translation_matrices(h);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Exponential> found;
  constexpr int kAttempts = 6;  // first try plus 5 retries
  for (int attempt = 0; attempt < kAttempts && found.size() < k; ++attempt) {
    linalg::Matrix combo = linalg::Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (const auto& t : ts) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      combo += Complex(re, im) * t;
    }
    Eigen::ComplexEigenSolver<linalg::Matrix> solver(combo, true);
    if (solver.info() != Eigen::Success) continue;
    const linalg::Matrix& vecs = solver.eigenvectors();
    for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
      const linalg::Vector v = vecs.col(j);
      const Complex at_o = v(static_cast<Eigen::Index>(o));
      if (std::abs(at_o) <= 1e-10 * linalg::max_abs(v)) continue;
      auto m = as_exponential(h, Func(v / at_o), tol);
      if (!m) continue;
      const bool dup = std::any_of(found.begin(), found.end(), [&](const Exponential& e) {
        return sup_distance(e.values, m->values) <= kDedupTol;
      });
      if (!dup) found.push_back(std::move(*m));
    }
  }
  std::sort(found.begin(), found.end(), exponential_before);
  if (found.size() < k)
    throw PartialExponentialsError("found " + std::to_string(found.size()) + " of " + std::to_string(k) +
                                       " exponentials after " + std::to_string(kAttempts) + " attempts",
                                   std::move(found));
  return found;
}

Measure modified_difference(const Hypergroup& h, const Exponential& m, Index y) {
  Measure d = Measure::zero(h.order());
  d[h.inverse(y)] += 1.0;
  d[h.identity()] -= m(y);
  return d;
}

Measure difference_product(const Hypergroup& h, const Exponential& m, std::span<const Index> ys) {
  if (ys.empty()) throw ArgumentError("difference_product: empty increment list");
  Measure acc = modified_difference(h, m, ys[0]);
  for (std::size_t i = 1; i < ys.size(); ++i) acc = convolve(h, acc, modified_difference(h, m, ys[i]));
  return acc;
}

MonomialCheck is_generalized_monomial(const Hypergroup& h, const Func& phi, const Exponential& m, unsigned n,
                                      double tol) {
  if (phi.size() != h.order()) throw StructuralError("is_generalized_monomial: size mismatch");
  if (phi.max_abs() == 0.0) return {true, 0.0};
  const auto ts = translation_matrices(h);
  linalg::Matrix basis = unit_column(phi);
  for (unsigned j = 0;; ++j) {
    const linalg::Matrix images = difference_images(ts, m, basis);
    const double s = linalg::spectral_norm(images);
    if (j == n || s <= tol) return {s <= tol, s};
    basis = linalg::column_basis(images, tol);
  }
}

DegreeReport degree(const Hypergroup& h, const Func& phi, const Exponential& m, unsigned max_n, double tol) {
  if (phi.size() != h.order()) throw StructuralError("degree: size mismatch");
  DegreeReport report;
  if (phi.max_abs() == 0.0) {
    report.zero_function = true;
    return report;
  }
  const auto ts = translation_matrices(h);
  linalg::Matrix basis = unit_column(phi);
  for (unsigned j = 0; j <= max_n; ++j) {
    const linalg::Matrix images = difference_images(ts, m, basis);
    report.residual = linalg::spectral_norm(images);
    if (report.residual <= tol) {
      report.degree = j;
      break;
    }
    linalg::Matrix next = linalg::column_basis(images, tol);
    if (same_subspace(next, basis)) return report;  // chain is stuck above {0}
    basis = std::move(next);
  }
  if (!report.degree || *report.degree == 0) return report;

  // Walk down the recursion: some Delta_{m;y} * g has degree exactly one less.
  Func g = phi;
  for (unsigned remaining = *report.degree; remaining-- > 0;) {
    bool stepped = false;
    for (Index y = 0; y < h.order() && !stepped; ++y) {
      Func next = convolve(h, modified_difference(h, m, y), g);
      if (next.values().norm() <= tol * g.values().norm()) continue;
      if (!is_generalized_monomial(h, next, m, remaining, tol).holds) continue;
      if (remaining > 0 && is_generalized_monomial(h, next, m, remaining - 1, tol).holds) continue;
      report.witness.push_back(y);
      g = std::move(next);
      stepped = true;
    }
    if (!stepped) break;
  }
  return report;
}

bool is_sine(const Hypergroup& h, const Func& phi, const Exponential& m, double tol) {
  if (phi.max_abs() == 0.0) return false;
  if (std::abs(phi[h.identity()]) > tol * phi.max_abs()) return false;
  const DegreeReport d = degree(h, phi, m, 1, tol);
  return d.degree && *d.degree == 1;
}

std::size_t variety_dimension(const Hypergroup& h, const Func& f, double rank_tol) {
  const auto k = static_cast<Eigen::Index>(h.order());
  linalg::Matrix translates(k, k);
  for (Index y = 0; y < h.order(); ++y) translates.row(static_cast<Eigen::Index>(y)) = translate(h, f, y).values();
  return linalg::numerical_rank(translates, rank_tol);
}

linalg::Matrix monomial_space(const Hypergroup& h, const Exponential& m, unsigned n, double rank_tol) {
  const auto k = static_cast<Eigen::Index>(h.order());
  const auto ts = translation_matrices(h);
  linalg::Matrix complement = linalg::Matrix::Identity(k, k);  // projector onto V_{j-1}^perp; V_{-1} = {0}
  linalg::Matrix space;
  std::vector<linalg::Matrix> diffs;
  double scale = 0.0;
  for (Eigen::Index y = 0; y < k; ++y) {
    diffs.push_back(ts[static_cast<std::size_t>(y)] - m(static_cast<Index>(y)) * linalg::Matrix::Identity(k, k));
    scale = std::max(scale, linalg::spectral_norm(diffs.back()));
  }
  for (unsigned j = 0; j <= n; ++j) {
    linalg::Matrix stacked(k * k, k);
    for (Eigen::Index y = 0; y < k; ++y)
      stacked.middleRows(y * k, k) = complement * diffs[static_cast<std::size_t>(y)];
    space = linalg::nullspace(stacked, rank_tol, scale);
    complement = linalg::Matrix::Identity(k, k) - space * space.adjoint();
  }
  return space;
}

linalg::Matrix sine_space(const Hypergroup& h, const Exponential& m, double rank_tol) {
  const linalg::Matrix v1 = monomial_space(h, m, 1, rank_tol);
  if (v1.cols() == 0) return v1;
  const linalg::Matrix at_o = v1.row(static_cast<Eigen::Index>(h.identity()));
  if (linalg::max_abs(at_o) <= rank_tol) return v1;
  return v1 * linalg::nullspace(at_o, rank_tol);
}

}  // namespace hgw
