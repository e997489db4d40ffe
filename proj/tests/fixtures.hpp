#pragma once

#include "hgw/algebra.hpp"
#include "hgw/catalog.hpp"
#include "hgw/hypercore.hpp"
#include "hgw/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace hgw::testing {

inline Func random_func(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Func f = Func::zero(k);
  for (Index i = 0; i < k; ++i) {
    const double re = u(rng);
    const double im = u(rng);
    f[i] = Complex(re, im);
  }
  return f;
}

inline Measure random_measure(std::mt19937_64& rng, std::size_t k) { return Measure(random_func(rng, k).values()); }

/// Associative, commutative table with basis s^j (j < n) where (s - 1)^n = 0.
/// Not a hypergroup (negative weights), but its algebra has a single
/// character m = 1 with nontrivial monomials: x -> x is a sine, x -> x^2 has
/// degree 2. Used to reach code paths that finite hypergroups never exercise.
inline Hypergroup unipotent(std::size_t n) {
  // s^j = sum_i C(j, i) (s - 1)^i; reduce products in the (s - 1) basis.
  auto binom = [](std::size_t a, std::size_t b) {
    double r = 1.0;
    for (std::size_t i = 0; i < b; ++i) r = r * static_cast<double>(a - i) / static_cast<double>(i + 1);
    return b > a ? 0.0 : r;
  };
  // Change of basis: P(i, j) = C(j, i) maps s-coordinates to e-coordinates.
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = binom(j, i);
  const Eigen::MatrixXd pinv = p.inverse();
  std::vector<double> table(n * n * n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i <= a; ++i)
        for (std::size_t j = 0; j <= b; ++j)
          if (i + j < n) e(static_cast<Eigen::Index>(i + j)) += binom(a, i) * binom(b, j);
      const Eigen::VectorXd s = pinv * e;
      for (std::size_t z = 0; z < n; ++z) table[(a * n + b) * n + z] = std::round(s(static_cast<Eigen::Index>(z)));
    }
  std::vector<std::string> labels;
  std::vector<Index> inv;
  for (std::size_t j = 0; j < n; ++j) {
    labels.push_back("s" + std::to_string(j));
    inv.push_back(j);
  }
  return Hypergroup("U" + std::to_string(n), labels, 0, inv, table);
}

inline Exponential unit_exponential(const Hypergroup& h) {
  return *as_exponential(h, Func::constant(h.order(), 1.0));
}

/// Characters of Z_n: x -> exp(2 pi i j x / n).
inline std::vector<Func> cyclic_characters(std::size_t n) {
  std::vector<Func> out;
  for (std::size_t j = 0; j < n; ++j) {
    Func f = Func::zero(n);
    for (std::size_t x = 0; x < n; ++x)
      f[x] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j * x) / static_cast<double>(n));
    out.push_back(f);
  }
  return out;
}

/// Exhaustive solve of m(o) = 1, m(x * y) = m(x) m(y) through its linear form
/// T_y m = m(y) m: branch on every eigenvalue of every T_y in turn and keep
/// the intersected kernels that stay nonzero. Each surviving line is one
/// exponential (normalized at o, then checked against the equation).
inline std::vector<Func> brute_force_exponentials(const Hypergroup& h) {
  const std::size_t k = h.order();
  const auto kk = static_cast<Eigen::Index>(k);
  std::vector<Eigen::MatrixXcd> ts;
  std::vector<std::vector<Complex>> spectra;
  for (Index y = 0; y < k; ++y) {
    Eigen::MatrixXcd t(kk, kk);
    for (Index x = 0; x < k; ++x)
      for (Index z = 0; z < k; ++z)
        t(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(z)) = h.weight(x, y, z);
    std::vector<Complex> distinct;
    const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(t, false).eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      bool seen = false;
      for (const Complex& d : distinct) seen = seen || std::abs(d - ev(i)) < 1e-6;
      if (!seen) distinct.push_back(ev(i));
    }
    ts.push_back(t);
    spectra.push_back(distinct);
  }
  // Kernel of the stacked constraints, as orthonormal columns.
  auto kernel = [&](const Eigen::MatrixXcd& stacked) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()(i) > 1e-7;
    return Eigen::MatrixXcd(svd.matrixV().rightCols(kk - r));
  };
  std::vector<Func> found;
  std::function<void(Index, const Eigen::MatrixXcd&)> search = [&](Index y, const Eigen::MatrixXcd& rows) {
    if (y == k) {
      const Eigen::MatrixXcd v = kernel(rows);
      if (v.cols() != 1) return;
      const Complex at_o = v(static_cast<Eigen::Index>(h.identity()), 0);
      if (std::abs(at_o) < 1e-9) return;
      Func f{Func(Eigen::VectorXcd(v.col(0) / at_o))};
      if (exponential_residual(h, f) <= 1e-8) found.push_back(f);
      return;
    }
    for (const Complex& lambda : spectra[y]) {
      Eigen::MatrixXcd next(rows.rows() + kk, kk);
      next << rows, ts[y] - lambda * Eigen::MatrixXcd::Identity(kk, kk);
      if (kernel(next).cols() > 0) search(y + 1, next);
    }
  };
  search(0, Eigen::MatrixXcd(0, kk));
  return found;
}

/// True when every function in `want` matches some function in `got` and the
/// lists have equal length.
inline bool same_function_set(const std::vector<Func>& got, const std::vector<Func>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    bool hit = false;
    for (const auto& g : got) hit = hit || sup_distance(g, w) <= tol;
    if (!hit) return false;
  }
  return true;
}

/// Degree by brute force over all increment tuples: the least n <= max_n with
/// Delta_{m;y_1..y_{n+1}} * phi = 0 for every tuple; -1 if none.
inline int brute_force_degree(const Hypergroup& h, const Func& phi, const Exponential& m, int max_n, double tol) {
  const std::size_t k = h.order();
  std::vector<Func> layer = {phi};
  for (int n = 0; n <= max_n; ++n) {
    std::vector<Func> next;
    double worst = 0.0;
    for (const Func& g : layer)
      for (Index y = 0; y < k; ++y) {
        Func img = convolve(h, modified_difference(h, m, y), g);
        worst = std::max(worst, img.max_abs());
        next.push_back(std::move(img));
      }
    if (worst <= tol) return n;
    layer = std::move(next);
  }
  return -1;
}

/// Dense nullspace dimension via full-pivot LU.
inline long lu_nullity(const Eigen::MatrixXcd& a, double threshold = 1e-9) {
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  lu.setThreshold(threshold);
  return static_cast<long>(a.cols()) - static_cast<long>(lu.rank());
}

}  // namespace hgw::testing
