#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace hgw::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Singular values at or below rel_tol * sigma_max count as zero.
std::size_t numerical_rank(const Matrix& a, double rel_tol);

// Orthonormal basis (columns) of ker(a), same rank rule as numerical_rank.
// Singular values are compared against rel_tol * max(sigma_max, scale), so a
// matrix that is round-off relative to scale counts as zero.
Matrix nullspace(const Matrix& a, double rel_tol, double scale = 0.0);

// Orthonormal basis of the column span of a. Directions whose singular value
// is at or below abs_tol are dropped; the threshold is absolute.
Matrix column_basis(const Matrix& a, double abs_tol);

// Largest singular value, 0 for empty input.
double spectral_norm(const Matrix& a);

struct LeastSquares {
  Vector solution;    // minimum-norm least-squares solution
  Matrix null_basis;  // orthonormal basis of ker(a)
  double residual = 0.0;  // max |a*solution - b|
  std::size_t rank = 0;
};

LeastSquares solve_least_squares(const Matrix& a, const Vector& b, double rel_tol);

double max_abs(const Vector& v);
double max_abs(const Matrix& m);

}  // namespace hgw::linalg
