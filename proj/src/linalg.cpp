#include "hgw/linalg.hpp"

#include <algorithm>

namespace hgw::linalg {

namespace {

std::size_t rank_from(const Eigen::VectorXd& sv, double rel_tol, double scale = 0.0) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * std::max(sv(0), scale);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

}  // namespace

std::size_t numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(a);
  return rank_from(svd.singularValues(), rel_tol);
}

Matrix nullspace(const Matrix& a, double rel_tol, double scale) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Matrix::Identity(n, n);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto r = static_cast<Eigen::Index>(rank_from(svd.singularValues(), rel_tol, scale));
  return svd.matrixV().rightCols(n - r);
}

Matrix column_basis(const Matrix& a, double abs_tol) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > abs_tol) ++r;
  return svd.matrixU().leftCols(r);
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

LeastSquares solve_least_squares(const Matrix& a, const Vector& b, double rel_tol) {
  LeastSquares out;
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) {
    out.solution = Vector::Zero(n);
    out.null_basis = Matrix::Identity(n, n);
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const auto r = static_cast<Eigen::Index>(rank_from(sv, rel_tol));
  out.rank = static_cast<std::size_t>(r);

  // Truncated pseudo-inverse.
  Vector coeffs = svd.matrixU().leftCols(r).adjoint() * b;
  for (Eigen::Index i = 0; i < r; ++i) coeffs(i) /= sv(i);
  out.solution = svd.matrixV().leftCols(r) * coeffs;
  out.null_basis = svd.matrixV().rightCols(n - r);
  out.residual = max_abs(Vector(a * out.solution - b));
  return out;
}

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace hgw::linalg
