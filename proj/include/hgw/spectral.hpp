#pragma once

#include "hgw/hypercore.hpp"
#include "hgw/vectors.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace hgw {

inline constexpr double kDedupTol = 1e-6;

/// A verified exponential: m(o) = 1 and m(x * y) = m(x) m(y).
struct Exponential {
  Func values;
  double residual = 0.0;  // max deviation of the multiplicative law

  Complex operator()(Index x) const { return values[x]; }
};

/// max(|m(o) - 1|, max_{x,y} |m(x * y) - m(x) m(y)|).
double exponential_residual(const Hypergroup& h, const Func& m);

/// Wraps m as an Exponential when its residual is within tol.
std::optional<Exponential> as_exponential(const Hypergroup& h, const Func& m, double tol = kSpectralTol);

/// Thrown when fewer than k exponentials could be separated.
class PartialExponentialsError : public std::runtime_error {
 public:
  PartialExponentialsError(std::string what, std::vector<Exponential> found)
      : std::runtime_error(std::move(what)), found_(std::move(found)) {}
  const std::vector<Exponential>& found() const { return found_; }

 private:
  std::vector<Exponential> found_;
};

/// Enumerates exponentials as joint eigenvectors of the translation
/// operators: eigendecompose a random complex combination of them, normalize
/// each eigenvector at o and keep the ones passing the multiplicative check.
/// Up to 5 retries with fresh combinations. The result is deduplicated and
/// sorted (real parts descending, then imaginary parts descending), so m = 1
/// comes first.
std::vector<Exponential> find_exponentials(const Hypergroup& h, double tol = kSpectralTol,
                                           std::uint64_t seed = 0);

/// Delta_{m;y} = delta_{y^} - m(y) delta_o.
Measure modified_difference(const Hypergroup& h, const Exponential& m, Index y);

/// Delta_{m;y_1} * ... * Delta_{m;y_n}. Throws ArgumentError on empty ys.
Measure difference_product(const Hypergroup& h, const Exponential& m, std::span<const Index> ys);

struct MonomialCheck {
  bool holds = false;
  double residual = 0.0;
};

/// Whether every (n+1)-fold product of modified differences annihilates phi.
/// Computed by the subspace chain F_0 = span{phi},
/// F_{j+1} = span{Delta_{m;y} * g : g in F_j, y in X}. phi is scaled to unit
/// norm first, so tol is relative. The residual is the largest singular value
/// of the images spanning F_{n+1}. The zero function passes for every n.
MonomialCheck is_generalized_monomial(const Hypergroup& h, const Func& phi, const Exponential& m, unsigned n,
                                      double tol = kSpectralTol);

struct DegreeReport {
  std::optional<unsigned> degree;
  /// Increments y_1..y_n with Delta_{m;y_1..y_n} * phi != 0 (degree n >= 1).
  std::vector<Index> witness;
  double residual = 0.0;
  /// phi = 0: degree undefined.
  bool zero_function = false;
};

/// Smallest n <= max_n with is_generalized_monomial(phi, m, n). The search
/// stops early once the chain F_j stops changing without reaching {0}.
DegreeReport degree(const Hypergroup& h, const Func& phi, const Exponential& m, unsigned max_n = 6,
                    double tol = kSpectralTol);

/// phi(o) = 0 and phi has degree exactly 1.
bool is_sine(const Hypergroup& h, const Func& phi, const Exponential& m, double tol = kSpectralTol);

/// dim span{tau_y f : y in X}.
std::size_t variety_dimension(const Hypergroup& h, const Func& f, double rank_tol = kRankTol);

/// Orthonormal basis (columns) of all phi annihilated by every (n+1)-fold
/// product of modified differences.
linalg::Matrix monomial_space(const Hypergroup& h, const Exponential& m, unsigned n, double rank_tol = kRankTol);

/// Orthonormal basis of the m-sine functions: degree <= 1 and phi(o) = 0.
linalg::Matrix sine_space(const Hypergroup& h, const Exponential& m, double rank_tol = kRankTol);

}  // namespace hgw
