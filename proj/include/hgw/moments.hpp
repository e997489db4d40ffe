#pragma once

#include "hgw/hypercore.hpp"
#include "hgw/spectral.hpp"
#include "hgw/vectors.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hgw {

/// Element of N^r.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries)) {}
  MultiIndex(std::initializer_list<unsigned> entries) : entries_(entries) {}

  static MultiIndex zero(std::size_t rank) { return MultiIndex(std::vector<unsigned>(rank, 0)); }

  std::size_t rank() const { return entries_.size(); }
  const std::vector<unsigned>& entries() const { return entries_; }
  unsigned operator[](std::size_t i) const { return entries_[i]; }

  /// |alpha|
  unsigned norm() const;
  bool is_zero() const { return norm() == 0; }
  /// alpha!
  double factorial() const;

  /// Componentwise alpha <= beta. Ranks must agree.
  bool leq(const MultiIndex& other) const;
  /// alpha <= beta and alpha != beta.
  bool less(const MultiIndex& other) const { return leq(other) && *this != other; }

  MultiIndex operator-(const MultiIndex& other) const;

  std::string str() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> entries_;
};

/// binom(alpha, beta) = prod_j binom(alpha_j, beta_j). Requires beta <= alpha.
double binomial(const MultiIndex& alpha, const MultiIndex& beta);

/// Total order: by |alpha|, then lexicographically.
struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All alpha in N^r with |alpha| <= max_norm, in graded order.
std::vector<MultiIndex> graded_indices(std::size_t rank, unsigned max_norm);

/// All beta <= alpha, in graded order.
std::vector<MultiIndex> lower_set(const MultiIndex& alpha);

/// Family (phi_alpha) indexed by a downward closed set of multi-indices;
/// a candidate moment function sequence.
struct MomentSequence {
  std::size_t rank = 1;
  unsigned order = 0;
  std::map<MultiIndex, Func, GradedLess> entries;

  const Func& at(const MultiIndex& alpha) const;
  bool contains(const MultiIndex& alpha) const { return entries.count(alpha) != 0; }
  /// phi_0
  const Func& base() const { return at(MultiIndex::zero(rank)); }
  bool downward_closed() const;

  /// phi_0 = m, everything else zero, for all |alpha| <= order.
  static MomentSequence zero_extension(const Func& m, std::size_t rank, unsigned order);
};

enum class Verdict { Pass, Fail, PreconditionFailed };

const char* verdict_name(Verdict v);

struct SequenceCheck {
  Verdict verdict = Verdict::Pass;
  double residual = 0.0;
  std::optional<MultiIndex> alpha;  // where the worst residual occurs
  Index x = 0;
  Index y = 0;
  std::string diagnostic;
};

/// Checks phi_alpha(x * y) = sum_{beta <= alpha} binom(alpha, beta)
/// phi_beta(x) phi_{alpha - beta}(y) for all alpha, x, y. A phi_0 that is not
/// an exponential (within tol) yields PreconditionFailed.
SequenceCheck verify_moment_sequence(const Hypergroup& h, const MomentSequence& seq, double tol = kSpectralTol);

/// Affine solution set of one linear extension step.
struct SolutionSpace {
  Func particular;
  std::vector<Func> basis;
  /// -1 when the system is inconsistent; particular is then the
  /// least-squares solution and residual its defect.
  int dimension = 0;
  double residual = 0.0;
  /// Base case alpha = 0 only: the equation is the (nonlinear) exponential
  /// law, whose solution set is the finite list of exponentials.
  std::vector<Func> isolated;

  bool consistent() const { return dimension >= 0; }
};

/// The k^2 x k system of equations extending `below` by phi_alpha:
///   phi_alpha(x * y) - m(y) phi_alpha(x) - m(x) phi_alpha(y)
///     = sum_{0 < beta < alpha} binom(alpha, beta) phi_beta(x) phi_{alpha - beta}(y).
/// Returns the coefficient matrix (row x * k + y) and the right-hand side.
std::pair<linalg::Matrix, linalg::Vector> extension_system(const Hypergroup& h, const MomentSequence& below,
                                                           const MultiIndex& alpha);

/// Solves extension_system by SVD with singular values below
/// rank_tol * sigma_max treated as zero. alpha = 0 returns the exponentials in
/// `isolated`. Throws ArgumentError if some beta < alpha is missing.
SolutionSpace solve_moment_extension(const Hypergroup& h, const MomentSequence& below, const MultiIndex& alpha,
                                     double tol = kSpectralTol, std::uint64_t seed = 0,
                                     double rank_tol = kRankTol);

/// Which point of each affine solution set is carried forward.
enum class Materialize {
  MinimumNorm,     // the least-squares particular solution
  FirstDirection,  // particular + first nullspace direction, when one exists
};

struct MomentNode {
  MultiIndex alpha;
  SolutionSpace space;
};

struct MomentEnumeration {
  std::vector<MomentNode> nodes;  // graded order, phi_0 first
  MomentSequence representative;  // one materialized path
  /// False when some node was inconsistent; later nodes are then absent.
  bool complete = true;
};

MomentEnumeration enumerate_moment_sequences(const Hypergroup& h, const Exponential& m, std::size_t rank,
                                             unsigned order, double tol = kSpectralTol,
                                             Materialize policy = Materialize::MinimumNorm);

struct MomexpEntry {
  MultiIndex alpha;
  bool zero_function = false;  // degenerate, not a failure
  std::optional<unsigned> degree;
  std::size_t variety_dim = 0;
  std::size_t variety_bound = 0;  // #{beta <= alpha}
  bool pass = true;
};

struct MomexpReport {
  Verdict verdict = Verdict::Pass;
  std::vector<MomexpEntry> entries;
  std::string diagnostic;
};

/// For every alpha: phi_alpha is zero or an m-monomial of degree <= |alpha|
/// (m = phi_0), and its variety has dimension <= #{beta <= alpha}. Fails
/// when an entry breaks a bound or the moment equation itself fails;
/// PreconditionFailed when phi_0 is not an exponential.
MomexpReport momexp_harness(const Hypergroup& h, const MomentSequence& seq, double tol = kSpectralTol);

}  // namespace hgw
