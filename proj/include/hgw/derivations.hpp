#pragma once

#include "hgw/algebra.hpp"
#include "hgw/moments.hpp"
#include "hgw/spectral.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hgw {

/// Module homomorphism of the measure algebra represented by its multiplier:
/// mu -> phi . mu.
class MultiplierHom {
 public:
  explicit MultiplierHom(Func multiplier) : multiplier_(std::move(multiplier)) {}
  const Func& multiplier() const { return multiplier_; }
  Measure operator()(const Measure& mu) const { return module_action(multiplier_, mu); }

 private:
  Func multiplier_;
};

Measure apply(const MultiplierHom& d, const Measure& mu);

/// x -> <D delta_x, 1>.
Func extract_function(const MultiplierHom& d);

MultiplierHom build_from_function(Func phi);

/// max_{psi, mu in basis} |F(psi . mu) - psi . F(mu)| for a linear map given
/// by its matrix (column x = F delta_x). Zero exactly for diagonal matrices
/// once the psi separate points.
double module_homogeneity_defect(const linalg::Matrix& f, std::span<const Func> psis);

/// Family (D_alpha) of multiplier homomorphisms on a downward closed index set.
struct DerivationFamily {
  std::size_t rank = 1;
  unsigned order = 0;
  std::map<MultiIndex, MultiplierHom, GradedLess> members;

  const MultiplierHom& at(const MultiIndex& alpha) const;
};

DerivationFamily family_from_sequence(const MomentSequence& seq);
MomentSequence sequence_from_family(const DerivationFamily& fam);

/// SCALAR: operator identities paired with the constant 1 on Dirac measures.
/// MEASURE: the identities as equalities of measures.
enum class Strength { Scalar, Measure };

const char* strength_name(Strength s);

struct IdentityFailure {
  std::optional<MultiIndex> alpha;
  Index x = 0;
  Index y = 0;
  std::optional<Index> z;  // MEASURE strength only
  double residual = 0.0;
};

struct IdentityCheck {
  Verdict verdict = Verdict::Pass;
  double residual = 0.0;
  /// First failures found (capped), in scan order.
  std::vector<IdentityFailure> failures;
  std::size_t failure_count = 0;
  std::string diagnostic;
};

/// D_0(mu * nu) = D_0 mu * D_0 nu on Dirac pairs. By bilinearity the Dirac
/// pairs determine the identity on all measures. MEASURE residuals compare
/// m(z) with m(x) m(y) on the support of delta_x * delta_y.
IdentityCheck check_multiplicative(const Hypergroup& h, const MultiplierHom& d0, Strength strength,
                                   double tol = kSpectralTol);

/// D_alpha(mu * nu) = sum_{beta <= alpha} binom(alpha, beta) D_beta mu * D_{alpha-beta} nu
/// on Dirac pairs, evaluated through the operators themselves.
IdentityCheck check_higher_order(const Hypergroup& h, const DerivationFamily& fam, Strength strength,
                                 double tol = kSpectralTol);

struct OrderCheck {
  Verdict verdict = Verdict::Pass;
  double residual = 0.0;
  /// Recursion depth at which the check failed (n = top level).
  std::optional<unsigned> failing_level;
  std::string diagnostic;
};

/// Recursive generalized-derivation order check. The Leibniz defect
///   B(mu, nu) = D(mu * nu) - D_0 mu * D nu - D mu * D_0 nu
/// is evaluated on Dirac pairs; D has order <= n iff every slice
/// mu -> B(mu, delta_y) has order <= n - 1, and order <= 0 means D is a scalar
/// multiple of D_0. SCALAR works on the functional <B(delta_x, delta_y), 1>;
/// MEASURE keeps the full measure-valued defect and recurses on arbitrary
/// linear maps (slices need not be module homomorphisms). Since the order
/// classes are linear spaces the recursion runs on spans.
///
/// MEASURE refuses (PreconditionFailed) when D_0 is not multiplicative at
/// MEASURE strength.
OrderCheck check_generalized_order(const Hypergroup& h, const MultiplierHom& d, const MultiplierHom& d0, unsigned n,
                                   Strength strength, double tol = kSpectralTol);

/// dim range(mu -> phi . mu) = #{x : |phi(x)| > tol}.
std::size_t rank_of_hom(const MultiplierHom& f, double tol = kSpectralTol);

struct MomentRoute {
  MomentSequence sequence;
  MultiIndex alpha;
};

struct EquivalenceReport {
  bool monomial = false;     // phi annihilated by all (n+1)-fold differences
  bool order_at_most = false;  // SCALAR check_generalized_order at n
  bool agree = false;
  std::optional<unsigned> degree;
  bool zero_function = false;
  bool round_trip = false;  // extract_function(build_from_function(phi)) == phi
  std::size_t rank = 0;
  std::size_t variety_dim = 0;
  /// Moment route, when supplied: the sequence verifies, phi is its alpha
  /// entry, and both sides hold at n = |alpha|.
  std::optional<bool> moment_route_agrees;
};

EquivalenceReport equivalence_harness(const Hypergroup& h, const Exponential& m, const Func& phi, unsigned n,
                                      double tol = kSpectralTol,
                                      const std::optional<MomentRoute>& route = std::nullopt);

struct StrengthGapEntry {
  Func exponential;
  IdentityCheck scalar;
  IdentityCheck measure;
  bool gap() const { return (scalar.verdict == Verdict::Pass) != (measure.verdict == Verdict::Pass); }
};

struct StrengthGapReport {
  bool group = false;
  std::vector<StrengthGapEntry> entries;
  std::size_t gaps() const;
  /// On groups SCALAR and MEASURE must agree.
  bool consistent() const { return !group || gaps() == 0; }
};

StrengthGapReport strength_gap_report(const Hypergroup& h, double tol = kSpectralTol, std::uint64_t seed = 0);

}  // namespace hgw
