#pragma once

#include "hgw/vectors.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hgw {

inline constexpr double kAxiomTol = 1e-9;
inline constexpr double kSpectralTol = 1e-8;
inline constexpr double kRankTol = 1e-9;

/// A finite commutative hypergroup given by structure constants: the product
/// of x and y is the probability vector c(x, y, .) over the carrier.
///
/// Construction only checks that the data is well-formed (sizes, index
/// ranges). Whether the table satisfies the hypergroup axioms is the job of
/// validate(); invalid tables are representable so they can be diagnosed.
/// Values are immutable once built.
class Hypergroup {
 public:
  /// table holds c(x, y, z) at position (x * k + y) * k + z.
  Hypergroup(std::string name, std::vector<std::string> elements, Index identity,
             std::vector<Index> involution, std::vector<double> table);

  std::size_t order() const { return elements_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& elements() const { return elements_; }
  Index identity() const { return identity_; }
  Index inverse(Index x) const { return involution_[x]; }
  const std::vector<Index>& involution() const { return involution_; }
  const std::vector<double>& table() const { return table_; }

  double weight(Index x, Index y, Index z) const { return table_[(x * order() + y) * order() + z]; }

  /// The row c(x, y, .), i.e. the weights of the measure delta_x * delta_y.
  std::span<const double> product(Index x, Index y) const {
    return {table_.data() + (x * order() + y) * order(), order()};
  }

  /// For hypergroups built by join(): indices of the compact part C, which
  /// always come first. Empty otherwise.
  const std::vector<Index>& compact_part() const { return compact_part_; }

  Hypergroup with_name(std::string name) const;
  Hypergroup with_weight(Index x, Index y, Index z, double w) const;
  Hypergroup with_compact_part(std::vector<Index> part) const;

  /// True when every product is a point mass (the hypergroup is a group).
  bool is_group(double tol = kAxiomTol) const;

  std::optional<Index> find(const std::string& label) const;

 private:
  std::string name_;
  std::vector<std::string> elements_;
  Index identity_;
  std::vector<Index> involution_;
  std::vector<double> table_;
  std::vector<Index> compact_part_;
};

enum class Axiom { Probability, Commutativity, Identity, Associativity, Involution, Antihomomorphism };

inline constexpr std::array<Axiom, 6> kAllAxioms = {Axiom::Probability,   Axiom::Commutativity,
                                                    Axiom::Identity,      Axiom::Associativity,
                                                    Axiom::Involution,    Axiom::Antihomomorphism};

const char* axiom_name(Axiom a);

struct AxiomCheck {
  Axiom axiom{};
  bool pass = true;
  double residual = 0.0;
  /// Index tuple attaining the worst residual; empty when residual is 0.
  std::vector<Index> witness;
};

struct AxiomReport {
  std::array<AxiomCheck, 6> checks;
  double tolerance = kAxiomTol;

  bool all_pass() const;
  const AxiomCheck& operator[](Axiom a) const { return checks[static_cast<std::size_t>(a)]; }
};

/// Runs the six axiom families (probability rows, commutativity, identity,
/// associativity, involution, involution antihomomorphism). Residuals are max
/// absolute deviations; a check passes iff its residual is <= tol.
AxiomReport validate(const Hypergroup& h, double tol = kAxiomTol);

/// Orthonormal basis of { lambda : lambda * delta_y = lambda for all y }.
linalg::Matrix invariant_measures(const Hypergroup& h, double rank_tol = kRankTol);

/// The normalized Haar measure. Throws InfeasibleError when the invariant
/// space is not one-dimensional or holds no nonnegative normalized vector.
Measure haar_measure(const Hypergroup& h, double tol = kAxiomTol);

// Catalog constructions.

/// Product of cyclic groups Z_{n1} x ... x Z_{nr}; mixed-radix element order,
/// last factor fastest.
Hypergroup from_abelian_group(const std::vector<std::size_t>& orders);

/// D(theta) = {0, i} with delta_i * delta_i = theta delta_0 + (1 - theta) delta_i.
Hypergroup two_point(double theta);

/// Hypergroup of conjugacy classes of a finite group. group_table[a][b] is the
/// index of ab. Each product of classes is the push-forward of the uniform
/// product measure on C x D.
Hypergroup conjugacy_class_hypergroup(const std::vector<std::vector<Index>>& group_table);

/// Multiplication table of the symmetric group S_n on permutations listed in
/// lexicographic order; (p q)(i) = p(q(i)).
std::vector<std::vector<Index>> symmetric_group_table(std::size_t n);

/// Join C v D on C followed by D \ {o_D}. Mass that D puts on its identity is
/// spread over C by C's Haar measure.
Hypergroup join(const Hypergroup& compact, const Hypergroup& discrete, double tol = kAxiomTol);

Hypergroup direct_product(const Hypergroup& a, const Hypergroup& b);

}  // namespace hgw
