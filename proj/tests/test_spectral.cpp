#include "fixtures.hpp"

#include "hgw/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace hgw;
using namespace hgw::testing;

namespace {

std::vector<Func> values_of(const std::vector<Exponential>& exps) {
  std::vector<Func> out;
  for (const auto& e : exps) out.push_back(e.values);
  return out;
}

}  // namespace

TEST(Exponentials, CyclicCharacters) {
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto exps = find_exponentials(from_abelian_group({n}));
    EXPECT_TRUE(same_function_set(values_of(exps), cyclic_characters(n), 1e-8)) << n;
  }
}

TEST(Exponentials, TwoPointRoots) {
  for (double t : {0.25, 0.5, 1.0}) {
    const auto exps = find_exponentials(two_point(t));
    // m(i)^2 = t + (1 - t) m(i) has roots 1 and -t.
    EXPECT_TRUE(same_function_set(values_of(exps), {Func{1.0, 1.0}, Func{1.0, -t}}, 1e-8)) << t;
  }
}

TEST(Exponentials, S3CharacterTable) {
  const auto exps = find_exponentials(catalog::make("S3_classes"));
  const std::vector<Func> table = {Func{1.0, 1.0, 1.0}, Func{1.0, -1.0, 1.0}, Func{1.0, 0.0, -0.5}};
  EXPECT_TRUE(same_function_set(values_of(exps), table, 1e-8));
}

TEST(Exponentials, SortedWithUnitFirst) {
  for (const auto& h : catalog::all()) {
    const auto exps = find_exponentials(h);
    ASSERT_FALSE(exps.empty());
    EXPECT_LE(sup_distance(exps[0].values, Func::constant(h.order(), 1.0)), 1e-8) << h.name();
    for (const auto& e : exps) {
      EXPECT_LE(e.residual, 1e-8);
      EXPECT_NEAR(std::abs(e(h.identity()) - 1.0), 0.0, 1e-12);
    }
  }
}

TEST(Exponentials, MatchEigenvalueSearchOnCatalog) {
  for (const auto& h : catalog::all()) {
    const auto exps = find_exponentials(h);
    EXPECT_EQ(exps.size(), h.order()) << h.name();
    EXPECT_TRUE(same_function_set(values_of(exps), brute_force_exponentials(h), 1e-7)) << h.name();
  }
}

TEST(Exponentials, JoinHasConstantAndVanishingKinds) {
  const Hypergroup j = catalog::make("D_0.5vZ3");
  const auto exps = find_exponentials(j);
  ASSERT_EQ(exps.size(), 4u);
  int constant_on_c = 0, vanishing_on_d = 0;
  for (const auto& m : exps) {
    if (std::abs(m(1) - 1.0) < 1e-8) ++constant_on_c;
    if (std::abs(m(2)) < 1e-8 && std::abs(m(3)) < 1e-8) ++vanishing_on_d;
  }
  EXPECT_EQ(constant_on_c, 3);
  EXPECT_EQ(vanishing_on_d, 1);
}

TEST(Exponentials, DeterministicForSeed) {
  const Hypergroup h = catalog::make("D_0.25xS3_classes");
  const auto a = find_exponentials(h, kSpectralTol, 3), b = find_exponentials(h, kSpectralTol, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].values, b[i].values);
}

TEST(ModifiedDifference, Examples) {
  const Hypergroup z3 = from_abelian_group({3});
  const Exponential one = unit_exponential(z3);
  EXPECT_EQ(modified_difference(z3, one, 0), Measure::zero(3));
  EXPECT_EQ(modified_difference(z3, one, 1), (Measure{-1.0, 0.0, 1.0}));
  for (const auto& h : catalog::all())
    for (const auto& m : find_exponentials(h))
      for (Index y = 0; y < h.order(); ++y)
        EXPECT_LE(convolve(h, modified_difference(h, m, y), m.values).max_abs(), 1e-9) << h.name();
}

TEST(DifferenceProduct, ExamplesAndPermutations) {
  const Hypergroup z2 = from_abelian_group({2});
  const Exponential one = unit_exponential(z2);
  const std::vector<Index> ys = {1, 1};
  EXPECT_EQ(difference_product(z2, one, ys), (Measure{2.0, -2.0}));
  const std::vector<Index> single = {1};
  EXPECT_EQ(difference_product(z2, one, single), modified_difference(z2, one, 1));
  EXPECT_THROW(difference_product(z2, one, std::vector<Index>{}), ArgumentError);

  const Hypergroup h = catalog::make("D_0.5vZ3");
  for (const auto& m : find_exponentials(h)) {
    std::vector<Index> p = {1, 2, 3};
    const Measure base = difference_product(h, m, p);
    while (std::next_permutation(p.begin(), p.end()))
      EXPECT_LE(sup_distance(base, difference_product(h, m, p)), 1e-10);
  }
}

TEST(Monomial, MultiplesOtherExponentialsAndZero) {
  const Hypergroup h = catalog::make("S3_classes");
  const auto exps = find_exponentials(h);
  const Exponential& m = exps[1];
  for (unsigned n : {0u, 1u, 3u}) {
    EXPECT_TRUE(is_generalized_monomial(h, Complex(3.0, 1.0) * m.values, m, n).holds);
    EXPECT_FALSE(is_generalized_monomial(h, exps[2].values, m, n).holds);
  }
  EXPECT_TRUE(is_generalized_monomial(h, Func::zero(3), m, 0).holds);
}

TEST(Degree, MultiplesAndOthers) {
  const Hypergroup h = two_point(0.5);
  const auto exps = find_exponentials(h);
  const DegreeReport d = degree(h, 3.0 * exps[0].values, exps[0]);
  ASSERT_TRUE(d.degree);
  EXPECT_EQ(*d.degree, 0u);
  EXPECT_FALSE(degree(h, exps[1].values, exps[0]).degree);
  const DegreeReport z = degree(h, Func::zero(2), exps[0]);
  EXPECT_TRUE(z.zero_function);
  EXPECT_FALSE(z.degree);
}

TEST(Degree, UnipotentPolynomials) {
  const Hypergroup u = unipotent(3);
  const Exponential one = unit_exponential(u);
  const Func x{0.0, 1.0, 2.0}, x2{0.0, 1.0, 4.0};
  const DegreeReport d1 = degree(u, x, one), d2 = degree(u, x2, one);
  ASSERT_TRUE(d1.degree && d2.degree);
  EXPECT_EQ(*d1.degree, 1u);
  EXPECT_EQ(*d2.degree, 2u);
  ASSERT_EQ(d2.witness.size(), 2u);
  EXPECT_GT(convolve(u, difference_product(u, one, d2.witness), x2).max_abs(), 1e-6);
  EXPECT_TRUE(is_sine(u, x, one));
  EXPECT_FALSE(is_sine(u, x2, one));
  EXPECT_FALSE(is_sine(u, Func::zero(3), one));
  EXPECT_EQ(sine_space(u, one).cols(), 1);
  EXPECT_EQ(monomial_space(u, one, 2).cols(), 3);
}

TEST(Degree, MatchesBruteForceTuples) {
  std::mt19937_64 rng(17);
  std::vector<Hypergroup> hs = {unipotent(2), unipotent(3), unipotent(4)};
  for (const auto& name : {"Z4", "D_0.5", "S3_classes", "D_0.5vZ2"}) hs.push_back(catalog::make(name));
  for (const auto& h : hs) {
    // Jordan blocks blur the eigenvector of the unipotent tables; use m = 1 directly.
    const std::vector<Exponential> exps =
        h.name()[0] == 'U' ? std::vector<Exponential>{unit_exponential(h)} : find_exponentials(h);
    for (const auto& m : exps) {
      const linalg::Matrix basis = monomial_space(h, m, 3);
      std::vector<Func> cands = {m.values, random_func(rng, h.order())};
      for (Eigen::Index j = 0; j < basis.cols(); ++j) cands.push_back(Func(linalg::Vector(basis.col(j))));
      linalg::Vector mix = basis * linalg::Vector::Ones(basis.cols());
      cands.push_back(Func(mix));
      for (const auto& phi : cands) {
        const DegreeReport d = degree(h, phi, m, 3);
        const int brute = brute_force_degree(h, phi, m, 3, 1e-8 * std::max(1.0, phi.max_abs()));
        EXPECT_EQ(d.degree ? static_cast<int>(*d.degree) : -1, brute) << h.name();
      }
    }
  }
}

TEST(Variety, Examples) {
  const Hypergroup z2 = from_abelian_group({2});
  EXPECT_EQ(variety_dimension(z2, Func{1.0, 0.0}), 2u);
  EXPECT_EQ(variety_dimension(z2, Func::zero(2)), 0u);
  for (const auto& h : catalog::all())
    for (const auto& m : find_exponentials(h)) EXPECT_EQ(variety_dimension(h, m.values), 1u) << h.name();
}

TEST(Variety, UnipotentPolynomialHasFullVariety) {
  const Hypergroup u = unipotent(3);
  EXPECT_EQ(variety_dimension(u, Func{0.0, 1.0, 4.0}), 3u);
}

TEST(Property, FiniteHypergroupMonomialsAreMultiples) {
  // Semisimplicity: the m-monomial space of every degree is span{m}.
  for (const auto& h : catalog::all())
    for (const auto& m : find_exponentials(h)) {
      const linalg::Matrix s = monomial_space(h, m, 3);
      ASSERT_EQ(s.cols(), 1) << h.name();
      EXPECT_EQ(sine_space(h, m).cols(), 0);
    }
}

TEST(Property, SumOfExponentialsHasNoDegree) {
  for (const auto& h : catalog::all()) {
    const auto exps = find_exponentials(h);
    if (exps.size() < 2) continue;
    EXPECT_FALSE(degree(h, exps[0].values + exps[1].values, exps[0]).degree) << h.name();
  }
}
