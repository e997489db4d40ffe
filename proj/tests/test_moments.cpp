#include "fixtures.hpp"

#include "hgw/errors.hpp"
#include "hgw/moments.hpp"

#include <gtest/gtest.h>

using namespace hgw;
using namespace hgw::testing;

TEST(MultiIndex, Arithmetic) {
  const MultiIndex a{2, 1}, b{1, 1};
  EXPECT_EQ(a.norm(), 3u);
  EXPECT_DOUBLE_EQ(a.factorial(), 2.0);
  EXPECT_TRUE(b.leq(a));
  EXPECT_TRUE(b.less(a));
  EXPECT_FALSE(a.less(a));
  EXPECT_EQ(a - b, (MultiIndex{1, 0}));
  EXPECT_EQ(a.str(), "(2,1)");
  EXPECT_DOUBLE_EQ(binomial(MultiIndex{4, 2}, MultiIndex{2, 1}), 12.0);
  EXPECT_EQ(lower_set(a).size(), 6u);
}

TEST(MultiIndex, GradedIndicesCount) {
  // #{alpha in N^r : |alpha| <= N} = C(N + r, r).
  EXPECT_EQ(graded_indices(1, 3).size(), 4u);
  EXPECT_EQ(graded_indices(2, 3).size(), 10u);
  EXPECT_EQ(graded_indices(3, 2).size(), 10u);
  const auto idx = graded_indices(2, 2);
  for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_LE(idx[i - 1].norm(), idx[i].norm());
  EXPECT_TRUE(idx.front().is_zero());
}

TEST(Verify, ZeroExtensionPasses) {
  for (const auto& h : catalog::all())
    for (const auto& m : find_exponentials(h))
      for (std::size_t r : {1u, 2u}) {
        const SequenceCheck c = verify_moment_sequence(h, MomentSequence::zero_extension(m.values, r, 2));
        EXPECT_EQ(c.verdict, Verdict::Pass) << h.name();
        EXPECT_LE(c.residual, 1e-12);
      }
}

TEST(Verify, MultipleOfExponentialAtDegreeOneFails) {
  const Hypergroup h = catalog::make("S3_classes");
  const Exponential m = find_exponentials(h)[1];
  MomentSequence seq = MomentSequence::zero_extension(m.values, 1, 1);
  seq.entries.at(MultiIndex{1}) = 0.7 * m.values;
  const SequenceCheck c = verify_moment_sequence(h, seq);
  EXPECT_EQ(c.verdict, Verdict::Fail);
  ASSERT_TRUE(c.alpha);
  EXPECT_EQ(*c.alpha, MultiIndex{1});
}

TEST(Verify, NonExponentialBaseIsAPreconditionFailure) {
  const Hypergroup h = two_point(0.5);
  const MomentSequence seq = MomentSequence::zero_extension(Func{1.0, 0.3}, 1, 1);
  EXPECT_EQ(verify_moment_sequence(h, seq).verdict, Verdict::PreconditionFailed);
}

TEST(Verify, UnipotentMomentSequence) {
  // On the unipotent table phi_0 = 1, phi_1 = x, phi_2 = x^2 satisfy the
  // binomial recursion: (x + y)^2 = x^2 + 2xy + y^2.
  const Hypergroup u = unipotent(3);
  MomentSequence seq = MomentSequence::zero_extension(Func::constant(3, 1.0), 1, 2);
  seq.entries.at(MultiIndex{1}) = Func{0.0, 1.0, 2.0};
  seq.entries.at(MultiIndex{2}) = Func{0.0, 1.0, 4.0};
  EXPECT_EQ(verify_moment_sequence(u, seq).verdict, Verdict::Pass);
  seq.entries.at(MultiIndex{2}) = Func{0.0, 1.0, 4.001};
  EXPECT_EQ(verify_moment_sequence(u, seq).verdict, Verdict::Fail);
}

TEST(Verify, PerturbationResidualIsLinear) {
  const Hypergroup z3 = catalog::make("Z3");
  MomentSequence seq = MomentSequence::zero_extension(Func::constant(3, 1.0), 1, 1);
  seq.entries.at(MultiIndex{1})[0] += 1e-3;
  const SequenceCheck bad = verify_moment_sequence(z3, seq);
  EXPECT_EQ(bad.verdict, Verdict::Fail);
  EXPECT_NEAR(bad.residual, 1e-3, 1e-12);
}

TEST(Extension, CyclicAndTwoPointDegreeOneIsZero) {
  for (const auto& name : {"Z3", "Z5", "D_0.25", "D_0.5"}) {
    const Hypergroup h = catalog::make(name);
    for (const auto& m : find_exponentials(h)) {
      const MomentSequence below = MomentSequence::zero_extension(m.values, 1, 0);
      const SolutionSpace s = solve_moment_extension(h, below, MultiIndex{1});
      EXPECT_EQ(s.dimension, 0) << name;
      EXPECT_LE(s.particular.max_abs(), 1e-12);
    }
  }
}

TEST(Extension, BaseCaseListsExponentials) {
  for (const auto& h : catalog::all()) {
    MomentSequence empty;
    empty.rank = 1;
    const SolutionSpace s = solve_moment_extension(h, empty, MultiIndex{0});
    std::vector<Func> want;
    for (const auto& m : find_exponentials(h)) want.push_back(m.values);
    EXPECT_TRUE(same_function_set(s.isolated, want, 1e-8)) << h.name();
  }
}

TEST(Extension, MissingLowerEntryThrows) {
  const Hypergroup h = two_point(0.5);
  const MomentSequence below = MomentSequence::zero_extension(Func{1.0, 1.0}, 1, 0);
  EXPECT_THROW(solve_moment_extension(h, below, MultiIndex{2}), ArgumentError);
}

TEST(Extension, DimensionsMatchLuOracle) {
  std::vector<Hypergroup> hs = catalog::all();
  hs.push_back(unipotent(3));
  for (const auto& h : hs) {
    std::vector<Exponential> exps =
        h.name()[0] == 'U' ? std::vector<Exponential>{unit_exponential(h)} : find_exponentials(h);
    for (const auto& m : exps) {
      const MomentEnumeration en = enumerate_moment_sequences(h, m, 2, 2);
      ASSERT_TRUE(en.complete) << h.name();
      for (const auto& node : en.nodes) {
        if (node.alpha.is_zero()) continue;
        MomentSequence below = en.representative;
        const auto [a, b] = extension_system(h, below, node.alpha);
        EXPECT_EQ(node.space.dimension, lu_nullity(a)) << h.name() << " " << node.alpha.str();
      }
    }
  }
}

TEST(Enumerate, KnownDimensions) {
  const Hypergroup z3 = catalog::make("Z3");
  const MomentEnumeration a = enumerate_moment_sequences(z3, find_exponentials(z3)[0], 1, 2);
  ASSERT_EQ(a.nodes.size(), 3u);
  EXPECT_EQ(a.nodes[1].space.dimension, 0);
  EXPECT_EQ(a.nodes[2].space.dimension, 0);

  const Hypergroup d = catalog::make("D_0.5");
  const auto exps = find_exponentials(d);
  const MomentEnumeration b = enumerate_moment_sequences(d, exps[1], 2, 1);
  ASSERT_EQ(b.nodes.size(), 3u);
  EXPECT_EQ(b.nodes[1].space.dimension, 0);
  EXPECT_EQ(b.nodes[2].space.dimension, 0);

  const MomentEnumeration c = enumerate_moment_sequences(d, exps[0], 1, 0);
  ASSERT_EQ(c.representative.entries.size(), 1u);
  EXPECT_EQ(c.representative.base(), exps[0].values);
}

TEST(Enumerate, UnipotentCarriesNonzeroMoments) {
  const Hypergroup u = unipotent(3);
  const MomentEnumeration en =
      enumerate_moment_sequences(u, unit_exponential(u), 1, 2, kSpectralTol, Materialize::FirstDirection);
  ASSERT_TRUE(en.complete);
  EXPECT_EQ(en.nodes[1].space.dimension, 1);
  EXPECT_GT(en.representative.at(MultiIndex{1}).max_abs(), 0.1);
  EXPECT_EQ(verify_moment_sequence(u, en.representative).verdict, Verdict::Pass);
  const MomexpReport r = momexp_harness(u, en.representative);
  EXPECT_EQ(r.verdict, Verdict::Pass) << r.diagnostic;
}

TEST(Momexp, ZeroExtensionFlagsDegenerateEntries) {
  const Hypergroup h = catalog::make("D_0.5vZ2");
  const Exponential m = find_exponentials(h)[1];
  const MomexpReport r = momexp_harness(h, MomentSequence::zero_extension(m.values, 2, 2));
  EXPECT_EQ(r.verdict, Verdict::Pass);
  for (const auto& e : r.entries) {
    EXPECT_TRUE(e.pass);
    if (e.alpha.is_zero()) {
      ASSERT_TRUE(e.degree);
      EXPECT_EQ(*e.degree, 0u);
    } else {
      EXPECT_TRUE(e.zero_function);
    }
  }
}

TEST(Momexp, InjectedViolationIsNamed) {
  const Hypergroup h = catalog::make("S3_classes");
  const auto exps = find_exponentials(h);
  MomentSequence seq = MomentSequence::zero_extension(exps[0].values, 1, 2);
  seq.entries.at(MultiIndex{2}) = exps[2].values;
  const MomexpReport r = momexp_harness(h, seq);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  bool named = false;
  for (const auto& e : r.entries) named = named || (!e.pass && e.alpha == MultiIndex{2});
  EXPECT_TRUE(named);
}

TEST(Momexp, SolvedSequencesSatisfyBounds) {
  for (const auto& h : catalog::all())
    for (const auto& m : find_exponentials(h)) {
      const MomentEnumeration en = enumerate_moment_sequences(h, m, 2, 2);
      EXPECT_EQ(momexp_harness(h, en.representative).verdict, Verdict::Pass) << h.name();
    }
}
