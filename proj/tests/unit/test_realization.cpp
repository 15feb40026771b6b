#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracle.hpp"
#include "persilat/error.hpp"
#include "persilat/io.hpp"
#include "persilat/realization.hpp"

using namespace persilat;
using persilat::test::build;
namespace o = persilat::oracle;

namespace {

std::vector<NodeIndex> ix(const Diagram& d, std::vector<std::string> ids) { return d.indices(ids); }

// X0 -> X1 with a 2x2 map f.
Diagram pair_with(std::vector<std::vector<std::int64_t>> f, std::uint64_t p = 2) {
  return build(p, {{"X0", 2, {}}, {"X1", 2, {}}}, {{"X0", "X1", f}}, {ShapeKind::filtration, 0, 0});
}

Diagram lambda() {
  return build(2, {{"A", 1, {}}, {"B", 1, {}}, {"D", 1, {}}}, {{"D", "A", {{1}}}, {"D", "B", {{1}}}});
}

// (a ^ b) ^ c: the binary meet of a and b adjoined as a node above both,
// then met with c, embedded back into A (+) B (+) C.
SubspaceBasis iterated_meet_space(const Diagram& d, NodeIndex a, NodeIndex b, NodeIndex c) {
  const RealizedMeet ab = realize_meet(d, {a, b});
  const Diagram with_ab = d.adjoin({"ab", ab.dim(), {}},
                                   {{"ab", d.id(a), ab.legs[0]}, {"ab", d.id(b), ab.legs[1]}});
  const RealizedMeet abc =
      realize_meet(with_ab, {with_ab.index("ab"), with_ab.index(d.id(c))});
  const Matrix embed = Matrix::vstack(d.field(), abc.dim(),
                                      std::vector<Matrix>{ab.legs[0] * abc.legs[0],
                                                          ab.legs[1] * abc.legs[0], abc.legs[1]});
  return image_basis(embed);
}

}  // namespace

TEST(RealizeMeet, ChainPairIsGraphOfMap) {
  const Diagram d = pair_with({{1, 1}, {0, 0}});
  const RealizedMeet m = realize_meet(d, ix(d, {"X0", "X1"}));
  EXPECT_EQ(m.dim(), 2u);
  EXPECT_TRUE(o::check_equalizer_universal(d, m));
}

TEST(RealizeMeet, IdentityVshapeIsDiagonal) {
  const Diagram d = test::vshape();
  const RealizedMeet m = realize_meet(d, ix(d, {"A", "B"}));
  EXPECT_EQ(o::elements_of(m.space), (o::VectorSet{{0, 0}, {1, 1}}));
  EXPECT_TRUE(o::check_equalizer_universal(d, m));
}

TEST(RealizeMeet, ZeroLegForcesOtherCoordinate) {
  const Diagram d = test::vshape(0, 1);
  const RealizedMeet m = realize_meet(d, ix(d, {"A", "B"}));
  EXPECT_EQ(o::elements_of(m.space), (o::VectorSet{{0, 0}, {1, 0}}));
}

TEST(RealizeMeet, NoCommonTargetIsFullSum) {
  const Diagram d = lambda();
  EXPECT_EQ(realize_meet(d, ix(d, {"A", "B"})).dim(), 2u);
}

TEST(RealizeMeet, ProperSubspaceFailsUniversalCheck) {
  const Diagram d = test::vshape();
  RealizedMeet m = realize_meet(d, ix(d, {"A", "B"}));
  m.space = SubspaceBasis::zero(d.field(), 2);
  m.legs = {Matrix(d.field(), 1, 0), Matrix(d.field(), 1, 0)};
  EXPECT_FALSE(o::check_equalizer_universal(d, m));
}

TEST(RealizeMeet, EmptyConstraintsOnlyFullSpacePasses) {
  const Diagram d = lambda();
  const auto nodes = ix(d, {"A", "B"});
  const RealizedMeet full = equalize(d, nodes, {});
  EXPECT_TRUE(o::check_equalizer_universal(d, full));
  RealizedMeet smaller = full;
  smaller.space = SubspaceBasis::span(Matrix::from_rows(d.field(), {{1}, {1}}));
  smaller.legs = {Matrix::from_rows(d.field(), {{1}}), Matrix::from_rows(d.field(), {{1}})};
  EXPECT_FALSE(o::check_equalizer_universal(d, smaller));
}

TEST(RealizeMeet, Errors) {
  const Diagram d = test::vshape();
  EXPECT_THROW(realize_meet(d, {}), Error);
  EXPECT_THROW(d.indices({"A", "nope"}), UnknownNodeError);
}

TEST(RealizeJoin, ChainPairIsCodomain) {
  const Diagram d = pair_with({{1, 0}, {0, 0}});
  const RealizedJoin j = realize_join(d, ix(d, {"X0", "X1"}), false);
  EXPECT_EQ(j.dim(), 2u);
  EXPECT_TRUE(o::check_coequalizer_universal(d, j));
}

TEST(RealizeJoin, VshapeWithMeetRelations) {
  const Diagram d = test::vshape();
  const RealizedJoin j = realize_join(d, ix(d, {"A", "B"}), true);
  EXPECT_EQ(j.dim(), 1u);
  EXPECT_TRUE(o::check_coequalizer_universal(d, j));
}

TEST(RealizeJoin, LambdaQuotient) {
  const Diagram d = lambda();
  const RealizedJoin j = realize_join(d, ix(d, {"A", "B"}), false);
  EXPECT_EQ(j.dim(), 1u);
  EXPECT_EQ(o::elements_of(j.relations), (o::VectorSet{{0, 0}, {1, 1}}));
  EXPECT_TRUE(o::check_coequalizer_universal(d, j));
}

TEST(RealizeJoin, NoSourcesIsIdentity) {
  const Diagram d = test::vshape();
  const RealizedJoin j = realize_join(d, ix(d, {"A", "B"}), false);
  EXPECT_EQ(j.quotient, Matrix::identity(d.field(), 2));
  EXPECT_TRUE(o::check_coequalizer_universal(d, j));
}

TEST(RealizeJoin, TooLargeQuotientFailsUniversalCheck) {
  const Diagram d = lambda();
  RealizedJoin j = realize_join(d, ix(d, {"A", "B"}), false);
  j.relations = SubspaceBasis::full(d.field(), 2);
  j.quotient = Matrix(d.field(), 0, 2);
  j.legs = {Matrix(d.field(), 0, 1), Matrix(d.field(), 0, 1)};
  EXPECT_FALSE(o::check_coequalizer_universal(d, j));
}

TEST(Stabilize, Examples) {
  const Diagram chain = test::identity_chain(3);
  const Stabilized c = stabilize(chain, ix(chain, {"X0", "X2"}));
  EXPECT_EQ(c.iterations, 1);

  const Diagram v = test::vshape();
  const Stabilized s = stabilize(v, ix(v, {"A", "B"}));
  EXPECT_EQ(s.iterations, 1);
  EXPECT_EQ(s.meet.space, realize_meet(v, ix(v, {"A", "B"})).space);
  EXPECT_EQ(s.order, StabilizationOrder::meet_first);

  const Stabilized single = stabilize(v, ix(v, {"A"}));
  EXPECT_EQ(single.meet.dim(), 1u);
  EXPECT_EQ(single.join.dim(), 1u);

  const Diagram l = lambda();
  EXPECT_EQ(stabilize(l, ix(l, {"A", "B"})).order, StabilizationOrder::join_first);
}

TEST(RankInvariant, Examples) {
  const Diagram d = pair_with({{1, 1}, {1, 1}});
  const RankReport r = rank_invariant(d, "X0", "X1");
  EXPECT_EQ(r.rank, 1u);
  EXPECT_TRUE(r.leg_agreement);
  EXPECT_TRUE(r.ses_ok);

  const Diagram id = pair_with({{1, 0}, {0, 1}}, 5);
  EXPECT_EQ(rank_invariant(id, "X0", "X1").rank, 2u);

  const Diagram v = test::vshape(0, 1);
  const RankReport z = rank_invariant(v, "A", "B");
  EXPECT_EQ(z.rank, 0u);
  EXPECT_EQ(z.dim_meet, 1u);
  EXPECT_EQ(z.dim_join, 1u);
}

TEST(SesCheck, Examples) {
  const Diagram chain = test::identity_chain(3);
  EXPECT_TRUE(ses_check(chain, chain.index("X0"), chain.index("X2")));
  EXPECT_TRUE(ses_check(chain, chain.index("X1"), chain.index("X1")));
  const RankReport same = rank_invariant(chain, "X1", "X1");
  EXPECT_EQ(same.dim_meet, 1u);
  EXPECT_EQ(same.dim_join, 1u);
}

TEST(RealizationProperty, SesStabilizationAndUniversality) {
  o::Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t p = trial % 2 ? 5 : 2;
    const Diagram d = o::random_diagram(rng, p, 5, p == 2 ? 3 : 2);
    for (NodeIndex a = 0; a < d.size(); ++a)
      for (NodeIndex b = 0; b < d.size(); ++b) {
        const Stabilized s = stabilize(d, {a, b});
        EXPECT_LE(s.iterations, 2);
        EXPECT_TRUE(ses_check(s));
        const RankReport r = rank_invariant(d, a, b);
        EXPECT_TRUE(r.leg_agreement);
        if (s.meet.layout.total <= 8 || p == 2) {
          EXPECT_TRUE(o::check_equalizer_universal(d, s.meet));
          EXPECT_TRUE(o::check_coequalizer_universal(d, s.join));
        }
      }
  }
}

TEST(RealizationProperty, LowerBoundsLandInMeet) {
  o::Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const Diagram d = o::random_diagram(rng, 3, 6, 2);
    for (NodeIndex a = 0; a < d.size(); ++a)
      for (NodeIndex b = a + 1; b < d.size(); ++b) {
        const RealizedMeet m = realize_meet(d, {a, b});
        for (auto lower : d.common_sources(std::vector<NodeIndex>{a, b})) {
          const Matrix tuple = Matrix::vstack(d.field(), d.dim(lower),
                                              std::vector<Matrix>{d.composite(lower, a), d.composite(lower, b)});
          EXPECT_TRUE(m.space.contains(image_basis(tuple)));
        }
      }
  }
}

TEST(RealizationProperty, IteratedMeetInsideNaryMeet) {
  o::Rng rng(43);
  int equal_cases = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Diagram d = o::random_diagram(rng, 2, 5, 2, 0.5);
    for (NodeIndex a = 0; a < d.size(); ++a)
      for (NodeIndex b = a + 1; b < d.size(); ++b)
        for (NodeIndex c = b + 1; c < d.size(); ++c) {
          const SubspaceBasis nary = realize_meet(d, {a, b, c}).space;
          const SubspaceBasis iterated = iterated_meet_space(d, a, b, c);
          EXPECT_TRUE(nary.contains(iterated));
          const auto t = [&](std::vector<NodeIndex> s) { return d.common_targets(s); };
          const auto all = t({a, b, c});
          if (t({a, b}) == all && t({a, c}) == all && t({b, c}) == all) {
            EXPECT_EQ(iterated, nary);
            ++equal_cases;
          }
        }
  }
  EXPECT_GT(equal_cases, 0);
}

TEST(RealizationProperty, IteratedMeetCanBeStrictlySmaller) {
  // a -> t <- c with b off to the side: the three share no target, but the
  // second binary step still constrains through t.
  const Diagram d = build(2, {{"a", 1, {}}, {"b", 1, {}}, {"c", 1, {}}, {"t", 1, {}}},
                          {{"a", "t", {{1}}}, {"c", "t", {{1}}}});
  const auto s = ix(d, {"a", "b", "c"});
  EXPECT_EQ(realize_meet(d, s).dim(), 3u);
  EXPECT_EQ(iterated_meet_space(d, s[0], s[1], s[2]).dim(), 2u);
}

TEST(LargestInjective, Examples) {
  EXPECT_EQ(largest_injective(test::identity_chain(3)).rank, 1u);
  const Diagram zero = build(2, {{"X0", 1, {}}, {"X1", 1, {}}, {"X2", 1, {}}},
                             {{"X0", "X1", {{0}}}, {"X1", "X2", {{1}}}});
  EXPECT_EQ(largest_injective(zero).rank, 0u);
  const RankReport r = largest_injective(test::diamond());
  EXPECT_EQ(r.rank, 1u);
  ASSERT_TRUE(r.steps.has_value());
  EXPECT_LE(r.steps->total(), r.steps->bound);
}

TEST(LargestInjective, MatchesCompositeRankOnFiltrations) {
  o::Rng rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    const Diagram d = o::random_filtration(rng, trial % 2 ? 3 : 2, 1 + trial % 7, 3);
    const auto r = o::standard_persistence_ranks(d);
    const RankReport li = largest_injective(d);
    EXPECT_EQ(li.rank, r.front().back());
    EXPECT_LE(li.steps->total(), li.steps->bound);
  }
}

TEST(LargestInjective, RandomDiagramsStayWithinStepBound) {
  o::Rng rng(45);
  for (int trial = 0; trial < 40; ++trial) {
    const Diagram d = o::random_diagram(rng, 2, 6, 2, 0.5);
    if (d.size() == 0) continue;
    const RankReport li = largest_injective(d);
    ASSERT_TRUE(li.steps.has_value());
    EXPECT_LE(li.steps->total(), li.steps->bound);
    EXPECT_TRUE(li.leg_agreement);
  }
}

TEST(Grid, CoarseAndFine) {
  const Diagram g = load_diagram(std::string(PERSILAT_DATA_DIR) + "/grid2x2_section.json").diagram;
  const SectionsReport s = sections_report(g, {0, 1}, {1, 0});
  EXPECT_EQ(s.coarse, 0u);
  EXPECT_GE(s.fine, 1u);
  EXPECT_EQ(rank_invariant(g, "X01", "X10").dim_meet, 1u);

  o::Rng rng(46);
  const Diagram r = o::random_grid(rng, 2, 3, 3, 2);
  EXPECT_EQ(sections_report(r, {0, 0}, {2, 2}).coarse, sections_report(r, {0, 0}, {2, 2}).fine);
  EXPECT_THROW(grid_coarse_rank(test::vshape(), {0, 0}, {0, 1}), Error);
  EXPECT_THROW(grid_coarse_rank(r, {0, 0}, {5, 1}), Error);
}

TEST(Grid, IdentityGridRanks) {
  const Diagram g = build(2,
                          {{"X00", 1, {0, 0}}, {"X01", 1, {0, 1}}, {"X10", 1, {1, 0}}, {"X11", 1, {1, 1}}},
                          {{"X00", "X01", {{1}}}, {"X00", "X10", {{1}}}, {"X01", "X11", {{1}}}, {"X10", "X11", {{1}}}},
                          {ShapeKind::grid, 2, 2});
  const SectionsReport s = sections_report(g, {0, 1}, {1, 0});
  EXPECT_EQ(s.coarse, 1u);
  EXPECT_EQ(s.fine, 1u);
  EXPECT_EQ(grid_coarse_rank(g, {0, 0}, {1, 1}), 1u);
}

TEST(ChainRestriction, Examples) {
  const Diagram chain_targets = build(2, {{"A", 1, {}}, {"B", 1, {}}, {"C1", 1, {}}, {"C2", 1, {}}},
                                      {{"A", "C1", {{1}}}, {"B", "C1", {{1}}}, {"C1", "C2", {{1}}}});
  EXPECT_TRUE(chain_restriction_check(chain_targets, ix(chain_targets, {"A", "B"})));
  const Diagram v = test::vshape();
  EXPECT_TRUE(chain_restriction_check(v, ix(v, {"A", "B"})));
}

TEST(ChainRestriction, TopOfTheTargetChainIsNotEnough) {
  // A -> C1 by 1, B -> C1 by 0, C1 -> C2 by 0: constraints through C2 alone
  // are vacuous, the ones through C1 are not.
  const Diagram d = build(2, {{"A", 1, {}}, {"B", 1, {}}, {"C1", 1, {}}, {"C2", 1, {}}},
                          {{"A", "C1", {{1}}}, {"B", "C1", {{0}}}, {"C1", "C2", {{0}}}});
  const auto s = ix(d, {"A", "B"});
  EXPECT_EQ(realize_meet_via(d, s, ix(d, {"C2"})).dim(), 2u);
  EXPECT_EQ(realize_meet(d, s).dim(), 1u);
  EXPECT_EQ(realize_meet_via(d, s, ix(d, {"C1"})).space, realize_meet(d, s).space);
  EXPECT_TRUE(chain_restriction_check(d, s));
}

TEST(ChainRestriction, RandomDiagrams) {
  o::Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const Diagram d = o::random_diagram(rng, 2, 6, 3, 0.5);
    for (NodeIndex a = 0; a < d.size(); ++a)
      for (NodeIndex b = a + 1; b < d.size(); ++b) EXPECT_TRUE(chain_restriction_check(d, {a, b}));
  }
}

TEST(Pullback, Examples) {
  const Field f(2);
  const Matrix id = Matrix::identity(f, 1);
  EXPECT_TRUE(pullback_equivalence_check(id, id));
  EXPECT_EQ(o::elements_of(pullback_kernel(id, id)), (o::VectorSet{{0, 0}, {1, 1}}));
  const Matrix zero(f, 1, 1);
  EXPECT_TRUE(pullback_equivalence_check(zero, id));
  EXPECT_EQ(o::elements_of(pullback_kernel(zero, id)), (o::VectorSet{{0, 0}, {1, 0}}));
  EXPECT_THROW(pullback_kernel(id, Matrix::identity(f, 2)), ShapeError);
}

TEST(Pullback, RandomAgainstEnumeration) {
  o::Rng rng(48);
  const Field f(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t c = rng() % 4, x = rng() % 4, y = rng() % 4;
    const Matrix a = o::random_matrix(rng, f, c, x), b = o::random_matrix(rng, f, c, y);
    EXPECT_TRUE(pullback_equivalence_check(a, b));
    o::VectorSet expected;
    for (const auto& u : o::all_vectors(f, x + y)) {
      const Vector left(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(x));
      const Vector right(u.begin() + static_cast<std::ptrdiff_t>(x), u.end());
      if (apply(a, left) == apply(b, right)) expected.insert(u);
    }
    EXPECT_EQ(o::elements_of(pullback_kernel(a, b)), expected);
  }
}
