#include <gtest/gtest.h>

#include <algorithm>
#include <bit>

#include "helpers.hpp"
#include "oracle.hpp"
#include "persilat/error.hpp"
#include "persilat/io.hpp"
#include "persilat/lattice.hpp"

using namespace persilat;
namespace o = persilat::oracle;

namespace {

FreeLattice lattice_of(const Diagram& d) { return FreeLattice(NodePoset::from_diagram(d)); }

FreeLattice antichain(std::size_t n) {
  std::vector<std::string> ids;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(std::string(1, static_cast<char>('a' + i)));
    leq[i][i] = true;
  }
  return FreeLattice(NodePoset(ids, leq));
}

FreeLattice grid_lattice() {
  return lattice_of(load_diagram(std::string(PERSILAT_DATA_DIR) + "/grid4x4.json").diagram);
}

}  // namespace

TEST(Leq, Examples) {
  const FreeLattice chain = lattice_of(test::identity_chain(3));
  EXPECT_TRUE(chain.leq(chain.generator("X0"), chain.generator("X2")));
  EXPECT_FALSE(chain.leq(chain.generator("X2"), chain.generator("X0")));

  const FreeLattice g = grid_lattice();
  const LatticeTerm a = g.generator("X02"), b = g.generator("X11");
  EXPECT_TRUE(g.leq(g.meet(a, b), a));
  EXPECT_TRUE(g.leq(a, g.join(a, b)));
  EXPECT_TRUE(g.leq(b, g.join(a, b)));
}

TEST(MeetJoin, ChainUsesMinAndMax) {
  const FreeLattice l = lattice_of(test::identity_chain(3));
  EXPECT_EQ(l.meet(l.generator("X0"), l.generator("X2")), l.generator("X0"));
  EXPECT_EQ(l.join(l.generator("X0"), l.generator("X2")), l.generator("X2"));
}

TEST(MeetJoin, GridMeetStaysFormal) {
  const FreeLattice g = grid_lattice();
  const LatticeTerm m = g.meet(g.generator("X02"), g.generator("X11"));
  EXPECT_NE(m, g.generator("X01"));
  EXPECT_EQ(g.to_string(m), "X02 ∧ X11");
  EXPECT_TRUE(g.leq(g.generator("X01"), m));
}

TEST(MeetJoin, EmptyListsGiveBounds) {
  const FreeLattice l = antichain(2);
  EXPECT_TRUE(l.meet(std::vector<LatticeTerm>{}).is_top());
  EXPECT_TRUE(l.join(std::vector<LatticeTerm>{}).is_bottom());
}

TEST(MeetJoin, NaryEqualsIterated) {
  const FreeLattice l = antichain(4);
  std::vector<LatticeTerm> gens;
  for (std::size_t i = 0; i < 4; ++i) gens.push_back(l.generator(i));
  EXPECT_EQ(l.meet(gens), l.meet(l.meet(l.meet(gens[0], gens[1]), gens[2]), gens[3]));
  EXPECT_EQ(l.join(gens), l.join(gens[0], l.join(gens[1], l.join(gens[2], gens[3]))));
}

TEST(Implies, Examples) {
  const FreeLattice l = lattice_of(test::identity_chain(3));
  const LatticeTerm x0 = l.generator("X0"), x2 = l.generator("X2");
  EXPECT_EQ(l.implies(x2, x0), x0);
  EXPECT_TRUE(l.implies(x0, x2).is_top());
  const FreeLattice a = antichain(3);
  const LatticeTerm t = a.join(a.generator(0), a.meet(a.generator(1), a.generator(2)));
  EXPECT_TRUE(a.implies(t, t).is_top());
}

TEST(Implies, TooManyGenerators) {
  const FreeLattice l = antichain(FreeLattice::max_implication_nodes + 1);
  EXPECT_THROW(l.implies(l.generator(0), l.generator(1)), BudgetExceeded);
}

TEST(Complement, Examples) {
  const FreeLattice chain = lattice_of(test::identity_chain(3));
  const auto all = chain.enumerate_elements().elements;
  EXPECT_EQ(chain.complement(chain.top(), all), chain.bottom());
  EXPECT_FALSE(chain.complement(chain.generator("X1"), all).has_value());

  const FreeLattice two = antichain(2);
  const auto inner = two.enumerate_elements(FreeLattice::default_budget, false).elements;
  ASSERT_EQ(inner.size(), 4u);
  EXPECT_EQ(two.complement(two.generator(0), inner), two.generator(1));
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(lattice_of(test::identity_chain(3)).enumerate_elements().elements.size(), 5u);
  const auto two = antichain(2).enumerate_elements().elements;
  EXPECT_EQ(two.size(), 6u);
  EXPECT_TRUE(std::is_sorted(two.begin(), two.end()));
  EXPECT_TRUE(two.front().is_bottom());
  EXPECT_TRUE(two.back().is_top());
}

TEST(Enumerate, BudgetTruncates) {
  const Enumeration e = antichain(4).enumerate_elements(10);
  EXPECT_TRUE(e.truncated);
  EXPECT_EQ(e.elements.size(), 10u);
}

TEST(Enumerate, MatchesClosureOracle) {
  o::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const FreeLattice l(o::random_poset(rng, 1 + trial % 4));
    std::set<std::vector<MeetTerm>> listed;
    for (const auto& t : l.enumerate_elements().elements) listed.insert(t.clauses());
    EXPECT_EQ(listed, o::closure_elements(l));
  }
}

TEST(Enumerate, AntichainCountsAreDedekindNumbers) {
  // Free distributive lattice on n generators plus the two bounds.
  const std::size_t expected[] = {2, 3, 6, 20, 168, 7581};
  for (std::size_t n = 0; n <= 5; ++n) {
    const auto e = antichain(n).enumerate_elements();
    EXPECT_FALSE(e.truncated);
    EXPECT_EQ(e.elements.size(), n == 0 ? 0u : expected[n]) << "n = " << n;
  }
}

TEST(Enumerate, SquaredPowerBoundFailsForFiveGenerators) {
  const std::size_t count = antichain(5).enumerate_elements().elements.size();
  EXPECT_GT(count, std::size_t{1} << 10);
}

TEST(Hasse, Examples) {
  const FreeLattice chain = lattice_of(test::identity_chain(3));
  std::vector<LatticeTerm> gens{chain.generator(0), chain.generator(1), chain.generator(2)};
  EXPECT_EQ(chain.hasse_edges(gens).size(), 2u);
  EXPECT_EQ(chain.hasse_edges(chain.enumerate_elements().elements).size(), 4u);

  const FreeLattice g = grid_lattice();
  std::vector<LatticeTerm> cells;
  for (std::size_t i = 0; i < g.poset().size(); ++i) cells.push_back(g.generator(i));
  const auto edges = g.hasse_edges(cells);
  std::vector<std::string> above;
  for (const auto& [lo, hi] : edges)
    if (lo == g.generator("X00")) above.push_back(g.to_string(hi));
  std::sort(above.begin(), above.end());
  EXPECT_EQ(above, (std::vector<std::string>{"X01", "X10"}));
  EXPECT_EQ(edges.size(), 24u);

  const FreeLattice single = antichain(1);
  EXPECT_TRUE(single.hasse_edges({single.generator(0)}).empty());
}

TEST(Hasse, CoversOnly) {
  const FreeLattice l = antichain(3);
  const auto all = l.enumerate_elements().elements;
  for (const auto& [lo, hi] : l.hasse_edges(all)) {
    EXPECT_TRUE(l.leq(lo, hi));
    EXPECT_NE(lo, hi);
    for (const auto& c : all)
      EXPECT_FALSE(c != lo && c != hi && l.leq(lo, c) && l.leq(c, hi));
  }
}

TEST(Terms, ParseAndPrint) {
  const FreeLattice l = antichain(3);
  const LatticeTerm t = l.parse("(a & b) | c");
  EXPECT_EQ(l.to_string(t), "(a ∧ b) ∨ c");
  EXPECT_EQ(l.parse(l.to_string(t)), t);
  EXPECT_EQ(l.parse("a & b | c"), t);
  EXPECT_TRUE(l.parse("top").is_top());
  EXPECT_TRUE(l.parse("⊥").is_bottom());
  EXPECT_THROW(l.parse("a & "), Error);
  EXPECT_THROW(l.parse("zz"), Error);
}

TEST(LatticeProperty, AxiomsOnRandomTerms) {
  o::Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const FreeLattice l(o::random_poset(rng, 2 + trial % 6));
    for (int k = 0; k < 100; ++k) {
      const auto x = o::random_term(rng, l), y = o::random_term(rng, l), z = o::random_term(rng, l);
      EXPECT_EQ(l.meet(x, l.meet(y, z)), l.meet(l.meet(x, y), z));
      EXPECT_EQ(l.join(x, l.join(y, z)), l.join(l.join(x, y), z));
      EXPECT_EQ(l.meet(x, x), x);
      EXPECT_EQ(l.join(x, x), x);
      EXPECT_EQ(l.meet(x, y), l.meet(y, x));
      EXPECT_EQ(l.join(x, y), l.join(y, x));
      EXPECT_EQ(l.meet(x, l.join(x, y)), x);
      EXPECT_EQ(l.join(x, l.meet(x, y)), x);
      EXPECT_EQ(l.meet(x, l.join(y, z)), l.join(l.meet(x, y), l.meet(x, z)));
      EXPECT_EQ(l.join(x, l.meet(y, z)), l.meet(l.join(x, y), l.join(x, z)));
      const bool le = l.leq(x, y);
      EXPECT_EQ(le, l.meet(x, y) == x);
      EXPECT_EQ(le, l.join(x, y) == y);
      EXPECT_EQ(l.parse(l.to_string(x)), x);
    }
  }
}

TEST(LatticeProperty, HeytingAdjunctionExhaustive) {
  o::Rng rng(33);
  for (int trial = 0; trial < 12; ++trial) {
    const FreeLattice l(o::random_poset(rng, 1 + trial % 3));
    const auto all = l.enumerate_elements().elements;
    for (const auto& a : all)
      for (const auto& b : all) {
        const LatticeTerm imp = l.implies(a, b);
        for (const auto& x : all) EXPECT_EQ(l.leq(x, imp), l.leq(l.meet(x, a), b));
      }
  }
}

TEST(LatticeProperty, CommonUpperBoundIsAboveJoin) {
  const FreeLattice l = lattice_of(test::vshape());
  EXPECT_TRUE(l.leq(l.join(l.generator("A"), l.generator("B")), l.generator("C")));
}

TEST(LatticeProperty, OrderedPairsDoNotGiveJoinBelowMeet) {
  // A <= B and C <= D with A = B and C = D incomparable: A v C is not below A ^ C.
  const FreeLattice l = antichain(2);
  const LatticeTerm a = l.generator(0), c = l.generator(1);
  EXPECT_FALSE(l.leq(l.join(a, c), l.meet(a, c)));
  // Same pair read as (A ^ C) v (B ^ D) vs (A v C) ^ (B v D) with A = C, B = D.
  EXPECT_FALSE(l.leq(l.join(l.meet(a, a), l.meet(c, c)), l.meet(l.join(a, a), l.join(c, c))));
  // The monotone forms and the mixed bound do hold.
  o::Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    const FreeLattice p(o::random_poset(rng, 5, 0.4));
    const std::size_t n = p.poset().size();
    const std::size_t i = rng() % n, j = rng() % n, k = rng() % n, m = rng() % n;
    const auto A = p.generator(i), B = p.generator(j), C = p.generator(k), D = p.generator(m);
    EXPECT_TRUE(p.leq(p.join(p.meet(A, C), p.meet(B, D)), p.meet(p.join(A, B), p.join(C, D))));
    if (p.poset().leq(i, j) && p.poset().leq(k, m)) {
      EXPECT_TRUE(p.leq(p.join(A, C), p.join(B, D)));
      EXPECT_TRUE(p.leq(p.meet(A, C), p.meet(B, D)));
    }
  }
}

TEST(LatticeProperty, IntervalIsomorphism) {
  o::Rng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const FreeLattice l(o::random_poset(rng, 3));
    const auto all = l.enumerate_elements().elements;
    for (const auto& a : all)
      for (const auto& b : all) {
        const LatticeTerm lo = l.meet(a, b), hi = l.join(a, b);
        for (const auto& x : all) {
          if (l.leq(lo, x) && l.leq(x, b)) EXPECT_EQ(l.meet(l.join(x, a), b), x);
          if (l.leq(a, x) && l.leq(x, hi)) EXPECT_EQ(l.join(l.meet(x, b), a), x);
        }
      }
  }
}

TEST(LatticeProperty, NormalFormIsIdempotent) {
  o::Rng rng(36);
  const FreeLattice l(o::random_poset(rng, 6));
  for (int k = 0; k < 200; ++k) {
    const LatticeTerm t = o::random_term(rng, l, 4);
    EXPECT_EQ(l.from_clauses(t.clauses()), t);
  }
}
