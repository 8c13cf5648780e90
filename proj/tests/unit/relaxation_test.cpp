#include <gtest/gtest.h>

#include "brute.hpp"
#include "edgebip/generators.hpp"
#include "edgebip/relaxation.hpp"

using namespace edgebip;

namespace {

TermSepInstance single_pair_path() {
  // s - 0 - 1 - t: any separation cuts one edge.
  TermSepInstance inst;
  inst.graph = MultiGraph(4);
  inst.graph.add_edge(2, 0);
  inst.graph.add_edge(0, 1);
  inst.graph.add_edge(1, 3);
  inst.add_pair(2, 3);
  inst.seed = Separation(4);
  inst.k = 1;
  return inst;
}

}  // namespace

TEST(Relaxation, SeparationBasics) {
  Separation s(3);
  s.assign(0, Side::A);
  s.assign(5, Side::B);
  EXPECT_TRUE(s.in(5, Side::B));
  Separation m = s.mirrored();
  EXPECT_TRUE(m.in(0, Side::B));
  EXPECT_TRUE(m.in(5, Side::A));
}

TEST(Relaxation, CostOfPathSeparation) {
  TermSepInstance inst = single_pair_path();
  Separation s(4);
  s.assign(2, Side::A);
  s.assign(0, Side::A);
  s.assign(1, Side::B);
  s.assign(3, Side::B);
  EXPECT_EQ(cost2(inst.graph, s), 2);
  EXPECT_TRUE(is_integral(inst.graph, s));
  EXPECT_TRUE(pair_resolved(s, inst.pairs[0]));
}

TEST(Relaxation, PairDisciplineIsChecked) {
  TermSepInstance inst = single_pair_path();
  inst.seed.assign(2, Side::A);
  EXPECT_THROW(inst.validate(), InputError);
  inst.seed.assign(3, Side::A);
  EXPECT_THROW(inst.validate(), InputError);
  inst.seed.assign(3, Side::B);
  EXPECT_NO_THROW(inst.validate());
}

TEST(Relaxation, TerminalDegreeIsChecked) {
  TermSepInstance inst = single_pair_path();
  inst.graph.add_edge(2, 1);
  EXPECT_THROW(inst.validate(), InputError);
}

TEST(Relaxation, ExtensionCostMatchesBrute) {
  Rng rng(31);
  for (int it = 0; it < 300; ++it) {
    TermSepShape shape{5, 9, 2, 2, 0};
    TermSepInstance inst = random_termsep(rng, shape);
    Separation mce = min_cost_extension(inst, inst.seed);
    const int want = brute::relaxed_optimum2(inst, inst.seed);
    EXPECT_EQ(brute::cost2_of(inst.graph, mce), want);
    EXPECT_EQ(min_extension_cost2(inst.graph, inst.pairs, inst.seed), want);
    EXPECT_TRUE(mce.extends(inst.seed, inst.graph));
  }
}

TEST(Relaxation, NormalizeRespectsBudget) {
  // Leaving the pair unlabelled costs nothing; a resolved pair costs one edge.
  TermSepInstance inst = single_pair_path();
  inst.k = 0;
  EXPECT_TRUE(normalize(inst));
  inst = single_pair_path();
  inst.seed.assign(2, Side::A);
  inst.seed.assign(3, Side::B);
  inst.k = 0;
  EXPECT_FALSE(normalize(inst));
  inst = single_pair_path();
  EXPECT_TRUE(normalize(inst));
  EXPECT_LE(inst.cost2(), 2 * inst.k);
}

TEST(Relaxation, ResolvedPairsLeaveTheUnresolvedList) {
  TermSepInstance inst = single_pair_path();
  EXPECT_EQ(inst.unresolved_count(), 1);
  inst.seed.assign(2, Side::A);
  inst.seed.assign(3, Side::B);
  EXPECT_EQ(inst.unresolved_count(), 0);
  EXPECT_EQ(inst.partner(2), 3u);
  EXPECT_EQ(inst.partner(0), kNoVertex);
}

TEST(Relaxation, NormalizeNeverRaisesCostOrUnresolves) {
  Rng rng(32);
  for (int it = 0; it < 300; ++it) {
    TermSepShape shape{6, 10, 2, 3, 0};
    TermSepInstance inst = random_termsep(rng, shape);
    inst.k = 50;
    const int c0 = inst.cost2();
    std::vector<bool> resolved;
    for (const auto& p : inst.pairs) resolved.push_back(pair_resolved(inst.seed, p));
    ASSERT_TRUE(normalize(inst));
    EXPECT_LE(inst.cost2(), c0);
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
      if (resolved[i]) EXPECT_TRUE(pair_resolved(inst.seed, inst.pairs[i]));
    }
  }
}
