#include <gtest/gtest.h>

#include "brute.hpp"
#include "edgebip/generators.hpp"
#include "edgebip/oracle.hpp"

using namespace edgebip;

TEST(Oracle, SmallKnownGraphs) {
  MultiGraph c5(5);
  for (VertexId i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  EXPECT_EQ(oracle_min_bipartization(c5).size, brute::min_bipartization(c5));
  MultiGraph k4(4);
  for (VertexId i = 0; i < 4; ++i)
    for (VertexId j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  EXPECT_EQ(oracle_min_bipartization(k4).size, brute::min_bipartization(k4));
}

TEST(Oracle, BothEnumerationsAgreeWithBrute) {
  Rng rng(21);
  for (int it = 0; it < 200; ++it) {
    MultiGraph g = random_multigraph(rng, 7, 12);
    const int want = brute::min_bipartization(g);
    auto a = oracle_min_bipartization_by_bipartitions(g);
    auto b = oracle_min_bipartization_by_subsets(g);
    EXPECT_EQ(a.size, want);
    EXPECT_EQ(b.size, want);
    EXPECT_TRUE(brute::bipartite_after(g, a.edges));
    EXPECT_TRUE(brute::bipartite_after(g, b.edges));
  }
}

TEST(Oracle, GuardsThrow) {
  MultiGraph big(30);
  for (VertexId i = 0; i + 1 < 30; ++i) {
    big.add_edge(i, i + 1);
    big.add_edge(i, i + 1);
  }
  EXPECT_THROW(oracle_min_bipartization(big), InputError);
}

TEST(Oracle, TermSepAgreesWithBrute) {
  Rng rng(22);
  for (int it = 0; it < 200; ++it) {
    TermSepShape shape{6, 9, 2, 2, 0};
    TermSepInstance inst = random_termsep(rng, shape);
    TermSepOptimum opt = oracle_termsep(inst);
    EXPECT_EQ(opt.cost, brute::termsep_optimum(inst));
    EXPECT_TRUE(opt.separation.extends(inst.seed, inst.graph));
    EXPECT_EQ(cost2(inst.graph, opt.separation), 2 * opt.cost);
  }
}

TEST(Oracle, RelaxationAgreesWithBrute) {
  Rng rng(23);
  for (int it = 0; it < 200; ++it) {
    TermSepShape shape{5, 8, 2, 1, 0};
    TermSepInstance inst = random_termsep(rng, shape);
    EXPECT_EQ(oracle_relaxation_cost2(inst.graph, inst.pairs, inst.seed),
              brute::relaxed_optimum2(inst, inst.seed));
  }
}
