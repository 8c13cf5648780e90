#include <gtest/gtest.h>

#include <cmath>

#include "brute.hpp"
#include "edgebip/branching.hpp"
#include "edgebip/generators.hpp"

using namespace edgebip;

namespace {

// Independent evaluation of a branching vector's characteristic sum.
double sum_of(const BranchingVector& v) {
  double s = 0;
  for (const auto& p : v.parts) {
    double drop = 0.59950 * p.t + 0.29774 * p.nu / 2.0 + 0.10276 * p.k;
    s += std::pow(1.977, -drop);
  }
  return s;
}

}  // namespace

TEST(Branching, VectorSumMatchesDirectFormula) {
  for (int t = 0; t <= 2; ++t)
    for (int n = 0; n <= 5; ++n)
      for (int k = 0; k <= 3; ++k) {
        auto v = BranchingVector::of(1, 1, 0, t, n, k);
        EXPECT_NEAR(vector_sum(v), sum_of(v), 1e-12);
      }
}

TEST(Branching, GoodnessThreshold) {
  EXPECT_TRUE(is_good_vector(BranchingVector::of(1, 3, 0, 1, 3, 0)));
  EXPECT_FALSE(is_good_vector(BranchingVector::of(1, 1, 0, 1, 1, 0)));
  EXPECT_FALSE(is_good_vector(BranchingVector::of(0, 1, 0, 0, 1, 0)));
  EXPECT_EQ(BranchingVector::of(1, 2, 0, 1, 3, 1).str(), "[1,2,0;1,3,1]");
}

TEST(Branching, PotentialOfFreshInstance) {
  TermSepInstance inst;
  inst.graph = MultiGraph(4);
  inst.graph.add_edge(2, 0);
  inst.graph.add_edge(0, 1);
  inst.graph.add_edge(1, 3);
  inst.add_pair(2, 3);
  inst.seed = Separation(4);
  inst.k = 2;
  ASSERT_TRUE(normalize(inst));
  Potential p = potential(inst);
  EXPECT_EQ(p.k, 2);
  EXPECT_EQ(p.nu2, 2 * 2 - inst.cost2());
  EXPECT_EQ(p.t, inst.unresolved_count());
  EXPECT_NEAR(p.mu(), kAlphaT * p.t + kAlphaNu * p.nu2 / 2.0 + kAlphaK * p.k, 1e-12);
}

TEST(Branching, EngineMatchesBruteOptimum) {
  Rng rng(51);
  EngineStats total;
  for (int it = 0; it < 300; ++it) {
    TermSepShape shape{static_cast<int>(4 + rng() % 5), 0, static_cast<int>(1 + rng() % 3), 1, 0};
    shape.m = shape.n + static_cast<int>(rng() % (shape.n + 3));
    TermSepInstance inst = random_termsep(rng, shape);
    const int opt = brute::termsep_optimum(inst);
    BranchingEngine engine;
    inst.k = opt;
    auto sol = engine.solve(inst);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(brute::cost2_of(inst.graph, *sol), 2 * opt);
    EXPECT_TRUE(sol->extends(inst.seed, inst.graph));
    if (opt > 0) {
      inst.k = opt - 1;
      EXPECT_FALSE(engine.solve(inst).has_value());
    }
    total.add(engine.stats());
  }
  EXPECT_EQ(total.assertion_failures(), 0);
}

TEST(Branching, TraceReportsEveryBranch) {
  Rng rng(52);
  long traced_branches = 0;
  EngineOptions opts;
  opts.trace = [&](const TraceRecord& r) {
    if (!r.realized.empty()) {
      ++traced_branches;
      EXPECT_EQ(r.mu_after.size(), 2u);
    }
  };
  BranchingEngine engine(opts);
  for (int it = 0; it < 50; ++it) {
    TermSepInstance inst = compression_termsep(rng, 10, 22, 4);
    inst.k = 4;
    engine.solve(inst);
  }
  EXPECT_EQ(traced_branches, engine.stats().branches);
}

TEST(Branching, NodeLimitAborts) {
  Rng rng(53);
  EngineOptions opts;
  opts.node_limit = 1;
  BranchingEngine engine(opts);
  bool threw = false;
  for (int it = 0; it < 50 && !threw; ++it) {
    TermSepInstance inst = compression_termsep(rng, 12, 30, 6);
    inst.k = 6;
    try {
      engine.solve(inst);
    } catch (const StateError&) {
      threw = true;
    }
    engine.reset_stats();
  }
  EXPECT_TRUE(threw);
}
