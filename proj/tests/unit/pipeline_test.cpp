#include <gtest/gtest.h>

#include <sstream>

#include "brute.hpp"
#include "edgebip/generators.hpp"
#include "edgebip/pipeline.hpp"

using namespace edgebip;

namespace {

MultiGraph complete(int n) {
  MultiGraph g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST(Pipeline, SmallGraphs) {
  MultiGraph k4 = complete(4);
  EXPECT_FALSE(solve_edge_bipartization(k4, 1).has_value());
  auto sol = solve_edge_bipartization(k4, 2);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->edges.size(), 2u);
  EXPECT_TRUE(brute::bipartite_after(k4, sol->edges));
  EXPECT_FALSE(solve_edge_bipartization(k4, -1).has_value());
}

TEST(Pipeline, AllEnginesAgreeWithBrute) {
  Rng rng(61);
  for (int it = 0; it < 150; ++it) {
    MultiGraph g = random_multigraph(rng, 8, 16);
    const int opt = brute::min_bipartization(g);
    for (Engine e : {Engine::Branching, Engine::Guo, Engine::Oracle}) {
      SolveOptions o;
      o.engine = e;
      auto [k, sol] = optimum_bipartization(g, o);
      EXPECT_EQ(k, opt) << engine_name(e);
      EXPECT_TRUE(brute::bipartite_after(g, sol.edges));
    }
  }
}

TEST(Pipeline, ReductionBuildsPendantPairs) {
  MultiGraph g = complete(3);
  std::vector<EdgeId> x{0};
  TermSepReduction red = reduce_to_termsep(g, 1, x);
  const TermSepInstance& inst = red.instance;
  EXPECT_EQ(inst.pairs.size(), 1u);
  EXPECT_EQ(inst.graph.num_vertices(), 5u);
  EXPECT_EQ(inst.graph.num_edges(), 4u);
  EXPECT_EQ(inst.graph.degree(inst.pairs[0].s), 1u);
  EXPECT_NO_THROW(inst.validate());
  std::vector<EdgeId> none;
  EXPECT_THROW(reduce_to_termsep(g, 1, none), InputError);
  std::vector<EdgeId> redundant{0, 1};
  EXPECT_THROW(reduce_to_termsep(g, 1, redundant), InputError);
  EXPECT_EQ(minimize_deletion_set(g, redundant).size(), 1u);
}

TEST(Pipeline, CompressDropsRedundantEdges) {
  // Triangle plus a pendant edge: X' = {pendant, triangle edge} shrinks to one.
  MultiGraph g = complete(3);
  g.add_vertex();
  EdgeId pend = g.add_edge(2, 3);
  std::vector<EdgeId> x{0, pend};
  auto sol = compress(g, 1, x);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->edges, (std::vector<EdgeId>{0}));
}

TEST(Pipeline, CompressionOptimumEqualsBruteOnReducedInstance) {
  Rng rng(62);
  for (int it = 0; it < 100; ++it) {
    TermSepInstance inst = compression_termsep(rng, 8, 16, 3);
    const int want = brute::termsep_optimum(inst);
    EXPECT_EQ(termsep_optimum(inst, Engine::Guo), want);
    EXPECT_EQ(termsep_optimum(inst, Engine::Branching), want);
  }
}

TEST(Pipeline, MonochromaticEdgesLeaveBipartiteRest) {
  Rng rng(63);
  for (int it = 0; it < 100; ++it) {
    MultiGraph g = random_multigraph(rng, 9, 20);
    auto z = monochromatic_edges(g);
    EXPECT_TRUE(brute::bipartite_after(g, z));
  }
}

TEST(Pipeline, RecordFormat) {
  ResultRecord r;
  r.feasible = true;
  r.k = 2;
  r.solution = {0, 4};
  r.nodes = 3;
  std::ostringstream out;
  write_record(out, r, false);
  std::string s = out.str();
  EXPECT_NE(s.find("feasible=true\n"), std::string::npos);
  EXPECT_NE(s.find("solution=1,5\n"), std::string::npos);
  EXPECT_NE(s.find("nodes=3\n"), std::string::npos);
  EXPECT_EQ(s.find("wall_ms"), std::string::npos);
}

TEST(Pipeline, EngineNames) {
  EXPECT_EQ(parse_engine("guo"), Engine::Guo);
  EXPECT_STREQ(engine_name(Engine::Oracle), "oracle");
  EXPECT_THROW(parse_engine("magic"), InputError);
}
