#include <gtest/gtest.h>

#include "brute.hpp"
#include "edgebip/generators.hpp"
#include "edgebip/oracle.hpp"
#include "edgebip/reductions.hpp"

using namespace edgebip;

namespace {

class RuleTest : public ::testing::TestWithParam<Rule> {};

}  // namespace

TEST_P(RuleTest, PreservesOptimumAndLifts) {
  Rng rng(1000 + static_cast<int>(GetParam()));
  int fired = 0;
  for (int it = 0; it < 40; ++it) {
    TermSepInstance inst;
    if (!instance_for_rule(rng, GetParam(), inst)) continue;
    ++fired;
    const int before = brute::termsep_optimum(inst);
    TermSepInstance after = inst;
    LiftLog log;
    ReductionOutcome out = apply_rule(GetParam(), after, log);
    ASSERT_NE(out.kind, ReductionOutcome::Kind::NotApplicable);
    if (out.kind == ReductionOutcome::Kind::NoSolution) {
      EXPECT_GT(before, inst.k);
      continue;
    }
    if (out.kind == ReductionOutcome::Kind::Solved) {
      EXPECT_LE(before, inst.k);
      continue;
    }
    const int reduced = brute::termsep_optimum(after);
    EXPECT_EQ(before, reduced + out.dk);
    if (reduced == brute::kNone) continue;
    Separation lifted = log.lift(oracle_termsep(after).separation);
    EXPECT_TRUE(is_integral(inst.graph, lifted));
    EXPECT_TRUE(lifted.extends(inst.seed, inst.graph));
    EXPECT_EQ(brute::cost2_of(inst.graph, lifted), 2 * before);
  }
  EXPECT_GT(fired, 0);
}

INSTANTIATE_TEST_SUITE_P(AllRules, RuleTest, ::testing::ValuesIn(kAllRules),
                         [](const auto& info) { return std::string(rule_name(info.param)); });

TEST(Reductions, TerminatorOutcomes) {
  TermSepInstance inst;
  inst.graph = MultiGraph(3);
  inst.graph.add_edge(0, 2);
  inst.graph.add_edge(2, 1);
  inst.add_pair(0, 1);
  inst.seed = Separation(3);
  inst.seed.assign(0, Side::A);
  inst.seed.assign(2, Side::A);
  inst.seed.assign(1, Side::B);
  inst.k = 1;
  EXPECT_EQ(terminator(inst).kind, ReductionOutcome::Kind::Solved);
  inst.k = 0;
  EXPECT_EQ(terminator(inst).kind, ReductionOutcome::Kind::NoSolution);
}

TEST(Reductions, MergeRefusesBothSides) {
  TermSepInstance inst;
  inst.graph = MultiGraph(3);
  inst.graph.add_edge(0, 1);
  inst.graph.add_edge(1, 2);
  inst.seed = Separation(3);
  inst.seed.assign(0, Side::A);
  inst.seed.assign(2, Side::B);
  LiftLog log;
  std::vector<VertexId> both{0, 2};
  EXPECT_EQ(merge_vertices(inst, both, log), kNoVertex);
  std::vector<VertexId> ok{0, 1};
  VertexId m = merge_vertices(inst, ok, log);
  ASSERT_NE(m, kNoVertex);
  EXPECT_TRUE(inst.seed.in(m, Side::A));
}

TEST(Reductions, ExhaustiveReductionLiftsToOptimum) {
  Rng rng(77);
  int solved = 0;
  for (int it = 0; it < 300; ++it) {
    TermSepShape shape{6, 10, 2, 1, 0};
    TermSepInstance inst = random_termsep(rng, shape);
    const int opt = brute::termsep_optimum(inst);
    inst.k = opt + static_cast<int>(rng() % 2);
    TermSepInstance red = inst;
    LiftLog log;
    RuleCounts counts{};
    ReductionContext ctx{&log, &counts, {}};
    ReductionOutcome out = reduce_exhaustively(red, ctx);
    if (out.kind == ReductionOutcome::Kind::NoSolution) {
      ADD_FAILURE() << "opt " << opt << " within budget " << inst.k;
      continue;
    }
    Separation sol = out.kind == ReductionOutcome::Kind::Solved ? red.seed
                                                                : oracle_termsep(red).separation;
    Separation lifted = log.lift(sol);
    EXPECT_TRUE(is_integral(inst.graph, lifted));
    EXPECT_TRUE(lifted.extends(inst.seed, inst.graph));
    EXPECT_LE(brute::cost2_of(inst.graph, lifted), 2 * inst.k);
    ++solved;
  }
  EXPECT_EQ(solved, 300);
}
