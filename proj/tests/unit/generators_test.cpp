#include <gtest/gtest.h>

#include "brute.hpp"
#include "edgebip/generators.hpp"

using namespace edgebip;

TEST(Generators, PlantedIsDeterministic) {
  MultiGraph a = planted_instance(9, 15, 3);
  MultiGraph b = planted_instance(9, 15, 3);
  EXPECT_TRUE(a.same_structure(b));
}

TEST(Generators, PlantedOptimumAtMostJ) {
  for (int j = 0; j <= 3; ++j) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      MultiGraph g = planted_instance(seed, 10, j);
      EXPECT_LE(brute::min_bipartization(g), j);
      if (j == 0) EXPECT_EQ(brute::min_bipartization(g), 0);
    }
  }
}

TEST(Generators, RandomTermSepIsValid) {
  Rng rng(71);
  for (int it = 0; it < 100; ++it) {
    TermSepShape shape{6, 9, 3, 2, 1};
    TermSepInstance inst = random_termsep(rng, shape);
    EXPECT_NO_THROW(inst.validate());
    EXPECT_EQ(inst.pairs.size(), 3u);
  }
}

TEST(Generators, FitRecoversBase) {
  std::vector<std::pair<int, double>> pts;
  for (int k = 1; k <= 8; ++k) pts.emplace_back(k, 3.0 * std::pow(1.5, k));
  EXPECT_NEAR(fit_growth_base(pts), 1.5, 1e-9);
  std::vector<std::pair<int, double>> one{{2, 4.0}};
  EXPECT_EQ(fit_growth_base(one), 0);
}
