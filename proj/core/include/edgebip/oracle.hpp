#pragma once

#include <functional>
#include <vector>

#include "edgebip/multigraph.hpp"
#include "edgebip/relaxation.hpp"

namespace edgebip {

// Exhaustive reference solvers. They share no code with the flow machinery and
// exist to check it.

struct BipartizationWitness {
  int size = 0;
  std::vector<EdgeId> edges;
};

// Dispatches on size: bipartition enumeration for |V| <= 20, else edge-subset
// enumeration for |E| <= 30. Throws InputError beyond both guards.
BipartizationWitness oracle_min_bipartization(const MultiGraph& g);
BipartizationWitness oracle_min_bipartization_by_bipartitions(const MultiGraph& g);
BipartizationWitness oracle_min_bipartization_by_subsets(const MultiGraph& g);

struct TermSepOptimum {
  int cost = 0;
  Separation separation;
};

// Cheapest integral separation extending the seed, by enumerating every side
// assignment of the free vertices (at most 2^24 assignments). Ignores k.
TermSepOptimum oracle_termsep(const TermSepInstance& inst);

// Visits every labelling with labels {none, A, B} that extends `seed` and
// respects pair discipline, together with its doubled cost. Guarded to 3^13.
void for_each_relaxed_labeling(const MultiGraph& g, std::span<const TerminalPair> pairs,
                               const Separation& seed,
                               const std::function<void(const Separation&, int)>& visit);

// Minimum doubled cost over all relaxed labellings extending `seed`.
int oracle_relaxation_cost2(const MultiGraph& g, std::span<const TerminalPair> pairs,
                            const Separation& seed);

}  // namespace edgebip
