#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

#include "edgebip/multigraph.hpp"
#include "edgebip/reductions.hpp"
#include "edgebip/relaxation.hpp"

namespace edgebip {

using Rng = std::mt19937_64;

// n vertices and m edges with uniformly random distinct endpoints; parallel
// edges allowed.
MultiGraph random_multigraph(Rng& rng, int n, int m);

// Random bipartite graph with edge probability p between the parts plus
// exactly j edges inside parts, so the optimum is at most j. Deterministic in
// the seed.
MultiGraph planted_instance(std::uint64_t seed, int n, int j, double p = 0.3);

struct TermSepShape {
  int n = 8;          // non-terminal vertices
  int m = 12;         // edges among them
  int pairs = 2;      // terminal pairs, each terminal pendant to a random vertex
  int seeded = 0;     // non-terminals pre-assigned to A° or B°
  int isolated = 0;   // terminals left without an edge
};

TermSepInstance random_termsep(Rng& rng, const TermSepShape& shape);

// A TermSep instance from one compression step on a random graph: pairs come
// from a minimal deletion set X' of at most k+1 edges (retrying graphs until
// one is found), budget |X'| - 1. Graphs with X' empty yield no pairs.
TermSepInstance compression_termsep(Rng& rng, int n, int m, int k);

// Random instance on which `rule` is applicable once every rule of higher
// priority has been exhausted. Returns false after `attempts` misses.
bool instance_for_rule(Rng& rng, Rule rule, TermSepInstance& out, int attempts = 4000);

// Least-squares fit of log(count) = a + k·log(base); returns base. Points with
// count <= 0 are ignored. Needs two distinct k values, else returns 0.
double fit_growth_base(std::span<const std::pair<int, double>> points);

}  // namespace edgebip
