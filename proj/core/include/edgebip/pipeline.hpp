#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edgebip/branching.hpp"
#include "edgebip/multigraph.hpp"
#include "edgebip/oracle.hpp"
#include "edgebip/relaxation.hpp"

namespace edgebip {

enum class Engine { Branching, Guo, Oracle };

Engine parse_engine(const std::string& name);
const char* engine_name(Engine engine);

// Edge ids refer to the input graph; sorted, no duplicates.
struct Solution {
  std::vector<EdgeId> edges;
};

struct SolveOptions {
  Engine engine = Engine::Branching;
  EngineOptions branching;
};

struct SolveStats {
  EngineStats engine;
  long compressions = 0;
};

// Deletion set of size at most k making g bipartite, or none.
std::optional<Solution> solve_edge_bipartization(const MultiGraph& g, int k,
                                                 const SolveOptions& options = {},
                                                 SolveStats* stats = nullptr);

// Smallest k admitting a solution, together with the solution.
std::pair<int, Solution> optimum_bipartization(const MultiGraph& g,
                                               const SolveOptions& options = {},
                                               SolveStats* stats = nullptr);

// Edges whose endpoints share a colour in a BFS 2-colouring of each component.
std::vector<EdgeId> monochromatic_edges(const MultiGraph& g);

struct TermSepReduction {
  TermSepInstance instance;
};

// Drops edges of x while g - x stays bipartite; the result is inclusion-minimal.
std::vector<EdgeId> minimize_deletion_set(const MultiGraph& g, std::vector<EdgeId> x);

// g - x_prime must be bipartite and x_prime inclusion-minimal, so that some
// bipartition of g - x_prime has both ends of every x_prime edge on one side;
// otherwise InputError. Each edge uv of x_prime becomes a pair of new
// pendant terminals us, vt. Edge provenance records the id of the edge of g
// each new edge stands for.
TermSepReduction reduce_to_termsep(const MultiGraph& g, int k,
                                   std::span<const EdgeId> x_prime);

// Edges of g cut by an integral separation of the reduced instance.
Solution lift_solution(const TermSepInstance& inst, const Separation& sep);

// Solves the compression step for a deletion set of size k+1. The set is made
// minimal first; if that alone reaches size k it is returned.
std::optional<Solution> compress(const MultiGraph& g, int k, std::span<const EdgeId> x_prime,
                                 const SolveOptions& options = {},
                                 SolveStats* stats = nullptr);

inline constexpr int kGuoPairLimit = 25;

// Exhausts the 2^t orientations of unresolved pairs with one minimum cut each.
// Throws InputError above kGuoPairLimit pairs.
TermSepOptimum guo_optimum(const TermSepInstance& inst);
// The optimum when its cost is at most inst.k.
std::optional<Separation> baseline_guo(const TermSepInstance& inst);

// Optimum TermSep cost under the given engine (the inst.k field is ignored).
int termsep_optimum(const TermSepInstance& inst, Engine engine, EngineStats* stats = nullptr);

struct ResultRecord {
  bool feasible = false;
  int k = 0;
  std::vector<EdgeId> solution;
  long nodes = 0;
  long leaves = 0;
  RuleCounts rules{};
  double wall_ms = 0;
};

// key=value lines; `solution` lists 1-based edge indices.
void write_record(std::ostream& out, const ResultRecord& rec, bool with_timing = true);

}  // namespace edgebip
