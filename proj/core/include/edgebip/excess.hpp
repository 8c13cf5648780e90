#pragma once

#include <optional>
#include <span>
#include <vector>

#include "edgebip/relaxation.hpp"

namespace edgebip {

// All excess computations are relative to one side of the seed: with
// side == A the base is A° and B° is the opposite set; with side == B the
// roles swap.

// d(a) - d(base). Throws InputError unless a contains the base and avoids the
// opposite set.
int excess(const TermSepInstance& inst, std::span<const VertexId> a, Side side);

struct CompactExtension {
  std::vector<VertexId> vertices;  // sorted, includes the base
  int excess = 0;
};

// Terminal-free compact extensions of excess at most r that have no compact
// strict superset of excess at most r, found by the queue process over
// maximal minimum cuts. The base itself is never reported.
std::vector<CompactExtension> enumerate_compact_extensions(const TermSepInstance& inst,
                                                           int r, Side side);

struct ExcessDecomposition {
  // Vertices of a \ base whose singleton extension does not have excess 1.
  std::vector<VertexId> d_part;
  std::optional<VertexId> d;  // set when d_part has exactly one vertex
  std::vector<VertexId> c;    // singleton extensions of excess 1
  std::vector<int> p;         // |E(d, c_i)|
  std::vector<int> x;         // |E(c_i, V \ a)| - 1
};

// Throws InputError unless a has excess exactly 2.
ExcessDecomposition decompose_excess2(const TermSepInstance& inst,
                                      std::span<const VertexId> a, Side side);

struct SigmaReport {
  int sigma = 0;
  // For sigma == 1: 1 when r == 0 (d has degree four), 2 when r == 1.
  int structure = 0;
};

// sigma = |E(d, base)| + sum p_i. Throws InputError without a d vertex.
SigmaReport sigma_b_side(const TermSepInstance& inst, const ExcessDecomposition& dec,
                         Side side);

}  // namespace edgebip
