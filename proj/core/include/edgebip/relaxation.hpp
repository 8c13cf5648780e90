#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgebip/multigraph.hpp"

namespace edgebip {

enum class Side : std::uint8_t { None = 0, A = 1, B = 2 };

inline Side opposite(Side s) {
  return s == Side::A ? Side::B : s == Side::B ? Side::A : Side::None;
}

struct TerminalPair {
  VertexId s = kNoVertex;
  VertexId t = kNoVertex;
  std::uint32_t id = 0;
};

// Partial labelling of vertices with {A, B, none}, indexed by vertex id.
class Separation {
 public:
  Separation() = default;
  explicit Separation(std::size_t bound) : side_(bound, Side::None) {}

  Side side(VertexId v) const { return v < side_.size() ? side_[v] : Side::None; }
  bool in(VertexId v, Side s) const { return side(v) == s; }
  bool assigned(VertexId v) const { return side(v) != Side::None; }
  void assign(VertexId v, Side s);

  std::vector<VertexId> members(const MultiGraph& g, Side s) const;
  VertexMask mask(Side s) const;
  Separation mirrored() const;
  // Every assignment of `base` on live vertices of g is kept.
  bool extends(const Separation& base, const MultiGraph& g) const;
  bool operator==(const Separation& other) const;

 private:
  std::vector<Side> side_;
};

// d(A) + d(B), i.e. twice the cost of the separation.
int cost2(const MultiGraph& g, const Separation& sep);
bool is_integral(const MultiGraph& g, const Separation& sep);
bool pair_resolved(const Separation& sep, const TerminalPair& p);
// Throws InputError on a pair split other than (A,B), (B,A) or untouched.
void check_pair_discipline(const MultiGraph& g, std::span<const TerminalPair> pairs,
                           const Separation& sep);

struct TermSepInstance {
  MultiGraph graph;
  std::vector<TerminalPair> pairs;
  Separation seed;
  int k = 0;

  int cost2() const { return edgebip::cost2(graph, seed); }
  std::vector<TerminalPair> unresolved_pairs() const;
  int unresolved_count() const;
  const TerminalPair* pair_of(VertexId v) const;
  VertexId partner(VertexId v) const;
  // Registers a fresh pair, marking both vertices as terminals.
  void add_pair(VertexId s, VertexId t);
  void remove_pair(std::uint32_t id);
  // Structural checks: disjoint pairs, terminal degree at most one, pair
  // discipline of the seed. Throws InputError.
  void validate() const;
};

// Maximal minimum-cost extension of `seed`.
Separation min_cost_extension(const MultiGraph& g, std::span<const TerminalPair> pairs,
                              const Separation& seed);
Separation min_cost_extension(const TermSepInstance& inst, const Separation& seed);
// Cost (doubled) of a minimum extension, without the maximality pass.
int min_extension_cost2(const MultiGraph& g, std::span<const TerminalPair> pairs,
                        const Separation& seed);

// Replaces the seed by its maximal minimum-cost extension. Returns false when
// that cost exceeds k.
bool normalize(TermSepInstance& inst);

struct ProbeReport {
  int resolved = 0;
  int cost_delta2 = 0;
  int rho = 0;
  Separation extension;
};
ProbeReport probe_branch(const TermSepInstance& inst, const Separation& seed);

}  // namespace edgebip
