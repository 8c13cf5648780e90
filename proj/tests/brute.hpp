#pragma once

// Exhaustive reference computations for tests. Nothing here calls the flow,
// relaxation or oracle modules of the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "edgebip/multigraph.hpp"
#include "edgebip/relaxation.hpp"

namespace brute {

using edgebip::EdgeId;
using edgebip::MultiGraph;
using edgebip::Separation;
using edgebip::Side;
using edgebip::TermSepInstance;
using edgebip::VertexId;

inline constexpr int kNone = std::numeric_limits<int>::max();

inline bool in(const std::vector<VertexId>& xs, VertexId v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

// Edges with exactly one end in x.
inline int boundary(const MultiGraph& g, const std::vector<VertexId>& x) {
  int c = 0;
  for (EdgeId e : g.edge_ids()) c += in(x, g.edge(e).u) != in(x, g.edge(e).v);
  return c;
}

inline int between(const MultiGraph& g, const std::vector<VertexId>& a,
                   const std::vector<VertexId>& b) {
  int c = 0;
  for (EdgeId e : g.edge_ids()) {
    const auto& ed = g.edge(e);
    c += (in(a, ed.u) && in(b, ed.v)) || (in(a, ed.v) && in(b, ed.u));
  }
  return c;
}

// Minimum number of edges whose removal leaves g bipartite, over all 2^n
// colourings.
inline int min_bipartization(const MultiGraph& g) {
  std::vector<VertexId> vs = g.vertices();
  std::vector<int> colour(g.id_bound(), 0);
  int best = kNone;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vs.size()); mask += 2) {
    for (std::size_t i = 0; i < vs.size(); ++i) colour[vs[i]] = (mask >> i) & 1;
    int mono = 0;
    for (EdgeId e : g.edge_ids()) mono += colour[g.edge(e).u] == colour[g.edge(e).v];
    best = std::min(best, mono);
    if (vs.size() <= 1) break;
  }
  return vs.empty() ? 0 : best;
}

inline bool bipartite_after(const MultiGraph& g, const std::vector<EdgeId>& removed) {
  std::vector<VertexId> vs = g.vertices();
  std::vector<int> colour(g.id_bound(), -1);
  for (VertexId r : vs) {
    if (colour[r] >= 0) continue;
    colour[r] = 0;
    std::vector<VertexId> stack{r};
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(u)) {
        if (std::find(removed.begin(), removed.end(), e) != removed.end()) continue;
        VertexId w = g.other_end(e, u);
        if (colour[w] < 0) {
          colour[w] = 1 - colour[u];
          stack.push_back(w);
        } else if (colour[w] == colour[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Visits every labelling of the live vertices that extends `seed`, where each
// free vertex takes a label from `labels` and every pair is untouched or split
// (A,B)/(B,A). Integral labellings use {A, B}; relaxed ones add None.
inline void for_each_extension(const TermSepInstance& inst, const Separation& seed, bool relaxed,
                               const std::function<void(const Separation&)>& visit) {
  const MultiGraph& g = inst.graph;
  std::vector<VertexId> free;
  for (VertexId v : g.vertices()) {
    if (!seed.assigned(v)) free.push_back(v);
  }
  std::vector<Side> labels = relaxed ? std::vector<Side>{Side::None, Side::A, Side::B}
                                     : std::vector<Side>{Side::A, Side::B};
  Separation cur = seed;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == free.size()) {
      for (const auto& p : inst.pairs) {
        if (!g.has_vertex(p.s) || !g.has_vertex(p.t)) continue;
        Side a = cur.side(p.s), b = cur.side(p.t);
        bool ok = (a == Side::None && b == Side::None) || (a != Side::None && b == edgebip::opposite(a));
        if (!ok) return;
      }
      visit(cur);
      return;
    }
    for (Side s : labels) {
      cur.assign(free[i], s);
      rec(i + 1);
    }
    cur.assign(free[i], Side::None);
  };
  rec(0);
}

inline int cost2_of(const MultiGraph& g, const Separation& sep) {
  int c = 0;
  for (EdgeId e : g.edge_ids()) {
    Side a = sep.side(g.edge(e).u), b = sep.side(g.edge(e).v);
    c += (a == Side::A) != (b == Side::A);
    c += (a == Side::B) != (b == Side::B);
  }
  return c;
}

// Cheapest integral separation extending `seed` (cost in edges), or kNone.
inline int termsep_optimum(const TermSepInstance& inst, const Separation& seed) {
  int best = kNone;
  for_each_extension(inst, seed, false, [&](const Separation& s) {
    best = std::min(best, cost2_of(inst.graph, s) / 2);
  });
  return best;
}

inline int termsep_optimum(const TermSepInstance& inst) { return termsep_optimum(inst, inst.seed); }

// Cheapest relaxed labelling extending `seed`, doubled cost.
inline int relaxed_optimum2(const TermSepInstance& inst, const Separation& seed) {
  int best = kNone;
  for_each_extension(inst, seed, true, [&](const Separation& s) {
    best = std::min(best, cost2_of(inst.graph, s));
  });
  return best;
}

// Minimum number of edges separating two vertex sets, over all subsets
// containing `src` and avoiding `snk`.
inline int min_cut(const MultiGraph& g, const std::vector<VertexId>& src,
                   const std::vector<VertexId>& snk) {
  std::vector<VertexId> free;
  for (VertexId v : g.vertices()) {
    if (!in(src, v) && !in(snk, v)) free.push_back(v);
  }
  int best = kNone;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    std::vector<VertexId> side = src;
    for (std::size_t i = 0; i < free.size(); ++i) {
      if ((mask >> i) & 1) side.push_back(free[i]);
    }
    best = std::min(best, boundary(g, side));
  }
  return best;
}

}  // namespace brute
