#include "edgebip/oracle.hpp"

#include <algorithm>
#include <climits>

namespace edgebip {
namespace {

struct Unit {
  VertexId first;
  VertexId second;  // partner terminal, or kNoVertex
};

// Free decision units: single non-terminal vertices and unresolved pairs.
std::vector<Unit> free_units(const MultiGraph& g, std::span<const TerminalPair> pairs,
                             const Separation& seed) {
  VertexMask terminal(g.id_bound());
  std::vector<Unit> units;
  for (const TerminalPair& p : pairs) {
    terminal.set(p.s);
    terminal.set(p.t);
    if (!seed.assigned(p.s)) units.push_back({p.s, p.t});
  }
  for (VertexId v : g.vertices()) {
    if (!terminal.test(v) && !seed.assigned(v)) units.push_back({v, kNoVertex});
  }
  return units;
}

struct EdgeList {
  std::vector<std::pair<VertexId, VertexId>> ends;
  explicit EdgeList(const MultiGraph& g) {
    for (EdgeId e : g.edge_ids()) ends.emplace_back(g.edge(e).u, g.edge(e).v);
  }
};

}  // namespace

BipartizationWitness oracle_min_bipartization_by_bipartitions(const MultiGraph& g) {
  std::vector<VertexId> vs = g.vertices();
  if (vs.size() > 20) throw InputError("oracle guard: more than 20 vertices");
  std::vector<std::size_t> pos(g.id_bound(), 0);
  for (std::size_t i = 0; i < vs.size(); ++i) pos[vs[i]] = i;
  std::vector<EdgeId> ids = g.edge_ids();
  BipartizationWitness best{INT_MAX, {}};
  std::uint32_t limit = vs.empty() ? 1u : (1u << (vs.size() - 1));
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    int mono = 0;
    for (EdgeId e : ids) {
      const Edge& ed = g.edge(e);
      if (((mask >> pos[ed.u]) & 1u) == ((mask >> pos[ed.v]) & 1u)) ++mono;
    }
    if (mono < best.size) {
      best.size = mono;
      best.edges.clear();
      for (EdgeId e : ids) {
        const Edge& ed = g.edge(e);
        if (((mask >> pos[ed.u]) & 1u) == ((mask >> pos[ed.v]) & 1u)) best.edges.push_back(e);
      }
    }
  }
  return best;
}

BipartizationWitness oracle_min_bipartization_by_subsets(const MultiGraph& g) {
  std::vector<EdgeId> ids = g.edge_ids();
  if (ids.size() > 30) throw InputError("oracle guard: more than 30 edges");
  const int m = static_cast<int>(ids.size());
  // Subsets in order of increasing size via combination stepping.
  for (int size = 0; size <= m; ++size) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::vector<EdgeId> removed;
      for (int i : pick) removed.push_back(ids[i]);
      if (two_coloring(g, removed)) return {size, removed};
      int i = size - 1;
      while (i >= 0 && pick[i] == m - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw StateError("oracle: removing every edge must leave a bipartite graph");
}

BipartizationWitness oracle_min_bipartization(const MultiGraph& g) {
  if (g.num_vertices() <= 20) return oracle_min_bipartization_by_bipartitions(g);
  if (g.num_edges() <= 30) return oracle_min_bipartization_by_subsets(g);
  throw InputError("oracle guard: instance too large");
}

TermSepOptimum oracle_termsep(const TermSepInstance& inst) {
  const MultiGraph& g = inst.graph;
  check_pair_discipline(g, inst.pairs, inst.seed);
  std::vector<Unit> units = free_units(g, inst.pairs, inst.seed);
  if (units.size() > 24) throw InputError("oracle guard: more than 24 free units");
  EdgeList edges(g);
  Separation sep = inst.seed;
  for (VertexId v : g.vertices()) {
    if (!sep.assigned(v)) sep.assign(v, Side::A);
  }
  TermSepOptimum best{INT_MAX, {}};
  const std::uint64_t limit = 1ull << units.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    for (std::size_t i = 0; i < units.size(); ++i) {
      Side s = (mask >> i) & 1u ? Side::B : Side::A;
      sep.assign(units[i].first, s);
      if (units[i].second != kNoVertex) sep.assign(units[i].second, opposite(s));
    }
    int cut = 0;
    for (auto [u, v] : edges.ends) cut += sep.side(u) != sep.side(v);
    if (cut < best.cost) best = {cut, sep};
  }
  return best;
}

void for_each_relaxed_labeling(const MultiGraph& g, std::span<const TerminalPair> pairs,
                               const Separation& seed,
                               const std::function<void(const Separation&, int)>& visit) {
  check_pair_discipline(g, pairs, seed);
  std::vector<Unit> units = free_units(g, pairs, seed);
  if (units.size() > 13) throw InputError("oracle guard: more than 13 free units");
  EdgeList edges(g);
  Separation sep = seed;
  std::vector<int> digit(units.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < units.size(); ++i) {
      Side s = static_cast<Side>(digit[i]);
      sep.assign(units[i].first, s);
      if (units[i].second != kNoVertex) sep.assign(units[i].second, opposite(s));
    }
    int c2 = 0;
    for (auto [u, v] : edges.ends) {
      Side su = sep.side(u), sv = sep.side(v);
      c2 += (su == Side::A) != (sv == Side::A);
      c2 += (su == Side::B) != (sv == Side::B);
    }
    visit(sep, c2);
    std::size_t i = 0;
    while (i < digit.size() && digit[i] == 2) digit[i++] = 0;
    if (i == digit.size()) break;
    ++digit[i];
  }
}

int oracle_relaxation_cost2(const MultiGraph& g, std::span<const TerminalPair> pairs,
                            const Separation& seed) {
  int best = INT_MAX;
  for_each_relaxed_labeling(g, pairs, seed,
                            [&](const Separation&, int c2) { best = std::min(best, c2); });
  return best;
}

}  // namespace edgebip
