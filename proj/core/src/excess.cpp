#include "edgebip/excess.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "edgebip/flow.hpp"

namespace edgebip {
namespace {

void check_extension(const TermSepInstance& inst, const VertexMask& a, Side side) {
  for (VertexId v : inst.graph.vertices()) {
    Side s = inst.seed.side(v);
    if (s == side && !a.test(v)) throw InputError("excess: set misses a base vertex");
    if (s == opposite(side) && a.test(v)) throw InputError("excess: set meets the opposite side");
  }
}

}  // namespace

int excess(const TermSepInstance& inst, std::span<const VertexId> a, Side side) {
  for (VertexId v : a) {
    if (!inst.graph.has_vertex(v)) throw InputError("excess: unknown vertex");
  }
  VertexMask m = inst.graph.mask(a);
  check_extension(inst, m, side);
  return static_cast<int>(inst.graph.cut_size(m)) -
         static_cast<int>(inst.graph.cut_size(inst.seed.mask(side)));
}

std::vector<CompactExtension> enumerate_compact_extensions(const TermSepInstance& inst,
                                                           int r, Side side) {
  const MultiGraph& g = inst.graph;
  std::vector<VertexId> base = inst.seed.members(g, side);
  const int base_cut = static_cast<int>(g.cut_size(inst.seed.mask(side)));
  VertexMask blocked(g.id_bound());
  std::vector<VertexId> sinks;
  for (VertexId v : g.vertices()) {
    Side s = inst.seed.side(v);
    if (s == opposite(side) || (s != side && g.is_terminal(v))) {
      blocked.set(v);
      sinks.push_back(v);
    }
  }

  std::set<std::vector<VertexId>> seen{base};
  std::deque<std::vector<VertexId>> queue{base};
  std::vector<CompactExtension> out;
  while (!queue.empty()) {
    std::vector<VertexId> a = std::move(queue.front());
    queue.pop_front();
    bool extendable = false;
    for (VertexId v : g.neighborhood(a)) {
      if (blocked.test(v)) continue;
      std::vector<VertexId> sources = a;
      sources.push_back(v);
      auto cut = min_cut(g, sources, sinks, Extremal::Max, base_cut + r);
      if (!cut) continue;
      extendable = true;
      if (seen.insert(cut->source_side).second) queue.push_back(cut->source_side);
    }
    if (!extendable && a.size() > base.size()) {
      int ex = static_cast<int>(g.cut_size(a)) - base_cut;
      out.push_back({a, ex});
    }
  }
  std::sort(out.begin(), out.end(), [](const CompactExtension& x, const CompactExtension& y) {
    return x.vertices < y.vertices;
  });
  return out;
}

ExcessDecomposition decompose_excess2(const TermSepInstance& inst,
                                      std::span<const VertexId> a, Side side) {
  if (excess(inst, a, side) != 2) throw InputError("decompose_excess2: excess is not 2");
  const MultiGraph& g = inst.graph;
  std::vector<VertexId> base = inst.seed.members(g, side);
  VertexMask in_a = g.mask(a);
  ExcessDecomposition dec;
  for (VertexId v : a) {
    if (inst.seed.side(v) == side) continue;
    std::vector<VertexId> single = base;
    single.push_back(v);
    if (excess(inst, single, side) == 1) {
      dec.c.push_back(v);
    } else {
      dec.d_part.push_back(v);
    }
  }
  if (dec.d_part.size() == 1) dec.d = dec.d_part.front();
  for (VertexId c : dec.c) {
    dec.p.push_back(dec.d ? static_cast<int>(g.multiplicity(*dec.d, c)) : 0);
    int outside = 0;
    for (EdgeId e : g.incident(c)) outside += !in_a.test(g.other_end(e, c));
    dec.x.push_back(outside - 1);
  }
  return dec;
}

SigmaReport sigma_b_side(const TermSepInstance& inst, const ExcessDecomposition& dec,
                         Side side) {
  if (!dec.d) throw InputError("sigma_b_side: decomposition has no d vertex");
  SigmaReport report;
  report.sigma = static_cast<int>(inst.graph.edges_into(*dec.d, inst.seed.mask(side)));
  for (int p : dec.p) report.sigma += p;
  if (report.sigma == 1) report.structure = dec.c.empty() ? 1 : dec.c.size() == 1 ? 2 : 0;
  return report;
}

}  // namespace edgebip
