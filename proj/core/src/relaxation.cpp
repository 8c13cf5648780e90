#include "edgebip/relaxation.hpp"

#include <algorithm>

#include "edgebip/flow.hpp"

namespace edgebip {

void Separation::assign(VertexId v, Side s) {
  if (v >= side_.size()) side_.resize(v + 1, Side::None);
  side_[v] = s;
}

std::vector<VertexId> Separation::members(const MultiGraph& g, Side s) const {
  std::vector<VertexId> out;
  for (VertexId v : g.vertices()) {
    if (side(v) == s) out.push_back(v);
  }
  return out;
}

VertexMask Separation::mask(Side s) const {
  VertexMask m(side_.size());
  for (VertexId v = 0; v < side_.size(); ++v) {
    if (side_[v] == s) m.set(v);
  }
  return m;
}

Separation Separation::mirrored() const {
  Separation out = *this;
  for (Side& s : out.side_) s = opposite(s);
  return out;
}

bool Separation::extends(const Separation& base, const MultiGraph& g) const {
  for (VertexId v : g.vertices()) {
    if (base.assigned(v) && side(v) != base.side(v)) return false;
  }
  return true;
}

bool Separation::operator==(const Separation& other) const {
  std::size_t n = std::max(side_.size(), other.side_.size());
  for (VertexId v = 0; v < n; ++v) {
    if (side(v) != other.side(v)) return false;
  }
  return true;
}

int cost2(const MultiGraph& g, const Separation& sep) {
  return static_cast<int>(g.cut_size(sep.mask(Side::A)) + g.cut_size(sep.mask(Side::B)));
}

bool is_integral(const MultiGraph& g, const Separation& sep) {
  for (VertexId v : g.vertices()) {
    if (!sep.assigned(v)) return false;
  }
  return true;
}

bool pair_resolved(const Separation& sep, const TerminalPair& p) {
  return sep.assigned(p.s);
}

void check_pair_discipline(const MultiGraph& g, std::span<const TerminalPair> pairs,
                           const Separation& sep) {
  for (const TerminalPair& p : pairs) {
    if (!g.has_vertex(p.s) || !g.has_vertex(p.t)) {
      throw InputError("terminal pair refers to a missing vertex");
    }
    Side a = sep.side(p.s), b = sep.side(p.t);
    if (a != opposite(b)) {
      throw InputError("separation violates pair discipline at pair " +
                       std::to_string(p.id));
    }
  }
}

std::vector<TerminalPair> TermSepInstance::unresolved_pairs() const {
  std::vector<TerminalPair> out;
  for (const TerminalPair& p : pairs) {
    if (!pair_resolved(seed, p)) out.push_back(p);
  }
  std::sort(out.begin(), out.end(),
            [](const TerminalPair& x, const TerminalPair& y) { return x.id < y.id; });
  return out;
}

int TermSepInstance::unresolved_count() const {
  int count = 0;
  for (const TerminalPair& p : pairs) {
    if (!pair_resolved(seed, p)) ++count;
  }
  return count;
}

const TerminalPair* TermSepInstance::pair_of(VertexId v) const {
  auto mark = graph.terminal_mark(v);
  if (!mark) return nullptr;
  for (const TerminalPair& p : pairs) {
    if (p.id == *mark) return &p;
  }
  return nullptr;
}

VertexId TermSepInstance::partner(VertexId v) const {
  const TerminalPair* p = pair_of(v);
  if (!p) return kNoVertex;
  return p->s == v ? p->t : p->s;
}

void TermSepInstance::add_pair(VertexId s, VertexId t) {
  std::uint32_t id = 0;
  for (const TerminalPair& p : pairs) id = std::max(id, p.id + 1);
  pairs.push_back(TerminalPair{std::min(s, t), std::max(s, t), id});
  graph.set_terminal_mark(s, id);
  graph.set_terminal_mark(t, id);
}

void TermSepInstance::remove_pair(std::uint32_t id) {
  for (auto it = pairs.begin(); it != pairs.end(); ++it) {
    if (it->id != id) continue;
    if (graph.has_vertex(it->s)) graph.set_terminal_mark(it->s, std::nullopt);
    if (graph.has_vertex(it->t)) graph.set_terminal_mark(it->t, std::nullopt);
    pairs.erase(it);
    return;
  }
  throw StateError("remove_pair: unknown pair id");
}

void TermSepInstance::validate() const {
  VertexMask seen(graph.id_bound());
  for (const TerminalPair& p : pairs) {
    for (VertexId v : {p.s, p.t}) {
      if (!graph.has_vertex(v)) throw InputError("terminal is not a vertex");
      if (seen.test(v)) throw InputError("terminal pairs are not disjoint");
      seen.set(v);
      if (graph.degree(v) > 1) {
        throw InputError("terminal " + std::to_string(v) + " has degree " +
                         std::to_string(graph.degree(v)));
      }
    }
    if (p.s == p.t) throw InputError("terminal pair with identical ends");
  }
  for (VertexId v : graph.vertices()) {
    if (seen.test(v) != graph.is_terminal(v)) {
      throw InputError("terminal marks disagree with the pair list");
    }
  }
  check_pair_discipline(graph, pairs, seed);
}

namespace {

// Two nodes per vertex: v+ on the source side means v is in A, v- on the
// source side means v is in B. A pair (s, t) shares nodes: s+ = t-, s- = t+.
class DoubledNetwork {
 public:
  DoubledNetwork(const MultiGraph& g, std::span<const TerminalPair> pairs)
      : graph_(g), plus_(g.id_bound(), 0), minus_(g.id_bound(), 0), net_(2) {
    VertexMask second(g.id_bound());
    for (const TerminalPair& p : pairs) second.set(p.t);
    for (VertexId v : g.vertices()) {
      if (second.test(v)) continue;
      plus_[v] = net_.add_node();
      minus_[v] = net_.add_node();
    }
    for (const TerminalPair& p : pairs) {
      plus_[p.t] = minus_[p.s];
      minus_[p.t] = plus_[p.s];
    }
    for (EdgeId e : g.edge_ids()) {
      const Edge& ed = g.edge(e);
      net_.add_undirected(plus_[ed.u], plus_[ed.v], 1);
      net_.add_undirected(minus_[ed.u], minus_[ed.v], 1);
    }
  }

  void pin(VertexId v, Side side) {
    auto [src, snk] = side == Side::A ? std::pair{plus_[v], minus_[v]}
                                      : std::pair{minus_[v], plus_[v]};
    net_.pin_to_source(src);
    net_.pin_to_sink(snk);
  }

  int solve() {
    auto value = net_.augment(ResidualNetwork::kInfinite - 1);
    if (!value) throw InputError("seed assigns a vertex to both sides");
    return *value;
  }

  // Would pinning v to `side` force a larger cut?
  bool pin_raises_cut(VertexId v, Side side, const std::vector<char>& from_source) const {
    auto [src, snk] = side == Side::A ? std::pair{plus_[v], minus_[v]}
                                      : std::pair{minus_[v], plus_[v]};
    if (from_source[snk]) return true;
    auto reach = net_.reachable_from(src);
    return reach[net_.sink()] || reach[snk];
  }

  std::vector<char> from_source() const { return net_.reachable_from_source(); }

  Separation labels(const std::vector<char>& from_source) const {
    Separation sep(graph_.id_bound());
    for (VertexId v : graph_.vertices()) {
      bool a = from_source[plus_[v]], b = from_source[minus_[v]];
      if (a && !b) sep.assign(v, Side::A);
      if (b && !a) sep.assign(v, Side::B);
    }
    return sep;
  }

 private:
  const MultiGraph& graph_;
  std::vector<ResidualNetwork::Node> plus_, minus_;
  ResidualNetwork net_;
};

DoubledNetwork pinned_network(const MultiGraph& g, std::span<const TerminalPair> pairs,
                              const Separation& seed) {
  check_pair_discipline(g, pairs, seed);
  DoubledNetwork net(g, pairs);
  for (VertexId v : g.vertices()) {
    if (seed.assigned(v)) net.pin(v, seed.side(v));
  }
  return net;
}

}  // namespace

int min_extension_cost2(const MultiGraph& g, std::span<const TerminalPair> pairs,
                        const Separation& seed) {
  DoubledNetwork net = pinned_network(g, pairs, seed);
  return net.solve();
}

Separation min_cost_extension(const MultiGraph& g, std::span<const TerminalPair> pairs,
                              const Separation& seed) {
  DoubledNetwork net = pinned_network(g, pairs, seed);
  net.solve();
  auto reach = net.from_source();
  Separation current = net.labels(reach);
  // One pass suffices: pins only accumulate, so a rejected probe stays
  // rejected.
  for (VertexId v : g.vertices()) {
    for (Side side : {Side::A, Side::B}) {
      if (current.assigned(v)) break;
      if (net.pin_raises_cut(v, side, reach)) continue;
      net.pin(v, side);
      reach = net.from_source();
      current = net.labels(reach);
    }
  }
  return current;
}

Separation min_cost_extension(const TermSepInstance& inst, const Separation& seed) {
  return min_cost_extension(inst.graph, inst.pairs, seed);
}

bool normalize(TermSepInstance& inst) {
  inst.seed = min_cost_extension(inst, inst.seed);
  return inst.cost2() <= 2 * inst.k;
}

ProbeReport probe_branch(const TermSepInstance& inst, const Separation& seed) {
  ProbeReport report;
  report.extension = min_cost_extension(inst, seed);
  const Separation& ext = report.extension;
  for (const TerminalPair& p : inst.pairs) {
    if (!pair_resolved(inst.seed, p) && pair_resolved(ext, p)) ++report.resolved;
  }
  report.cost_delta2 = cost2(inst.graph, ext) - inst.cost2();
  VertexMask a = ext.mask(Side::A), b = ext.mask(Side::B);
  report.rho = static_cast<int>(inst.graph.edges_between(a, b));
  for (VertexId v : inst.graph.vertices()) {
    if (ext.assigned(v)) continue;
    report.rho += static_cast<int>(
        std::min(inst.graph.edges_into(v, a), inst.graph.edges_into(v, b)));
  }
  return report;
}

}  // namespace edgebip
