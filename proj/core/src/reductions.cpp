#include "edgebip/reductions.hpp"

#include <algorithm>
#include <deque>

#include "edgebip/excess.hpp"
#include "edgebip/flow.hpp"

namespace edgebip {

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::Terminator: return "terminator";
    case Rule::Boundary: return "boundary";
    case Rule::Pendant: return "pendant";
    case Rule::LonelyTerminal: return "lonely_terminal";
    case Rule::AdjacentTerminals: return "adjacent_terminals";
    case Rule::CommonNeighbor: return "common_neighbor";
    case Rule::MajorityNeighbour: return "majority_neighbour";
    case Rule::Excess1: return "excess1";
    case Rule::Excess2: return "excess2";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Lifting

void LiftLog::record_merge(std::vector<VertexId> members, VertexId merged) {
  entries_.emplace_back(Merge{std::move(members), merged});
}

void LiftLog::record_follow(VertexId v, VertexId anchor, bool same_side) {
  entries_.emplace_back(Follow{v, anchor, same_side});
}

void LiftLog::record_fixed(VertexId v, Side side) { entries_.emplace_back(Fixed{v, side}); }

void LiftLog::record_pendant_delete(std::vector<VertexId> x, VertexId anchor) {
  entries_.emplace_back(PendantDelete{std::move(x), anchor});
}

void LiftLog::record_pendant_replace(std::vector<VertexId> x, VertexId u, VertexId v,
                                     std::vector<std::pair<VertexId, VertexId>> inner) {
  entries_.emplace_back(PendantReplace{std::move(x), u, v, std::move(inner)});
}

void LiftLog::append(const LiftLog& later) {
  entries_.insert(entries_.end(), later.entries_.begin(), later.entries_.end());
}

namespace {

Side side_or_a(const Separation& sep, VertexId v) {
  Side s = sep.side(v);
  return s == Side::None ? Side::A : s;
}

// Splits X between u and v along a minimum cut of the recorded subgraph.
void lift_pendant_replace(Separation& sep, const std::vector<VertexId>& x, VertexId u,
                          VertexId v, const std::vector<std::pair<VertexId, VertexId>>& inner) {
  Side su = side_or_a(sep, u), sv = side_or_a(sep, v);
  if (su == sv) {
    for (VertexId w : x) sep.assign(w, su);
    return;
  }
  std::vector<VertexId> ids{u, v};
  ids.insert(ids.end(), x.begin(), x.end());
  auto local = [&](VertexId w) {
    return static_cast<VertexId>(std::find(ids.begin(), ids.end(), w) - ids.begin());
  };
  MultiGraph h(ids.size());
  for (auto [a, b] : inner) h.add_edge(local(a), local(b));
  VertexId src = 0, snk = 1;
  auto cut = min_cut(h, std::span(&src, 1), std::span(&snk, 1), Extremal::Min,
                     static_cast<int>(h.num_edges()) + 1);
  VertexMask source_side = h.mask(cut->source_side);
  for (std::size_t i = 2; i < ids.size(); ++i) {
    sep.assign(ids[i], source_side.test(static_cast<VertexId>(i)) ? su : sv);
  }
}

}  // namespace

Separation LiftLog::lift(Separation sep) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, Merge>) {
            Side s = side_or_a(sep, e.merged);
            for (VertexId m : e.members) sep.assign(m, s);
          } else if constexpr (std::is_same_v<T, Follow>) {
            Side s = side_or_a(sep, e.anchor);
            sep.assign(e.v, e.same ? s : opposite(s));
          } else if constexpr (std::is_same_v<T, Fixed>) {
            sep.assign(e.v, e.side);
          } else if constexpr (std::is_same_v<T, PendantDelete>) {
            Side s = e.anchor == kNoVertex ? Side::A : side_or_a(sep, e.anchor);
            for (VertexId w : e.x) sep.assign(w, s);
          } else {
            lift_pendant_replace(sep, e.x, e.u, e.v, e.inner);
          }
        },
        *it);
  }
  return sep;
}

// ---------------------------------------------------------------------------
// Helpers

VertexId merge_vertices(TermSepInstance& inst, std::span<const VertexId> x, LiftLog& log) {
  bool in_a = false, in_b = false;
  std::vector<VertexId> members(x.begin(), x.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (VertexId v : members) {
    if (inst.graph.is_terminal(v)) throw StateError("merge_vertices: set contains a terminal");
    in_a |= inst.seed.in(v, Side::A);
    in_b |= inst.seed.in(v, Side::B);
  }
  if (in_a && in_b) return kNoVertex;
  VertexId z = inst.graph.merge_set(members);
  inst.seed.assign(z, in_a ? Side::A : in_b ? Side::B : Side::None);
  log.record_merge(std::move(members), z);
  return z;
}

namespace {

ReductionOutcome applied(Rule rule, int dk = 0, int dpairs = 0) {
  return {ReductionOutcome::Kind::Applied, rule, dk, dpairs};
}

ReductionOutcome not_applicable(Rule rule) {
  return {ReductionOutcome::Kind::NotApplicable, rule, 0, 0};
}

ReductionOutcome no_solution(Rule rule) {
  return {ReductionOutcome::Kind::NoSolution, rule, 0, 0};
}

bool unresolved_terminal(const TermSepInstance& inst, VertexId v) {
  return inst.graph.is_terminal(v) && !inst.seed.assigned(v);
}

VertexId only_neighbor(const MultiGraph& g, VertexId v) {
  auto inc = g.incident(v);
  return inc.empty() ? kNoVertex : g.other_end(inc.front(), v);
}

// Connected pieces of G - S that avoid every vertex of `locked` and whose
// neighbourhood lies inside S.
class PendantSearch {
 public:
  PendantSearch(const MultiGraph& g, const VertexMask& locked)
      : g_(g), locked_(locked), stamp_(g.id_bound(), 0) {}

  std::vector<VertexId> find(std::span<const VertexId> separator) {
    ++epoch_;
    const int removed = epoch_;
    for (VertexId s : separator) stamp_[s] = removed;
    ++epoch_;
    for (VertexId root : g_.vertices()) {
      if (locked_.test(root) || stamp_[root] == removed || stamp_[root] == epoch_) continue;
      std::vector<VertexId> piece{root};
      stamp_[root] = epoch_;
      bool clean = true;
      for (std::size_t i = 0; i < piece.size(); ++i) {
        for (EdgeId e : g_.incident(piece[i])) {
          VertexId w = g_.other_end(e, piece[i]);
          if (stamp_[w] == removed || stamp_[w] == epoch_) continue;
          if (locked_.test(w)) {
            clean = false;
            continue;
          }
          stamp_[w] = epoch_;
          piece.push_back(w);
        }
      }
      if (clean) {
        std::sort(piece.begin(), piece.end());
        return piece;
      }
    }
    return {};
  }

 private:
  const MultiGraph& g_;
  const VertexMask& locked_;
  std::vector<int> stamp_;
  int epoch_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Rules

ReductionOutcome terminator(TermSepInstance& inst) {
  if (inst.k < 0 || inst.cost2() > 2 * inst.k) return no_solution(Rule::Terminator);
  if (is_integral(inst.graph, inst.seed)) {
    return {ReductionOutcome::Kind::Solved, Rule::Terminator, 0, 0};
  }
  return not_applicable(Rule::Terminator);
}

ReductionOutcome boundary(TermSepInstance& inst, LiftLog&) {
  MultiGraph& g = inst.graph;
  for (VertexId v : g.vertices()) {
    if (!inst.seed.in(v, Side::A)) continue;
    for (EdgeId e : g.incident(v)) {
      if (inst.seed.in(g.other_end(e, v), Side::B)) {
        g.delete_edge(e);
        --inst.k;
        return applied(Rule::Boundary, 1);
      }
    }
  }
  for (VertexId v : g.vertices()) {
    if (inst.seed.assigned(v)) continue;
    EdgeId to_a = 0, to_b = 0;
    bool has_a = false, has_b = false;
    for (EdgeId e : g.incident(v)) {
      Side s = inst.seed.side(g.other_end(e, v));
      if (s == Side::A && !has_a) to_a = e, has_a = true;
      if (s == Side::B && !has_b) to_b = e, has_b = true;
    }
    if (has_a && has_b) {
      g.delete_edge(to_a);
      g.delete_edge(to_b);
      --inst.k;
      return applied(Rule::Boundary, 1);
    }
  }
  return not_applicable(Rule::Boundary);
}

ReductionOutcome pendant(TermSepInstance& inst, LiftLog& log) {
  MultiGraph& g = inst.graph;
  VertexMask locked(g.id_bound());
  for (VertexId v : g.vertices()) {
    if (inst.seed.assigned(v) || g.is_terminal(v)) locked.set(v);
  }
  PendantSearch search(g, locked);
  std::vector<VertexId> vs = g.vertices();

  auto drop = [&](const std::vector<VertexId>& x, VertexId anchor) {
    log.record_pendant_delete(x, anchor);
    g.delete_vertices(x);
    return applied(Rule::Pendant);
  };

  if (auto x = search.find({}); !x.empty()) return drop(x, kNoVertex);
  for (VertexId u : vs) {
    if (auto x = search.find(std::span(&u, 1)); !x.empty()) return drop(x, u);
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const VertexId sep[2] = {vs[i], vs[j]};
      std::vector<VertexId> x = search.find(sep);
      if (x.empty()) continue;
      const VertexId u = sep[0], v = sep[1];
      // Minimum u-v cut through X, ignoring direct u-v edges.
      std::vector<VertexId> ids{u, v};
      ids.insert(ids.end(), x.begin(), x.end());
      VertexMask in_n = g.mask(ids);
      MultiGraph local(ids.size());
      std::vector<std::pair<VertexId, VertexId>> inner;
      auto index = [&](VertexId w) {
        return static_cast<VertexId>(std::find(ids.begin(), ids.end(), w) - ids.begin());
      };
      for (VertexId w : x) {
        for (EdgeId e : g.incident(w)) {
          VertexId z = g.other_end(e, w);
          if (!in_n.test(z)) continue;
          if (index(z) >= 2 && z < w) continue;  // X-internal edge seen twice
          inner.emplace_back(w, z);
          local.add_edge(index(w), index(z));
        }
      }
      VertexId src = 0, snk = 1;
      FlowNetwork net(local, std::span(&src, 1), std::span(&snk, 1), inst.k + 1);
      auto lambda = net.max_flow_bounded();
      bool terminal_end = g.is_terminal(u) || g.is_terminal(v);
      if ((lambda && *lambda <= inst.k) || terminal_end) {
        int count = lambda ? *lambda : inst.k + 1;
        log.record_pendant_replace(x, u, v, std::move(inner));
        g.delete_vertices(x);
        for (int c = 0; c < count; ++c) {
          g.add_edge(u, v, Provenance::synthetic(Provenance::Kind::PendantReplacement));
        }
        return applied(Rule::Pendant);
      }
      if (merge_vertices(inst, ids, log) == kNoVertex) return no_solution(Rule::Pendant);
      return applied(Rule::Pendant);
    }
  }
  return not_applicable(Rule::Pendant);
}

ReductionOutcome lonely_terminal(TermSepInstance& inst, LiftLog& log) {
  MultiGraph& g = inst.graph;
  for (const TerminalPair& p : inst.unresolved_pairs()) {
    VertexId iso = g.degree(p.s) == 0 ? p.s : g.degree(p.t) == 0 ? p.t : kNoVertex;
    if (iso == kNoVertex) continue;
    VertexId other = iso == p.s ? p.t : p.s;
    log.record_follow(iso, other, false);
    VertexId anchor = only_neighbor(g, other);
    if (anchor == kNoVertex) {
      log.record_fixed(other, Side::A);
    } else {
      log.record_follow(other, anchor, true);
    }
    inst.remove_pair(p.id);
    g.delete_vertex(p.s);
    g.delete_vertex(p.t);
    return applied(Rule::LonelyTerminal, 0, 1);
  }
  return not_applicable(Rule::LonelyTerminal);
}

ReductionOutcome adjacent_terminals(TermSepInstance& inst, LiftLog& log) {
  MultiGraph& g = inst.graph;
  for (const TerminalPair& p : inst.unresolved_pairs()) {
    for (VertexId x : {p.s, p.t}) {
      VertexId w = only_neighbor(g, x);
      if (w == kNoVertex || !unresolved_terminal(inst, w)) continue;
      VertexId partner_x = x == p.s ? p.t : p.s;
      if (w == partner_x) {
        log.record_fixed(p.s, Side::A);
        log.record_fixed(p.t, Side::B);
        inst.remove_pair(p.id);
        g.delete_vertex(p.s);
        g.delete_vertex(p.t);
        --inst.k;
        return applied(Rule::AdjacentTerminals, 1, 1);
      }
      const TerminalPair q = *inst.pair_of(w);
      VertexId partner_w = w == q.s ? q.t : q.s;
      log.record_follow(x, partner_x, false);
      log.record_follow(w, partner_w, false);
      inst.remove_pair(p.id);
      inst.remove_pair(q.id);
      g.delete_vertex(x);
      g.delete_vertex(w);
      g.add_edge(partner_x, partner_w,
                 Provenance::synthetic(Provenance::Kind::TerminalBridge));
      return applied(Rule::AdjacentTerminals, 0, 2);
    }
  }
  return not_applicable(Rule::AdjacentTerminals);
}

ReductionOutcome common_neighbor(TermSepInstance& inst, LiftLog& log) {
  MultiGraph& g = inst.graph;
  for (const TerminalPair& p : inst.unresolved_pairs()) {
    VertexId a = only_neighbor(g, p.s);
    if (a == kNoVertex || a != only_neighbor(g, p.t)) continue;
    log.record_follow(p.t, p.s, false);
    log.record_follow(p.s, a, true);
    inst.remove_pair(p.id);
    g.delete_vertex(p.s);
    g.delete_vertex(p.t);
    --inst.k;
    return applied(Rule::CommonNeighbor, 1, 1);
  }
  return not_applicable(Rule::CommonNeighbor);
}

ReductionOutcome majority_neighbour(TermSepInstance& inst, LiftLog& log) {
  const MultiGraph& g = inst.graph;
  auto eligible = [&](VertexId v) { return !inst.seed.assigned(v) && !g.is_terminal(v); };
  for (VertexId u : g.vertices()) {
    if (!eligible(u) || g.degree(u) == 0) continue;
    for (VertexId v : g.neighbors(u)) {
      if (!eligible(v) || 2 * g.multiplicity(u, v) < g.degree(u)) continue;
      const VertexId pair[2] = {u, v};
      merge_vertices(inst, pair, log);
      return applied(Rule::MajorityNeighbour);
    }
  }
  return not_applicable(Rule::MajorityNeighbour);
}

ReductionOutcome excess1_reduction(TermSepInstance& inst, LiftLog& log) {
  for (Side side : {Side::A, Side::B}) {
    for (const CompactExtension& ext : enumerate_compact_extensions(inst, 1, side)) {
      if (ext.excess != 1) continue;
      std::vector<VertexId> rest;
      for (VertexId v : ext.vertices) {
        if (!inst.seed.in(v, side)) rest.push_back(v);
      }
      if (rest.size() <= 1) continue;
      merge_vertices(inst, rest, log);
      return applied(Rule::Excess1);
    }
  }
  return not_applicable(Rule::Excess1);
}

ReductionOutcome excess2_reduction(TermSepInstance& inst, LiftLog& log) {
  for (Side side : {Side::A, Side::B}) {
    for (const CompactExtension& ext : enumerate_compact_extensions(inst, 2, side)) {
      if (ext.excess != 2) continue;
      ExcessDecomposition dec = decompose_excess2(inst, ext.vertices, side);
      if (dec.d_part.size() <= 1) continue;
      merge_vertices(inst, dec.d_part, log);
      return applied(Rule::Excess2);
    }
  }
  return not_applicable(Rule::Excess2);
}

ReductionOutcome apply_rule(Rule rule, TermSepInstance& inst, LiftLog& log) {
  switch (rule) {
    case Rule::Terminator: return terminator(inst);
    case Rule::Boundary: return boundary(inst, log);
    case Rule::Pendant: return pendant(inst, log);
    case Rule::LonelyTerminal: return lonely_terminal(inst, log);
    case Rule::AdjacentTerminals: return adjacent_terminals(inst, log);
    case Rule::CommonNeighbor: return common_neighbor(inst, log);
    case Rule::MajorityNeighbour: return majority_neighbour(inst, log);
    case Rule::Excess1: return excess1_reduction(inst, log);
    case Rule::Excess2: return excess2_reduction(inst, log);
  }
  return not_applicable(rule);
}

ReductionOutcome reduce_exhaustively(TermSepInstance& inst, ReductionContext& ctx, Rule last) {
  LiftLog scratch;
  LiftLog& log = ctx.log ? *ctx.log : scratch;
  normalize(inst);
  while (true) {
    bool progressed = false;
    for (Rule rule : kAllRules) {
      const int v0 = static_cast<int>(inst.graph.num_vertices());
      const int p0 = static_cast<int>(inst.pairs.size());
      const int c0 = inst.cost2();
      const int k0 = inst.k;
      ReductionOutcome out = apply_rule(rule, inst, log);
      if (out.terminal()) return out;
      if (out.applied()) {
        normalize(inst);
        if (ctx.counts) ++(*ctx.counts)[static_cast<std::size_t>(rule)];
        if (ctx.trace) {
          ctx.trace(RuleEvent{rule, k0 - inst.k, v0 - static_cast<int>(inst.graph.num_vertices()),
                              p0 - static_cast<int>(inst.pairs.size()), inst.cost2() - c0});
        }
        progressed = true;
        break;
      }
      if (rule == last) break;
    }
    if (!progressed) return not_applicable(last);
  }
}

}  // namespace edgebip
