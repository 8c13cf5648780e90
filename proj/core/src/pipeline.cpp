#include "edgebip/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>

#include "edgebip/flow.hpp"

namespace edgebip {

Engine parse_engine(const std::string& name) {
  if (name == "branching") return Engine::Branching;
  if (name == "guo") return Engine::Guo;
  if (name == "oracle") return Engine::Oracle;
  throw InputError("unknown engine '" + name + "'");
}

const char* engine_name(Engine engine) {
  switch (engine) {
    case Engine::Branching: return "branching";
    case Engine::Guo: return "guo";
    case Engine::Oracle: return "oracle";
  }
  return "?";
}

std::vector<EdgeId> monochromatic_edges(const MultiGraph& g) {
  std::vector<std::int8_t> colour(g.id_bound(), -1);
  for (VertexId root : g.vertices()) {
    if (colour[root] >= 0) continue;
    colour[root] = 0;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      for (EdgeId e : g.incident(u)) {
        VertexId w = g.other_end(e, u);
        if (colour[w] < 0) {
          colour[w] = static_cast<std::int8_t>(1 - colour[u]);
          queue.push_back(w);
        }
      }
    }
  }
  std::vector<EdgeId> out;
  for (EdgeId e : g.edge_ids()) {
    const Edge& ed = g.edge(e);
    if (colour[ed.u] == colour[ed.v]) out.push_back(e);
  }
  return out;
}

std::vector<EdgeId> minimize_deletion_set(const MultiGraph& g, std::vector<EdgeId> x) {
  if (!two_coloring(g, x)) throw InputError("minimize_deletion_set: g - x is not bipartite");
  for (std::size_t i = x.size(); i-- > 0;) {
    std::vector<EdgeId> trial = x;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (two_coloring(g, trial)) x = std::move(trial);
  }
  return x;
}

TermSepReduction reduce_to_termsep(const MultiGraph& g, int k,
                                   std::span<const EdgeId> x_prime) {
  if (!two_coloring(g, x_prime)) throw InputError("reduce_to_termsep: g - X' is not bipartite");
  std::set<EdgeId> removed(x_prime.begin(), x_prime.end());
  if (removed.size() != x_prime.size()) throw InputError("reduce_to_termsep: repeated edge");
  for (std::size_t i = 0; i < x_prime.size(); ++i) {
    std::vector<EdgeId> rest(x_prime.begin(), x_prime.end());
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (two_coloring(g, rest)) throw InputError("reduce_to_termsep: deletion set is not minimal");
  }
  TermSepReduction red;
  TermSepInstance& inst = red.instance;
  inst.graph = MultiGraph(g.id_bound());
  for (VertexId v = 0; v < g.id_bound(); ++v) {
    if (!g.has_vertex(v)) inst.graph.delete_vertex(v);
  }
  for (EdgeId e : g.edge_ids()) {
    if (removed.count(e)) continue;
    const Edge& ed = g.edge(e);
    inst.graph.add_edge(ed.u, ed.v, Provenance::original(e));
  }
  for (EdgeId e : x_prime) {
    if (!g.has_edge(e)) throw InputError("reduce_to_termsep: unknown edge");
    const Edge& ed = g.edge(e);
    VertexId s = inst.graph.add_vertex();
    VertexId t = inst.graph.add_vertex();
    inst.graph.add_edge(ed.u, s, {Provenance::Kind::TerminalPendant, e});
    inst.graph.add_edge(ed.v, t, {Provenance::Kind::TerminalPendant, e});
    inst.add_pair(s, t);
  }
  inst.seed = Separation(inst.graph.id_bound());
  inst.k = k;
  return red;
}

Solution lift_solution(const TermSepInstance& inst, const Separation& sep) {
  if (!is_integral(inst.graph, sep)) throw InputError("lift_solution: separation is not integral");
  std::set<EdgeId> out;
  for (EdgeId e : inst.graph.edge_ids()) {
    const Edge& ed = inst.graph.edge(e);
    if (sep.side(ed.u) == sep.side(ed.v)) continue;
    if (ed.provenance.kind != Provenance::Kind::Original &&
        ed.provenance.kind != Provenance::Kind::TerminalPendant) {
      throw StateError("lift_solution: cut edge without an origin");
    }
    out.insert(ed.provenance.origin);
  }
  return Solution{{out.begin(), out.end()}};
}

TermSepOptimum guo_optimum(const TermSepInstance& inst) {
  std::vector<TerminalPair> pairs = inst.unresolved_pairs();
  if (pairs.size() > static_cast<std::size_t>(kGuoPairLimit)) {
    throw InputError("guo baseline: too many unresolved pairs");
  }
  const MultiGraph& g = inst.graph;
  const std::vector<VertexId> a0 = inst.seed.members(g, Side::A);
  const std::vector<VertexId> b0 = inst.seed.members(g, Side::B);
  const int bound = static_cast<int>(g.num_edges());
  TermSepOptimum best;
  best.cost = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<VertexId> src = a0, snk = b0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      bool s_on_a = (mask >> i) & 1;
      src.push_back(s_on_a ? pairs[i].s : pairs[i].t);
      snk.push_back(s_on_a ? pairs[i].t : pairs[i].s);
    }
    auto cut = min_cut(g, src, snk, Extremal::Min, bound);
    if (!cut || (best.cost >= 0 && cut->value >= best.cost)) continue;
    best.cost = cut->value;
    best.separation = Separation(g.id_bound());
    for (VertexId v : g.vertices()) best.separation.assign(v, Side::B);
    for (VertexId v : cut->source_side) best.separation.assign(v, Side::A);
  }
  return best;
}

std::optional<Separation> baseline_guo(const TermSepInstance& inst) {
  TermSepOptimum opt = guo_optimum(inst);
  if (opt.cost > inst.k) return std::nullopt;
  return opt.separation;
}

int termsep_optimum(const TermSepInstance& inst, Engine engine, EngineStats* stats) {
  switch (engine) {
    case Engine::Guo: return guo_optimum(inst).cost;
    case Engine::Oracle: return oracle_termsep(inst).cost;
    case Engine::Branching: {
      BranchingEngine eng;
      auto res = eng.optimum(inst, static_cast<int>(inst.graph.num_edges()));
      if (stats) stats->add(eng.stats());
      if (!res) throw StateError("branching: no separation within the edge count");
      return res->first;
    }
  }
  return -1;
}

std::optional<Solution> compress(const MultiGraph& g, int k, std::span<const EdgeId> x_prime,
                                 const SolveOptions& options, SolveStats* stats) {
  std::vector<EdgeId> minimal =
      minimize_deletion_set(g, std::vector<EdgeId>(x_prime.begin(), x_prime.end()));
  if (static_cast<int>(minimal.size()) <= k) {
    std::sort(minimal.begin(), minimal.end());
    return Solution{minimal};
  }
  TermSepReduction red = reduce_to_termsep(g, k, minimal);
  const TermSepInstance& inst = red.instance;
  if (stats) ++stats->compressions;
  std::optional<Separation> sep;
  switch (options.engine) {
    case Engine::Branching: {
      BranchingEngine engine(options.branching);
      sep = engine.solve(inst);
      if (stats) stats->engine.add(engine.stats());
      break;
    }
    case Engine::Guo:
      sep = baseline_guo(inst);
      break;
    case Engine::Oracle: {
      TermSepOptimum opt = oracle_termsep(inst);
      if (opt.cost <= k) sep = opt.separation;
      break;
    }
  }
  if (!sep) return std::nullopt;
  Solution sol = lift_solution(inst, *sep);
  if (static_cast<int>(sol.edges.size()) > k || !two_coloring(g, sol.edges)) {
    throw StateError("compress: lifted solution failed certification");
  }
  return sol;
}

std::optional<Solution> solve_edge_bipartization(const MultiGraph& g, int k,
                                                 const SolveOptions& options, SolveStats* stats) {
  if (k < 0) return std::nullopt;
  std::vector<EdgeId> z = monochromatic_edges(g);
  std::set<EdgeId> in_z(z.begin(), z.end());

  // Current graph G_i, with provenance recording the edge of g.
  MultiGraph cur(g.id_bound());
  for (VertexId v = 0; v < g.id_bound(); ++v) {
    if (!g.has_vertex(v)) cur.delete_vertex(v);
  }
  std::vector<EdgeId> local_of(g.edge_id_bound(), 0);
  for (EdgeId e : g.edge_ids()) {
    if (in_z.count(e)) continue;
    local_of[e] = cur.add_edge(g.edge(e).u, g.edge(e).v, Provenance::original(e));
  }
  std::vector<EdgeId> x;  // ids of g
  for (EdgeId e : z) {
    local_of[e] = cur.add_edge(g.edge(e).u, g.edge(e).v, Provenance::original(e));
    x.push_back(e);
    if (static_cast<int>(x.size()) <= k) continue;
    std::vector<EdgeId> local;
    for (EdgeId f : x) local.push_back(local_of[f]);
    auto sol = compress(cur, k, local, options, stats);
    if (!sol) return std::nullopt;
    x.clear();
    for (EdgeId f : sol->edges) x.push_back(cur.edge(f).provenance.origin);
  }
  std::sort(x.begin(), x.end());
  if (!two_coloring(g, x)) throw StateError("solve: final solution failed certification");
  return Solution{x};
}

std::pair<int, Solution> optimum_bipartization(const MultiGraph& g, const SolveOptions& options,
                                               SolveStats* stats) {
  for (int k = 0;; ++k) {
    if (auto sol = solve_edge_bipartization(g, k, options, stats)) return {k, *sol};
  }
}

void write_record(std::ostream& out, const ResultRecord& rec, bool with_timing) {
  out << "feasible=" << (rec.feasible ? "true" : "false") << '\n';
  out << "k=" << rec.k << '\n';
  out << "solution=";
  for (std::size_t i = 0; i < rec.solution.size(); ++i) {
    out << (i ? "," : "") << rec.solution[i] + 1;
  }
  out << '\n';
  out << "nodes=" << rec.nodes << '\n';
  out << "leaves=" << rec.leaves << '\n';
  out << "rules=";
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    out << (i ? "," : "") << rule_name(kAllRules[i]) << ':' << rec.rules[i];
  }
  out << '\n';
  if (with_timing) out << "wall_ms=" << rec.wall_ms << '\n';
}

}  // namespace edgebip
