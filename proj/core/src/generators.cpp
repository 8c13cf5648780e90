#include "edgebip/generators.hpp"

#include <algorithm>
#include <cmath>

#include "edgebip/pipeline.hpp"

namespace edgebip {
namespace {

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

MultiGraph random_multigraph(Rng& rng, int n, int m) {
  MultiGraph g(static_cast<std::size_t>(n));
  if (n < 2) return g;
  for (int i = 0; i < m; ++i) {
    VertexId u = static_cast<VertexId>(uniform(rng, 0, n - 1));
    VertexId v = static_cast<VertexId>(uniform(rng, 0, n - 2));
    if (v >= u) ++v;
    g.add_edge(u, v);
  }
  return g;
}

MultiGraph planted_instance(std::uint64_t seed, int n, int j, double p) {
  Rng rng(seed);
  MultiGraph g(static_cast<std::size_t>(n));
  std::vector<int> part(static_cast<std::size_t>(n));
  for (int& x : part) x = uniform(rng, 0, 1);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<VertexId, VertexId>> same;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (part[u] != part[v]) {
        if (coin(rng)) g.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
      } else {
        same.emplace_back(u, v);
      }
    }
  }
  std::shuffle(same.begin(), same.end(), rng);
  for (int i = 0; i < j && !same.empty(); ++i) {
    auto [u, v] = same[static_cast<std::size_t>(i) % same.size()];
    g.add_edge(u, v);
  }
  return g;
}

TermSepInstance random_termsep(Rng& rng, const TermSepShape& shape) {
  TermSepInstance inst;
  inst.graph = random_multigraph(rng, shape.n, shape.m);
  const int n = shape.n;
  std::vector<VertexId> terminals;
  for (int i = 0; i < 2 * shape.pairs; ++i) terminals.push_back(inst.graph.add_vertex());
  for (int i = 0; i < shape.pairs; ++i) inst.add_pair(terminals[2 * i], terminals[2 * i + 1]);
  int lonely = std::min(shape.isolated, 2 * shape.pairs);
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    if (static_cast<int>(i) < lonely || n == 0) continue;
    inst.graph.add_edge(terminals[i], static_cast<VertexId>(uniform(rng, 0, n - 1)));
  }
  inst.seed = Separation(inst.graph.id_bound());
  std::vector<VertexId> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = static_cast<VertexId>(i);
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 0; i < std::min(shape.seeded, n); ++i) {
    inst.seed.assign(order[static_cast<std::size_t>(i)], uniform(rng, 0, 1) ? Side::A : Side::B);
  }
  inst.k = uniform(rng, 0, std::max(1, shape.m / 3));
  return inst;
}

TermSepInstance compression_termsep(Rng& rng, int n, int m, int k) {
  MultiGraph g;
  std::vector<EdgeId> z;
  for (int attempt = 0; attempt < 200; ++attempt) {
    g = random_multigraph(rng, n, m);
    z = minimize_deletion_set(g, monochromatic_edges(g));
    if (!z.empty() && static_cast<int>(z.size()) <= k + 1) break;
  }
  return reduce_to_termsep(g, std::max(0, static_cast<int>(z.size()) - 1), z).instance;
}

bool instance_for_rule(Rng& rng, Rule rule, TermSepInstance& out, int attempts) {
  const auto idx = static_cast<std::size_t>(rule);
  for (int a = 0; a < attempts; ++a) {
    TermSepShape shape;
    shape.n = uniform(rng, 3, 8);
    shape.m = uniform(rng, shape.n - 1, 2 * shape.n);
    shape.pairs = uniform(rng, 1, 3);
    shape.seeded = uniform(rng, 0, 3);
    shape.isolated = rule == Rule::LonelyTerminal ? uniform(rng, 0, 1) : 0;
    TermSepInstance inst = random_termsep(rng, shape);
    if (rule == Rule::Terminator) {
      normalize(inst);
      inst.k = (inst.cost2() + 1) / 2 + uniform(rng, -1, 1);
      if (terminator(inst).kind != ReductionOutcome::Kind::NotApplicable) {
        out = std::move(inst);
        return true;
      }
      continue;
    }
    normalize(inst);
    inst.k = (inst.cost2() + 1) / 2 + uniform(rng, 0, 3);
    ReductionContext ctx;
    ReductionOutcome pre = reduce_exhaustively(inst, ctx, kAllRules[idx - 1]);
    if (pre.terminal() || inst.unresolved_count() == 0) continue;
    TermSepInstance probe = inst;
    LiftLog log;
    if (apply_rule(rule, probe, log).kind == ReductionOutcome::Kind::NotApplicable) continue;
    out = std::move(inst);
    return true;
  }
  return false;
}

double fit_growth_base(std::span<const std::pair<int, double>> points) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [k, c] : points) {
    if (c <= 0) continue;
    double y = std::log(c);
    n += 1;
    sx += k;
    sy += y;
    sxx += double(k) * k;
    sxy += k * y;
  }
  double den = n * sxx - sx * sx;
  if (n < 2 || den <= 0) return 0;
  return std::exp((n * sxy - sx * sy) / den);
}

}  // namespace edgebip
