// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "brute.hpp"
#include "edgebip/branching.hpp"
#include "edgebip/generators.hpp"
#include "edgebip/pipeline.hpp"
#include "edgebip/reductions.hpp"

using namespace edgebip;

namespace {

EngineStats g_corpus;  // every engine run of the acceptance corpus

struct Outcome {
  int id = 0;
  bool ok = false;
  std::string what, detail;
};
std::vector<Outcome> g_outcomes;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  g_outcomes.push_back({id, ok, what, detail});
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void end_to_end() {
  Rng rng(20240601);
  int graphs = 0, runs = 0, bad_feasibility = 0, bad_witness = 0;
  for (; graphs < 1000; ++graphs) {
    int n = uniform(rng, 1, 12);
    int m = n < 2 ? 0 : uniform(rng, 0, 30);
    MultiGraph g = random_multigraph(rng, n, m);
    const int opt = brute::min_bipartization(g);
    for (int k = 0; k <= 6; ++k) {
      SolveStats stats;
      auto sol = solve_edge_bipartization(g, k, {}, &stats);
      g_corpus.add(stats.engine);
      ++runs;
      if (sol.has_value() != (opt <= k)) ++bad_feasibility;
      if (sol && (static_cast<int>(sol->edges.size()) > k || !brute::bipartite_after(g, sol->edges))) {
        ++bad_witness;
      }
    }
  }
  std::ostringstream d;
  d << graphs << " graphs, " << runs << " solves, feasibility mismatches=" << bad_feasibility
    << ", uncertified witnesses=" << bad_witness;
  report(1, bad_feasibility == 0 && bad_witness == 0, "end-to-end agreement with exhaustive search",
         d.str());
}

// Seed plus v on side s, dragging a terminal's partner to the other side.
Separation step(const TermSepInstance& inst, const Separation& base, VertexId v, Side s) {
  Separation out = base;
  out.assign(v, s);
  VertexId w = inst.partner(v);
  if (w != kNoVertex) out.assign(w, opposite(s));
  return out;
}

void relaxation() {
  Rng rng(777);
  int instances = 0, bad_min = 0, bad_persist = 0, bad_max = 0, bad_extend = 0, probes = 0;
  while (instances < 500) {
    TermSepShape shape;
    shape.pairs = uniform(rng, 1, 3);
    shape.n = uniform(rng, 2, 10 - 2 * shape.pairs);
    shape.m = uniform(rng, shape.n - 1, 2 * shape.n + 2);
    shape.seeded = uniform(rng, 0, 2);
    TermSepInstance inst = random_termsep(rng, shape);
    ++instances;
    Separation mce = min_cost_extension(inst, inst.seed);
    if (!mce.extends(inst.seed, inst.graph)) ++bad_extend;
    const int c2 = brute::cost2_of(inst.graph, mce);
    if (c2 != brute::relaxed_optimum2(inst, inst.seed)) ++bad_min;
    if (brute::termsep_optimum(inst, mce) != brute::termsep_optimum(inst)) ++bad_persist;
    for (VertexId v : inst.graph.vertices()) {
      if (mce.assigned(v)) continue;
      for (Side s : {Side::A, Side::B}) {
        ++probes;
        if (brute::relaxed_optimum2(inst, step(inst, mce, v, s)) <= c2) ++bad_max;
      }
    }
  }
  std::ostringstream d;
  d << instances << " instances, " << probes << " probes; not extending=" << bad_extend
    << ", above minimum=" << bad_min << ", outside every optimum=" << bad_persist
    << ", not maximal=" << bad_max;
  report(2, bad_min + bad_persist + bad_max + bad_extend == 0,
         "minimum-cost extension is minimal, persistent and maximal", d.str());
}

void rules() {
  Rng rng(99);
  std::ostringstream d;
  bool ok = true;
  for (Rule rule : kAllRules) {
    int found = 0, bad = 0, misses = 0;
    while (found < 200 && misses < 20) {
      TermSepInstance inst;
      if (!instance_for_rule(rng, rule, inst)) {
        ++misses;
        continue;
      }
      ++found;
      const int before = brute::termsep_optimum(inst);
      TermSepInstance after = inst;
      LiftLog log;
      ReductionOutcome out = apply_rule(rule, after, log);
      switch (out.kind) {
        case ReductionOutcome::Kind::Applied:
          if (before != brute::termsep_optimum(after) + out.dk) ++bad;
          break;
        case ReductionOutcome::Kind::NoSolution:
          if (before <= inst.k) ++bad;
          break;
        case ReductionOutcome::Kind::Solved:
          if (before > inst.k) ++bad;
          break;
        case ReductionOutcome::Kind::NotApplicable:
          ++bad;
          break;
      }
    }
    ok = ok && found == 200 && bad == 0;
    d << rule_name(rule) << ":" << found << "/" << bad << " ";
  }
  d << "(fired/mismatches)";
  report(3, ok, "each reduction rule preserves the optimum up to its budget change", d.str());
}

void identities() {
  Rng rng(4242);
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    int n = uniform(rng, 2, 12);
    MultiGraph g = random_multigraph(rng, n, uniform(rng, 0, 30));
    std::vector<VertexId> a, b, cap, cup, amb, bma, rest;
    for (VertexId v : g.vertices()) {
      bool in_a = uniform(rng, 0, 1), in_b = uniform(rng, 0, 1);
      if (in_a) a.push_back(v);
      if (in_b) b.push_back(v);
      if (in_a && in_b) cap.push_back(v);
      if (in_a || in_b) cup.push_back(v);
      if (in_a && !in_b) amb.push_back(v);
      if (in_b && !in_a) bma.push_back(v);
      if (!in_a && !in_b) rest.push_back(v);
    }
    auto d = [&](const std::vector<VertexId>& x) { return static_cast<long>(g.cut_size(x)); };
    long lhs = d(a) + d(b);
    long e1 = static_cast<long>(g.edges_between(amb, bma));
    long e2 = static_cast<long>(g.edges_between(cap, rest));
    if (lhs != d(cap) + d(cup) + 2 * e1) ++bad;
    if (lhs != d(amb) + d(bma) + 2 * e2) ++bad;
    // Library counts against direct counting.
    if (d(a) != brute::boundary(g, a) || e1 != brute::between(g, amb, bma)) ++bad;
  }
  report(4, bad == 0, "submodularity and posimodularity identities with error terms",
         "10000 pairs, violations=" + std::to_string(bad));
}

void vectors() {
  const std::vector<BranchingVector> good = {
      BranchingVector::of(1, 1, 0, 2, 1, 0), BranchingVector::of(1, 1, 1, 1, 2, 3),
      BranchingVector::of(1, 2, 0, 1, 3, 1), BranchingVector::of(1, 1, 0, 1, 4, 3),
      BranchingVector::of(1, 1, 2, 1, 2, 2), BranchingVector::of(1, 1, 1, 1, 3, 2),
      BranchingVector::of(1, 3, 0, 1, 3, 0), BranchingVector::of(1, 1, 0, 1, 5, 2),
      BranchingVector::of(1, 2, 1, 1, 2, 2), BranchingVector::of(1, 1, 1, 1, 4, 1)};
  std::ostringstream d;
  bool ok = true;
  double min_margin = 1;
  for (const auto& v : good) {
    double margin = 1 - vector_sum(v);
    min_margin = std::min(min_margin, margin);
    ok = ok && is_good_vector(v) && margin >= 1e-4;
  }
  const auto bad1 = BranchingVector::of(1, 1, 0, 1, 1, 0);
  const auto bad2 = BranchingVector::of(0, 1, 0, 0, 1, 0);
  ok = ok && !is_good_vector(bad1) && !is_good_vector(bad2);
  double s1 = vector_sum(good[0]), s2 = vector_sum(good[1]);
  ok = ok && s1 > 0.999 && s1 < 1.0 && s2 > 0.999 && s2 < 1.0;
  d.precision(9);
  d << "min margin=" << min_margin << ", tight sums=" << s1 << "," << s2
    << ", [1,1,0;1,1,0] sum=" << vector_sum(bad1);
  report(5, ok, "branching vector table", d.str());
}

void baseline() {
  Rng rng(31337);
  int instances = 0, bad = 0;
  while (instances < 300) {
    TermSepShape shape;
    shape.pairs = uniform(rng, 1, 10);
    shape.n = uniform(rng, 4, 14);
    shape.m = uniform(rng, shape.n, 2 * shape.n + 4);
    shape.seeded = uniform(rng, 0, 2);
    TermSepInstance inst = instances % 2 ? random_termsep(rng, shape)
                                         : compression_termsep(rng, shape.n + 2, shape.m,
                                                               uniform(rng, 1, 9));
    if (inst.unresolved_count() > 10) continue;
    ++instances;
    EngineStats stats;
    int ours = termsep_optimum(inst, Engine::Branching, &stats);
    g_corpus.add(stats);
    if (ours != termsep_optimum(inst, Engine::Guo)) ++bad;
  }
  report(7, bad == 0, "branching engine matches the orientation baseline",
         std::to_string(instances) + " instances, mismatches=" + std::to_string(bad));
}

void growth() {
  std::vector<std::pair<int, double>> points;
  std::ostringstream d;
  const int samples = 6;
  int infeasible = 0;
  for (int k = 2; k <= 10; ++k) {
    double sum = 0;
    for (int s = 0; s < samples; ++s) {
      MultiGraph g = planted_instance(static_cast<std::uint64_t>(1000 * k + s), 30, k);
      SolveStats stats;
      auto sol = solve_edge_bipartization(g, k, {}, &stats);
      g_corpus.add(stats.engine);
      if (!sol) ++infeasible;
      sum += static_cast<double>(stats.engine.leaves);
    }
    double mean = sum / samples;
    points.emplace_back(k, std::max(1.0, mean));
    d << k << ":" << mean << " ";
  }
  double base = fit_growth_base(points);
  d << "fitted base=" << base << ", infeasible planted=" << infeasible;
  report(8, base <= 2.0 && infeasible == 0, "planted leaf counts grow with base at most 2", d.str());
}

void assertions() {
  std::ostringstream d;
  d << "nodes=" << g_corpus.nodes << ", branches=" << g_corpus.branches
    << ", dominance violations=" << g_corpus.dominance_violations << ", case00=" << g_corpus.case00
    << ", exhaustions=" << g_corpus.exhaustions
    << ", invariant violations=" << g_corpus.invariant_violations << "; steps";
  for (std::size_t i = 0; i < kCaseTagCount; ++i) {
    if (g_corpus.steps[i]) d << " " << case_name(static_cast<CaseTag>(i)) << "=" << g_corpus.steps[i];
  }
  report(6, g_corpus.assertion_failures() == 0, "runtime branch assertions over the corpus",
         d.str());
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  end_to_end();
  relaxation();
  rules();
  identities();
  vectors();
  baseline();
  growth();
  assertions();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::sort(g_outcomes.begin(), g_outcomes.end(),
            [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
  int failed = 0;
  for (const auto& o : g_outcomes) {
    std::printf("%s criterion %d: %s (%s)\n", o.ok ? "PASS" : "FAIL", o.id, o.what.c_str(),
                o.detail.c_str());
    failed += !o.ok;
  }
  std::printf("acceptance: %d failing criteria, %.1f s\n", failed, secs);
  return failed ? 1 : 0;
}
