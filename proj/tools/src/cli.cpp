#include "edgebip_cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "edgebip/generators.hpp"
#include "edgebip/graph_io.hpp"
#include "edgebip/oracle.hpp"
#include "edgebip/pipeline.hpp"

namespace edgebip::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct RunConfig {
  std::string input;
  std::string out;
  int k = -1;
  std::string engine = "branching";
  std::uint64_t seed = 1;
  bool trace = false;
  bool no_timing = false;

  // generate
  int n = 20;
  int j = 2;
  double p = 0.3;

  // bench
  std::string family;
  int k_min = 2, k_max = 8, samples = 5;
};

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Writes to --out when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw InputError("cannot write " + path);
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void print_trace(std::ostream& out, const TraceRecord& r) {
  out << "trace node=" << r.node << " tag=" << case_name(r.tag)
      << " mirrored=" << (r.mirrored ? 1 : 0);
  if (r.claimed) out << " claimed=" << r.claimed->str();
  out << " realized=";
  for (std::size_t i = 0; i < r.realized.size(); ++i) {
    const auto& x = r.realized[i];
    out << (i ? ";" : "") << x[0] << ',' << x[1] << ',' << x[2];
  }
  out << " mu=" << std::fixed << std::setprecision(5) << r.mu_before;
  for (double m : r.mu_after) out << ',' << m;
  out << std::defaultfloat;
  if (!r.detail.empty()) out << " detail=" << r.detail;
  out << '\n';
}

void copy_stats(ResultRecord& rec, const EngineStats& s) {
  rec.nodes = s.nodes;
  rec.leaves = s.leaves;
  rec.rules = s.rules;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  MultiGraph g = read_graph_file(cfg.input);
  Sink sink(cfg.out, out);
  SolveOptions options;
  options.engine = parse_engine(cfg.engine);
  if (cfg.trace) options.branching.trace = [&](const TraceRecord& r) { print_trace(sink.get(), r); };
  SolveStats stats;
  ResultRecord rec;
  auto start = Clock::now();
  if (cfg.k >= 0) {
    rec.k = cfg.k;
    if (auto sol = solve_edge_bipartization(g, cfg.k, options, &stats)) {
      rec.feasible = true;
      rec.solution = sol->edges;
    }
  } else {
    auto [k, sol] = optimum_bipartization(g, options, &stats);
    rec.feasible = true;
    rec.k = k;
    rec.solution = sol.edges;
  }
  rec.wall_ms = elapsed_ms(start);
  copy_stats(rec, stats.engine);
  // Edge ids of a freshly read graph are file positions.
  write_record(sink.get(), rec, !cfg.no_timing);
  return rec.feasible ? kExitFeasible : kExitInfeasible;
}

int cmd_termsep(const RunConfig& cfg, std::ostream& out) {
  ParsedTermSep parsed = read_termsep_file(cfg.input);
  TermSepInstance inst = std::move(parsed.instance);
  if (cfg.k >= 0) {
    inst.k = cfg.k;
  } else if (parsed.k) {
    inst.k = *parsed.k;
  } else {
    throw InputError("termsep: no budget (use --k or a 'k' line)");
  }
  inst.validate();
  Sink sink(cfg.out, out);
  ResultRecord rec;
  rec.k = inst.k;
  std::optional<Separation> sep;
  auto start = Clock::now();
  switch (parse_engine(cfg.engine)) {
    case Engine::Branching: {
      EngineOptions opts;
      if (cfg.trace) opts.trace = [&](const TraceRecord& r) { print_trace(sink.get(), r); };
      BranchingEngine engine(opts);
      sep = engine.solve(inst);
      copy_stats(rec, engine.stats());
      break;
    }
    case Engine::Guo:
      sep = baseline_guo(inst);
      break;
    case Engine::Oracle: {
      TermSepOptimum opt = oracle_termsep(inst);
      if (opt.cost <= inst.k) sep = opt.separation;
      break;
    }
  }
  rec.wall_ms = elapsed_ms(start);
  if (sep) {
    rec.feasible = true;
    for (EdgeId e : inst.graph.edge_ids()) {
      const Edge& ed = inst.graph.edge(e);
      if (sep->side(ed.u) != sep->side(ed.v)) rec.solution.push_back(ed.provenance.origin);
    }
    std::sort(rec.solution.begin(), rec.solution.end());
  }
  write_record(sink.get(), rec, !cfg.no_timing);
  if (sep) {
    sink.get() << "a_side=";
    bool first = true;
    for (VertexId v : inst.graph.vertices()) {
      if (sep->side(v) != Side::A) continue;
      sink.get() << (first ? "" : ",") << v + 1;
      first = false;
    }
    sink.get() << '\n';
  }
  return sep ? kExitFeasible : kExitInfeasible;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 1 || cfg.j < 0) throw InputError("generate: need n >= 1 and j >= 0");
  MultiGraph g = planted_instance(cfg.seed, cfg.n, cfg.j, cfg.p);
  Sink sink(cfg.out, out);
  sink.get() << "c planted seed=" << cfg.seed << " n=" << cfg.n << " j=" << cfg.j << '\n';
  write_graph(sink.get(), g);
  return kExitFeasible;
}

std::vector<fs::path> instance_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension();
    if (ext == ".graph" || ext == ".termsep") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

void report_fit(std::ostream& out, const std::map<int, std::vector<double>>& by_k) {
  std::vector<std::pair<int, double>> points;
  out << "k\tinstances\tmean_leaves\n";
  for (const auto& [k, v] : by_k) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    points.emplace_back(k, std::max(1.0, mean));
    out << k << '\t' << v.size() << '\t' << mean << '\n';
  }
  out << "fitted_base=" << fit_growth_base(points) << '\n';
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.out, out);
  std::ostream& o = sink.get();
  SolveOptions options;
  options.engine = parse_engine(cfg.engine);
  std::map<int, std::vector<double>> by_k;
  auto run = [&](const std::string& name, const MultiGraph& g, int k) {
    SolveStats stats;
    auto start = Clock::now();
    auto sol = solve_edge_bipartization(g, k, options, &stats);
    o << name << "\tk=" << k << "\tfeasible=" << (sol ? 1 : 0) << "\tnodes=" << stats.engine.nodes
      << "\tleaves=" << stats.engine.leaves;
    if (!cfg.no_timing) o << "\twall_ms=" << elapsed_ms(start);
    o << '\n';
    by_k[k].push_back(static_cast<double>(stats.engine.leaves));
  };
  if (!cfg.family.empty()) {
    if (cfg.family != "planted") throw InputError("bench: unknown family '" + cfg.family + "'");
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
      for (int s = 0; s < cfg.samples; ++s) {
        std::uint64_t seed = cfg.seed * 1000003ULL + static_cast<std::uint64_t>(k * 101 + s);
        run("planted:" + std::to_string(seed), planted_instance(seed, cfg.n, k, cfg.p), k);
      }
    }
  } else {
    for (const fs::path& file : instance_files(cfg.input)) {
      if (file.extension() != ".graph") continue;
      MultiGraph g = read_graph_file(file.string());
      int k = cfg.k;
      if (k < 0) {
        try {
          k = oracle_min_bipartization(g).size;
        } catch (const InputError&) {
          o << "skip " << file.filename().string() << ": no --k and oracle guard exceeded\n";
          continue;
        }
      }
      run(file.filename().string(), g, k);
    }
  }
  if (!by_k.empty()) report_fit(o, by_k);
  return kExitFeasible;
}

// Returns an empty string on agreement, else a description of the mismatch.
std::string verify_graph(const MultiGraph& g) {
  const int opt = oracle_min_bipartization(g).size;
  SolveStats stats;
  auto sol = solve_edge_bipartization(g, opt, {}, &stats);
  if (!sol) return "infeasible at oracle optimum " + std::to_string(opt);
  if (static_cast<int>(sol->edges.size()) > opt || !two_coloring(g, sol->edges)) {
    return "witness does not certify";
  }
  if (opt > 0 && solve_edge_bipartization(g, opt - 1, {}, &stats)) {
    return "feasible below oracle optimum " + std::to_string(opt);
  }
  if (stats.engine.assertion_failures() > 0) return "engine assertion failures";
  return "";
}

std::string verify_termsep(const TermSepInstance& inst) {
  const int want = oracle_termsep(inst).cost;
  EngineStats stats;
  const int got = termsep_optimum(inst, Engine::Branching, &stats);
  if (got != want) {
    return "branching optimum " + std::to_string(got) + " vs oracle " + std::to_string(want);
  }
  if (stats.assertion_failures() > 0) return "engine assertion failures";
  return "";
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  Sink sink(cfg.out, out);
  std::ostream& o = sink.get();
  int checked = 0, skipped = 0, failed = 0;
  for (const fs::path& file : instance_files(cfg.input)) {
    const std::string name = file.filename().string();
    std::string problem;
    try {
      if (file.extension() == ".graph") {
        problem = verify_graph(read_graph_file(file.string()));
      } else {
        ParsedTermSep parsed = read_termsep_file(file.string());
        parsed.instance.validate();
        problem = verify_termsep(parsed.instance);
      }
    } catch (const InputError& e) {
      o << "skip " << name << ": " << e.what() << '\n';
      ++skipped;
      continue;
    }
    ++checked;
    if (problem.empty()) {
      o << "ok " << name << '\n';
    } else {
      o << "mismatch " << name << ": " << problem << '\n';
      ++failed;
    }
  }
  o << "checked=" << checked << " skipped=" << skipped << " mismatches=" << failed << '\n';
  return failed ? 1 : 0;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact edge bipartization solver"};
  app.require_subcommand(1);

  auto engine_opt = [&](CLI::App* sub) {
    sub->add_option("--engine", cfg.engine, "branching | guo | oracle")
        ->check(CLI::IsMember({"branching", "guo", "oracle"}));
  };

  auto* solve = app.add_subcommand("solve", "Edge bipartization on a graph file");
  solve->add_option("--input", cfg.input, "Graph file")->required();
  solve->add_option("--k", cfg.k, "Budget; omitted means search for the optimum")
      ->check(CLI::NonNegativeNumber);
  engine_opt(solve);
  solve->add_flag("--trace", cfg.trace, "Emit one trace line per branching node");
  solve->add_option("--out", cfg.out, "Output file");
  solve->add_flag("--no-timing", cfg.no_timing, "Omit wall time");

  auto* termsep = app.add_subcommand("termsep", "Terminal separation on a termsep file");
  termsep->add_option("--input", cfg.input, "TermSep file")->required();
  termsep->add_option("--k", cfg.k, "Budget; overrides the file")->check(CLI::NonNegativeNumber);
  engine_opt(termsep);
  termsep->add_flag("--trace", cfg.trace, "Emit one trace line per branching node");
  termsep->add_option("--out", cfg.out, "Output file");
  termsep->add_flag("--no-timing", cfg.no_timing, "Omit wall time");

  auto* generate = app.add_subcommand("generate", "Planted instance");
  generate->add_option("--seed", cfg.seed, "Random seed");
  generate->add_option("--n", cfg.n, "Vertices")->check(CLI::PositiveNumber);
  generate->add_option("--j", cfg.j, "Edges inside parts")->check(CLI::NonNegativeNumber);
  generate->add_option("--p", cfg.p, "Cross edge probability")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--out", cfg.out, "Output file");

  auto* bench = app.add_subcommand("bench", "Leaf counts and fitted growth base");
  auto* bench_in = bench->add_option("--input", cfg.input, "Directory of .graph files");
  bench->add_option("--family", cfg.family, "Generated family: planted")->excludes(bench_in);
  bench->add_option("--k", cfg.k, "Budget for directory instances (default: oracle optimum)");
  bench->add_option("--k-min", cfg.k_min, "Smallest planted j")->check(CLI::NonNegativeNumber);
  bench->add_option("--k-max", cfg.k_max, "Largest planted j")->check(CLI::NonNegativeNumber);
  bench->add_option("--samples", cfg.samples, "Instances per j")->check(CLI::PositiveNumber);
  bench->add_option("--n", cfg.n, "Vertices per planted instance")->check(CLI::PositiveNumber);
  bench->add_option("--p", cfg.p, "Cross edge probability")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--seed", cfg.seed, "Base seed");
  engine_opt(bench);
  bench->add_option("--out", cfg.out, "Output file");
  bench->add_flag("--no-timing", cfg.no_timing, "Omit wall time");

  auto* verify = app.add_subcommand("verify", "Compare solver and oracles on a directory");
  verify->add_option("--input", cfg.input, "Directory of .graph / .termsep files")->required();
  verify->add_option("--out", cfg.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    if (*solve) return cmd_solve(cfg, out);
    if (*termsep) return cmd_termsep(cfg, out);
    if (*generate) return cmd_generate(cfg, out);
    if (*bench) {
      if (cfg.input.empty() && cfg.family.empty()) throw InputError("bench: need --input or --family");
      return cmd_bench(cfg, out);
    }
    if (*verify) return cmd_verify(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace edgebip::cli
