#include "edgebip/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace edgebip {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

long parse_int(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(token, &used);
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) fail(line, "expected an integer, got '" + token + "'");
  return value;
}

struct Reader {
  bool allow_termsep = false;
  MultiGraph graph;
  bool have_header = false;
  long declared_edges = 0;
  long seen_edges = 0;
  std::vector<std::pair<long, long>> pairs;
  std::vector<std::pair<long, Side>> seeds;
  std::optional<int> k;

  VertexId vertex(const std::string& token, std::size_t line) {
    if (!have_header) fail(line, "vertex reference before the 'p edge' header");
    long v = parse_int(token, line);
    if (v < 1 || v > static_cast<long>(graph.id_bound())) {
      fail(line, "vertex " + token + " out of range");
    }
    return static_cast<VertexId>(v - 1);
  }

  void consume(std::istream& in) {
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
      ++line;
      std::istringstream fields(text);
      std::vector<std::string> tok;
      for (std::string t; fields >> t;) tok.push_back(t);
      if (tok.empty() || tok[0] == "c") continue;
      const std::string& kind = tok[0];
      if (kind == "p") {
        if (have_header) fail(line, "duplicate header");
        if (tok.size() != 4 || tok[1] != "edge") fail(line, "expected 'p edge <n> <m>'");
        long n = parse_int(tok[2], line);
        declared_edges = parse_int(tok[3], line);
        if (n < 0 || declared_edges < 0) fail(line, "negative size in header");
        graph = MultiGraph(static_cast<std::size_t>(n));
        have_header = true;
      } else if (kind == "e") {
        if (tok.size() != 3) fail(line, "expected 'e <u> <v>'");
        VertexId u = vertex(tok[1], line), v = vertex(tok[2], line);
        if (u == v) fail(line, "loop edge");
        graph.add_edge(u, v, Provenance::original(static_cast<std::uint32_t>(seen_edges)));
        ++seen_edges;
      } else if (allow_termsep && kind == "t") {
        if (tok.size() != 3) fail(line, "expected 't <s> <t>'");
        pairs.emplace_back(vertex(tok[1], line), vertex(tok[2], line));
      } else if (allow_termsep && (kind == "a" || kind == "b")) {
        if (tok.size() != 2) fail(line, "expected '" + kind + " <v>'");
        seeds.emplace_back(vertex(tok[1], line), kind == "a" ? Side::A : Side::B);
      } else if (allow_termsep && kind == "k") {
        if (tok.size() != 2) fail(line, "expected 'k <int>'");
        k = static_cast<int>(parse_int(tok[1], line));
      } else {
        fail(line, "unknown line type '" + kind + "'");
      }
    }
    if (!have_header) fail(line, "missing 'p edge' header");
    if (seen_edges != declared_edges) {
      fail(line, "header declares " + std::to_string(declared_edges) + " edges, found " +
                     std::to_string(seen_edges));
    }
  }
};

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

std::unordered_map<VertexId, std::size_t> compact_ids(const MultiGraph& g) {
  std::unordered_map<VertexId, std::size_t> index;
  for (VertexId v : g.vertices()) index.emplace(v, index.size() + 1);
  return index;
}

void write_edges(std::ostream& out, const MultiGraph& g,
                 const std::unordered_map<VertexId, std::size_t>& index) {
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (EdgeId e : g.edge_ids()) {
    const Edge& ed = g.edge(e);
    out << "e " << index.at(ed.u) << ' ' << index.at(ed.v) << '\n';
  }
}

}  // namespace

MultiGraph read_graph(std::istream& in) {
  Reader reader;
  reader.consume(in);
  return std::move(reader.graph);
}

MultiGraph read_graph_file(const std::string& path) {
  auto in = open(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const MultiGraph& g) {
  write_edges(out, g, compact_ids(g));
}

ParsedTermSep read_termsep(std::istream& in) {
  Reader reader;
  reader.allow_termsep = true;
  reader.consume(in);
  ParsedTermSep parsed;
  TermSepInstance& inst = parsed.instance;
  inst.graph = std::move(reader.graph);
  for (auto [s, t] : reader.pairs) {
    if (s == t) throw InputError("terminal pair with identical ends");
    if (inst.graph.is_terminal(static_cast<VertexId>(s)) ||
        inst.graph.is_terminal(static_cast<VertexId>(t))) {
      throw InputError("terminal pairs are not disjoint");
    }
    inst.add_pair(static_cast<VertexId>(s), static_cast<VertexId>(t));
  }
  inst.seed = Separation(inst.graph.id_bound());
  for (auto [v, side] : reader.seeds) {
    VertexId id = static_cast<VertexId>(v);
    if (inst.seed.assigned(id) && inst.seed.side(id) != side) {
      throw InputError("vertex " + std::to_string(v + 1) + " seeded on both sides");
    }
    inst.seed.assign(id, side);
  }
  parsed.k = reader.k;
  inst.k = reader.k.value_or(0);
  inst.validate();
  return parsed;
}

ParsedTermSep read_termsep_file(const std::string& path) {
  auto in = open(path);
  return read_termsep(in);
}

void write_termsep(std::ostream& out, const TermSepInstance& inst) {
  auto index = compact_ids(inst.graph);
  write_edges(out, inst.graph, index);
  std::vector<TerminalPair> pairs = inst.pairs;
  std::sort(pairs.begin(), pairs.end(),
            [](const TerminalPair& x, const TerminalPair& y) { return x.id < y.id; });
  for (const TerminalPair& p : pairs) {
    out << "t " << index.at(p.s) << ' ' << index.at(p.t) << '\n';
  }
  for (VertexId v : inst.graph.vertices()) {
    if (inst.seed.in(v, Side::A)) out << "a " << index.at(v) << '\n';
  }
  for (VertexId v : inst.graph.vertices()) {
    if (inst.seed.in(v, Side::B)) out << "b " << index.at(v) << '\n';
  }
  out << "k " << inst.k << '\n';
}

}  // namespace edgebip
