#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "edgebip/multigraph.hpp"
#include "edgebip/relaxation.hpp"

namespace edgebip {

// DIMACS-style edge format:
//   c comment
//   p edge <n> <m>
//   e <u> <v>        (1-based; repeated lines are parallel edges)
// Vertex i of the file becomes vertex id i-1, edge j (0-based, file order)
// carries Provenance::original(j).
MultiGraph read_graph(std::istream& in);
MultiGraph read_graph_file(const std::string& path);
// Live vertices are renumbered 1..n in ascending id order.
void write_graph(std::ostream& out, const MultiGraph& g);

// The edge format plus
//   t <s> <t>        terminal pair
//   a <v> / b <v>    seed membership
//   k <int>          budget
struct ParsedTermSep {
  TermSepInstance instance;
  std::optional<int> k;
};
ParsedTermSep read_termsep(std::istream& in);
ParsedTermSep read_termsep_file(const std::string& path);
void write_termsep(std::ostream& out, const TermSepInstance& inst);

}  // namespace edgebip
