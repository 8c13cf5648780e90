#include <gtest/gtest.h>

#include <sstream>

#include "edgebip/generators.hpp"
#include "edgebip/graph_io.hpp"

using namespace edgebip;

TEST(GraphIo, ParsesEdgeFormat) {
  std::istringstream in("c triangle\np edge 3 4\ne 1 2\ne 2 3\ne 3 1\ne 1 2\n");
  MultiGraph g = read_graph(in);
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 4u);
  EXPECT_EQ(g.multiplicity(0, 1), 2u);
  EXPECT_EQ(g.edge(3).provenance.origin, 3u);
}

TEST(GraphIo, DiagnosticsCarryLineNumbers) {
  std::istringstream bad("p edge 2 1\ne 1 3\n");
  try {
    read_graph(bad);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream loop("p edge 2 1\ne 1 1\n");
  EXPECT_THROW(read_graph(loop), InputError);
}

TEST(GraphIo, GraphRoundTrip) {
  Rng rng(3);
  for (int it = 0; it < 50; ++it) {
    MultiGraph g = random_multigraph(rng, 9, 15);
    std::stringstream s;
    write_graph(s, g);
    MultiGraph h = read_graph(s);
    EXPECT_TRUE(g.same_structure(h));
  }
}

TEST(GraphIo, TermSepRoundTrip) {
  std::istringstream in("p edge 4 3\ne 1 3\ne 3 4\ne 4 2\nt 1 2\na 3\nk 2\n");
  ParsedTermSep p = read_termsep(in);
  ASSERT_TRUE(p.k.has_value());
  EXPECT_EQ(*p.k, 2);
  ASSERT_EQ(p.instance.pairs.size(), 1u);
  EXPECT_TRUE(p.instance.seed.in(2, Side::A));
  std::stringstream out;
  write_termsep(out, p.instance);
  ParsedTermSep q = read_termsep(out);
  EXPECT_TRUE(p.instance.graph.same_structure(q.instance.graph));
  EXPECT_EQ(q.instance.pairs.size(), 1u);
  EXPECT_TRUE(q.instance.seed.in(2, Side::A));
  EXPECT_EQ(q.instance.k, 2);
}

TEST(GraphIo, TermSepRejectsBadPairs) {
  std::istringstream same("p edge 2 1\ne 1 2\nt 1 1\n");
  EXPECT_THROW(read_termsep(same), InputError);
  std::istringstream both("p edge 2 1\ne 1 2\na 1\nb 1\n");
  EXPECT_THROW(read_termsep(both), InputError);
}
