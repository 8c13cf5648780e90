#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edgebip/multigraph.hpp"

namespace edgebip {

enum class Extremal { Min, Max };

// Residual network for small integral capacities. Augmenting paths are found
// by breadth-first search. Arcs are stored in reverse pairs (i, i^1).
class ResidualNetwork {
 public:
  using Node = std::uint32_t;
  static constexpr int kInfinite = 1 << 28;

  explicit ResidualNetwork(std::size_t nodes);

  Node add_node();
  std::size_t num_nodes() const { return out_.size(); }
  Node source() const { return 0; }
  Node sink() const { return 1; }

  void add_arc(Node from, Node to, int capacity);
  // One arc pair carrying `capacity` in either direction.
  void add_undirected(Node u, Node v, int capacity);
  void pin_to_source(Node v) { add_arc(source(), v, kInfinite); }
  void pin_to_sink(Node v) { add_arc(v, sink(), kInfinite); }

  // Augments until no path remains or the flow exceeds `bound`. Returns the
  // flow value, or nullopt once it exceeds the bound.
  std::optional<int> augment(int bound);
  int flow() const { return flow_; }

  // Nodes reachable from the source in the residual network.
  std::vector<char> reachable_from_source() const;
  // Nodes that can reach the sink in the residual network.
  std::vector<char> reaching_sink() const;
  // Nodes reachable from `start` in the residual network.
  std::vector<char> reachable_from(Node start) const;

 private:
  struct Arc {
    Node to;
    int cap;
  };
  bool augment_once();

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> out_;
  int flow_ = 0;
};

// Cut problem on a multigraph: every edge is a unit undirected arc pair and the
// given source and sink vertex sets are attached to a super source and sink.
class FlowNetwork {
 public:
  FlowNetwork(const MultiGraph& g, std::span<const VertexId> sources,
              std::span<const VertexId> sinks, int round_bound);

  // Exact flow if at most the round bound, otherwise nullopt.
  std::optional<int> max_flow_bounded();
  // Minimal (residual-reachable) or maximal (complement of co-reachable)
  // minimum-cut source side, as vertex ids in ascending order.
  std::vector<VertexId> min_cut_source_side(Extremal which) const;

 private:
  const MultiGraph* graph_;
  std::vector<ResidualNetwork::Node> node_of_;
  ResidualNetwork net_;
  int round_bound_;
  enum class State { Fresh, Solved, Exceeded } state_ = State::Fresh;
};

// Convenience: extremal minimum cut between two vertex sets, or nullopt if the
// cut value exceeds `bound`.
struct MinCut {
  int value = 0;
  std::vector<VertexId> source_side;
};
std::optional<MinCut> min_cut(const MultiGraph& g, std::span<const VertexId> sources,
                              std::span<const VertexId> sinks, Extremal which,
                              int bound);

}  // namespace edgebip
