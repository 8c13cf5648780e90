#include "edgebip/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace edgebip {

ResidualNetwork::ResidualNetwork(std::size_t nodes) : out_(std::max<std::size_t>(nodes, 2)) {}

ResidualNetwork::Node ResidualNetwork::add_node() {
  out_.emplace_back();
  return static_cast<Node>(out_.size() - 1);
}

void ResidualNetwork::add_arc(Node from, Node to, int capacity) {
  out_[from].push_back(static_cast<std::uint32_t>(arcs_.size()));
  arcs_.push_back(Arc{to, capacity});
  out_[to].push_back(static_cast<std::uint32_t>(arcs_.size()));
  arcs_.push_back(Arc{from, 0});
}

void ResidualNetwork::add_undirected(Node u, Node v, int capacity) {
  out_[u].push_back(static_cast<std::uint32_t>(arcs_.size()));
  arcs_.push_back(Arc{v, capacity});
  out_[v].push_back(static_cast<std::uint32_t>(arcs_.size()));
  arcs_.push_back(Arc{u, capacity});
}

bool ResidualNetwork::augment_once() {
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> via(out_.size(), kNone);
  std::vector<char> seen(out_.size(), 0);
  std::deque<Node> queue{source()};
  seen[source()] = 1;
  while (!queue.empty() && !seen[sink()]) {
    Node v = queue.front();
    queue.pop_front();
    for (std::uint32_t a : out_[v]) {
      const Arc& arc = arcs_[a];
      if (arc.cap <= 0 || seen[arc.to]) continue;
      seen[arc.to] = 1;
      via[arc.to] = a;
      queue.push_back(arc.to);
    }
  }
  if (!seen[sink()]) return false;
  int push = kInfinite;
  for (Node v = sink(); v != source(); v = arcs_[via[v] ^ 1u].to) {
    push = std::min(push, arcs_[via[v]].cap);
  }
  for (Node v = sink(); v != source(); v = arcs_[via[v] ^ 1u].to) {
    arcs_[via[v]].cap -= push;
    arcs_[via[v] ^ 1u].cap += push;
  }
  flow_ += push;
  return true;
}

std::optional<int> ResidualNetwork::augment(int bound) {
  while (flow_ <= bound && augment_once()) {
  }
  if (flow_ > bound) return std::nullopt;
  return flow_;
}

std::vector<char> ResidualNetwork::reachable_from(Node start) const {
  std::vector<char> seen(out_.size(), 0);
  std::deque<Node> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    Node v = queue.front();
    queue.pop_front();
    for (std::uint32_t a : out_[v]) {
      const Arc& arc = arcs_[a];
      if (arc.cap > 0 && !seen[arc.to]) {
        seen[arc.to] = 1;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

std::vector<char> ResidualNetwork::reachable_from_source() const {
  return reachable_from(source());
}

std::vector<char> ResidualNetwork::reaching_sink() const {
  // w reaches v in the residual network iff the arc w->v has capacity left;
  // scanning v's list, arc a^1 is the arc from the neighbour back into v.
  std::vector<char> seen(out_.size(), 0);
  std::deque<Node> queue{sink()};
  seen[sink()] = 1;
  while (!queue.empty()) {
    Node v = queue.front();
    queue.pop_front();
    for (std::uint32_t a : out_[v]) {
      const Arc& back = arcs_[a ^ 1u];
      Node w = arcs_[a].to;
      if (back.cap > 0 && !seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

FlowNetwork::FlowNetwork(const MultiGraph& g, std::span<const VertexId> sources,
                         std::span<const VertexId> sinks, int round_bound)
    : graph_(&g), node_of_(g.id_bound(), 0), net_(2), round_bound_(round_bound) {
  for (VertexId v : g.vertices()) node_of_[v] = net_.add_node();
  VertexMask source_mask = g.mask(sources);
  for (VertexId v : sinks) {
    if (!g.has_vertex(v)) throw InputError("FlowNetwork: unknown sink vertex");
    if (source_mask.test(v)) throw InputError("FlowNetwork: source and sink sets overlap");
  }
  for (VertexId v : sources) {
    if (!g.has_vertex(v)) throw InputError("FlowNetwork: unknown source vertex");
  }
  for (EdgeId e : g.edge_ids()) {
    const Edge& ed = g.edge(e);
    net_.add_undirected(node_of_[ed.u], node_of_[ed.v], 1);
  }
  int pin = round_bound < 0 ? 1 : round_bound + 1;
  for (VertexId v : sources) net_.add_arc(net_.source(), node_of_[v], pin);
  for (VertexId v : sinks) net_.add_arc(node_of_[v], net_.sink(), pin);
}

std::optional<int> FlowNetwork::max_flow_bounded() {
  auto value = net_.augment(round_bound_);
  state_ = value ? State::Solved : State::Exceeded;
  return value;
}

std::vector<VertexId> FlowNetwork::min_cut_source_side(Extremal which) const {
  if (state_ != State::Solved) {
    throw StateError("min_cut_source_side: flow not computed or bound exceeded");
  }
  std::vector<VertexId> out;
  if (which == Extremal::Min) {
    auto seen = net_.reachable_from_source();
    for (VertexId v : graph_->vertices()) {
      if (seen[node_of_[v]]) out.push_back(v);
    }
  } else {
    auto seen = net_.reaching_sink();
    for (VertexId v : graph_->vertices()) {
      if (!seen[node_of_[v]]) out.push_back(v);
    }
  }
  return out;
}

std::optional<MinCut> min_cut(const MultiGraph& g, std::span<const VertexId> sources,
                              std::span<const VertexId> sinks, Extremal which,
                              int bound) {
  FlowNetwork net(g, sources, sinks, bound);
  auto value = net.max_flow_bounded();
  if (!value) return std::nullopt;
  return MinCut{*value, net.min_cut_source_side(which)};
}

}  // namespace edgebip
