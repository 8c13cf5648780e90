#include "edgebip/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <utility>

namespace edgebip {

VertexMask::VertexMask(std::size_t bound, std::span<const VertexId> members)
    : bits_(bound, 0) {
  for (VertexId v : members) set(v);
}

void VertexMask::set(VertexId v) {
  if (v >= bits_.size()) bits_.resize(v + 1, 0);
  bits_[v] = 1;
}

MultiGraph::MultiGraph(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) add_vertex();
}

VertexId MultiGraph::add_vertex() {
  VertexId id = id_bound();
  alive_.push_back(1);
  incident_.emplace_back();
  merged_into_.push_back(kNoVertex);
  terminal_.push_back(-1);
  ++num_vertices_;
  return id;
}

void MultiGraph::require_vertex(VertexId v, const char* what) const {
  if (!has_vertex(v)) {
    throw InputError(std::string(what) + ": unknown vertex " + std::to_string(v));
  }
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v, Provenance p) {
  require_vertex(u, "add_edge");
  require_vertex(v, "add_edge");
  if (u == v) throw InputError("add_edge: loops are not allowed");
  EdgeId e = edge_id_bound();
  edges_.push_back(Edge{u, v, p});
  edge_alive_.push_back(1);
  incident_[u].push_back(e);
  incident_[v].push_back(e);
  ++num_edges_;
  return e;
}

void MultiGraph::unlink(EdgeId e, VertexId v) {
  auto& inc = incident_[v];
  auto it = std::find(inc.begin(), inc.end(), e);
  if (it != inc.end()) inc.erase(it);
}

void MultiGraph::delete_edge(EdgeId e) {
  if (!has_edge(e)) throw InputError("delete_edge: unknown edge " + std::to_string(e));
  unlink(e, edges_[e].u);
  unlink(e, edges_[e].v);
  edge_alive_[e] = 0;
  --num_edges_;
}

void MultiGraph::delete_edge_between(VertexId u, VertexId v) {
  require_vertex(u, "delete_edge_between");
  require_vertex(v, "delete_edge_between");
  const auto& inc = incident_[u];
  for (auto it = inc.rbegin(); it != inc.rend(); ++it) {
    if (other_end(*it, u) == v) {
      delete_edge(*it);
      return;
    }
  }
  throw InputError("delete_edge_between: no edge " + std::to_string(u) + "-" +
                   std::to_string(v));
}

void MultiGraph::delete_vertex(VertexId v) {
  require_vertex(v, "delete_vertex");
  std::vector<EdgeId> inc = incident_[v];
  for (EdgeId e : inc) delete_edge(e);
  alive_[v] = 0;
  terminal_[v] = -1;
  --num_vertices_;
}

void MultiGraph::delete_vertices(std::span<const VertexId> vs) {
  for (VertexId v : vs) delete_vertex(v);
}

VertexId MultiGraph::merge_set(std::span<const VertexId> x) {
  if (x.empty()) throw InputError("merge_set: empty set");
  for (VertexId v : x) require_vertex(v, "merge_set");
  VertexMask in_x(id_bound(), x);
  VertexId z = add_vertex();
  for (VertexId v : x) {
    if (!alive_[v]) continue;  // duplicate entry
    std::vector<EdgeId> inc = std::move(incident_[v]);
    incident_[v].clear();
    for (EdgeId e : inc) {
      if (!edge_alive_[e]) continue;
      Edge& ed = edges_[e];
      VertexId w = ed.u == v ? ed.v : ed.u;
      if (in_x.test(w)) {
        // Internal edge: becomes a loop and is suppressed. Each internal edge
        // is seen from both endpoints; only the first visit removes it.
        unlink(e, w);
        edge_alive_[e] = 0;
        --num_edges_;
        continue;
      }
      if (ed.u == v) ed.u = z; else ed.v = z;
      incident_[z].push_back(e);
    }
    alive_[v] = 0;
    terminal_[v] = -1;
    merged_into_[v] = z;
    --num_vertices_;
  }
  return z;
}

std::vector<VertexId> MultiGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(num_vertices_);
  for (VertexId v = 0; v < id_bound(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

std::vector<EdgeId> MultiGraph::edge_ids() const {
  std::vector<EdgeId> out;
  out.reserve(num_edges_);
  for (EdgeId e = 0; e < edge_id_bound(); ++e) {
    if (edge_alive_[e]) out.push_back(e);
  }
  return out;
}

const Edge& MultiGraph::edge(EdgeId e) const {
  if (!has_edge(e)) throw InputError("edge: unknown edge " + std::to_string(e));
  return edges_[e];
}

std::span<const EdgeId> MultiGraph::incident(VertexId v) const {
  require_vertex(v, "incident");
  return incident_[v];
}

VertexId MultiGraph::other_end(EdgeId e, VertexId v) const {
  const Edge& ed = edges_[e];
  return ed.u == v ? ed.v : ed.u;
}

std::size_t MultiGraph::multiplicity(VertexId u, VertexId v) const {
  std::size_t count = 0;
  for (EdgeId e : incident(u)) {
    if (other_end(e, u) == v) ++count;
  }
  return count;
}

std::vector<VertexId> MultiGraph::neighbors(VertexId v) const {
  std::vector<VertexId> out;
  for (EdgeId e : incident(v)) out.push_back(other_end(e, v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<VertexId> MultiGraph::neighborhood(std::span<const VertexId> x) const {
  VertexMask in_x = mask(x);
  std::vector<VertexId> out;
  for (VertexId v : x) {
    for (EdgeId e : incident(v)) {
      VertexId w = other_end(e, v);
      if (!in_x.test(w)) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t MultiGraph::cut_size(std::span<const VertexId> a) const {
  for (VertexId v : a) require_vertex(v, "cut_size");
  return cut_size(mask(a));
}

std::size_t MultiGraph::cut_size(const VertexMask& a) const {
  std::size_t count = 0;
  for (VertexId v = 0; v < id_bound() && v < a.bound(); ++v) {
    if (!alive_[v] || !a.test(v)) continue;
    for (EdgeId e : incident_[v]) {
      if (!a.test(other_end(e, v))) ++count;
    }
  }
  return count;
}

std::size_t MultiGraph::edges_between(std::span<const VertexId> a,
                                      std::span<const VertexId> b) const {
  for (VertexId v : a) require_vertex(v, "edges_between");
  for (VertexId v : b) require_vertex(v, "edges_between");
  VertexMask ma = mask(a);
  for (VertexId v : b) {
    if (ma.test(v)) throw InputError("edges_between: sets overlap");
  }
  return edges_between(ma, mask(b));
}

std::size_t MultiGraph::edges_between(const VertexMask& a, const VertexMask& b) const {
  std::size_t count = 0;
  for (VertexId v = 0; v < id_bound() && v < a.bound(); ++v) {
    if (!alive_[v] || !a.test(v)) continue;
    for (EdgeId e : incident_[v]) {
      if (b.test(other_end(e, v))) ++count;
    }
  }
  return count;
}

std::size_t MultiGraph::edges_into(VertexId v, const VertexMask& a) const {
  std::size_t count = 0;
  for (EdgeId e : incident(v)) {
    if (a.test(other_end(e, v))) ++count;
  }
  return count;
}

VertexId MultiGraph::merged_into(VertexId v) const {
  return v < merged_into_.size() ? merged_into_[v] : kNoVertex;
}

VertexId MultiGraph::representative(VertexId v) const {
  while (v < id_bound() && !alive_[v]) {
    v = merged_into_[v];
    if (v == kNoVertex) return kNoVertex;
  }
  return v < id_bound() ? v : kNoVertex;
}

std::optional<std::uint32_t> MultiGraph::terminal_mark(VertexId v) const {
  if (v >= terminal_.size() || terminal_[v] < 0) return std::nullopt;
  return static_cast<std::uint32_t>(terminal_[v]);
}

void MultiGraph::set_terminal_mark(VertexId v, std::optional<std::uint32_t> pair) {
  require_vertex(v, "set_terminal_mark");
  terminal_[v] = pair ? static_cast<std::int32_t>(*pair) : -1;
}

bool MultiGraph::same_structure(const MultiGraph& other) const {
  if (vertices() != other.vertices()) return false;
  auto edge_list = [](const MultiGraph& g) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (EdgeId e : g.edge_ids()) {
      const Edge& ed = g.edge(e);
      out.emplace_back(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return edge_list(*this) == edge_list(other);
}

std::optional<std::vector<std::int8_t>> two_coloring(const MultiGraph& g,
                                                     std::span<const EdgeId> removed) {
  std::vector<char> skip(g.edge_id_bound(), 0);
  for (EdgeId e : removed) {
    if (e < skip.size()) skip[e] = 1;
  }
  std::vector<std::int8_t> color(g.id_bound(), -1);
  std::deque<VertexId> queue;
  for (VertexId root : g.vertices()) {
    if (color[root] >= 0) continue;
    color[root] = 0;
    queue.push_back(root);
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : g.incident(v)) {
        if (skip[e]) continue;
        VertexId w = g.other_end(e, v);
        if (color[w] < 0) {
          color[w] = static_cast<std::int8_t>(1 - color[v]);
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

}  // namespace edgebip
