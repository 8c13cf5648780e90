#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgebip {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kNoVertex = 0xffffffffu;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Provenance {
  enum class Kind : std::uint8_t {
    Original,
    TerminalPendant,
    PendantReplacement,
    TerminalBridge,
  };
  Kind kind = Kind::Original;
  // Original edge id for Original and TerminalPendant edges.
  std::uint32_t origin = 0;

  static Provenance original(std::uint32_t id) { return {Kind::Original, id}; }
  static Provenance synthetic(Kind kind) { return {kind, 0}; }
};

struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
  Provenance provenance;
};

// Membership mask indexed by vertex id.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t bound) : bits_(bound, 0) {}
  VertexMask(std::size_t bound, std::span<const VertexId> members);

  bool test(VertexId v) const { return v < bits_.size() && bits_[v] != 0; }
  void set(VertexId v);
  void reset(VertexId v) {
    if (v < bits_.size()) bits_[v] = 0;
  }
  std::size_t bound() const { return bits_.size(); }

 private:
  std::vector<char> bits_;
};

// Loop-free multigraph with stable vertex ids. Merging retires the merged
// ids and creates a fresh one; ids are never reused.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(std::size_t n);

  VertexId add_vertex();
  EdgeId add_edge(VertexId u, VertexId v, Provenance p = {});
  void delete_edge(EdgeId e);
  // Deletes one edge between u and v (the most recently added one).
  void delete_edge_between(VertexId u, VertexId v);
  void delete_vertex(VertexId v);
  void delete_vertices(std::span<const VertexId> vs);
  VertexId merge_set(std::span<const VertexId> x);

  bool has_vertex(VertexId v) const { return v < alive_.size() && alive_[v]; }
  bool has_edge(EdgeId e) const { return e < edge_alive_.size() && edge_alive_[e]; }
  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return num_edges_; }
  // One past the largest id ever handed out.
  VertexId id_bound() const { return static_cast<VertexId>(alive_.size()); }
  EdgeId edge_id_bound() const { return static_cast<EdgeId>(edges_.size()); }

  std::vector<VertexId> vertices() const;
  std::vector<EdgeId> edge_ids() const;
  const Edge& edge(EdgeId e) const;
  std::span<const EdgeId> incident(VertexId v) const;
  VertexId other_end(EdgeId e, VertexId v) const;

  std::size_t degree(VertexId v) const { return incident(v).size(); }
  std::size_t multiplicity(VertexId u, VertexId v) const;
  // Distinct neighbours in ascending order.
  std::vector<VertexId> neighbors(VertexId v) const;
  std::vector<VertexId> neighborhood(std::span<const VertexId> x) const;

  std::size_t cut_size(std::span<const VertexId> a) const;
  std::size_t cut_size(const VertexMask& a) const;
  std::size_t edges_between(std::span<const VertexId> a,
                            std::span<const VertexId> b) const;
  std::size_t edges_between(const VertexMask& a, const VertexMask& b) const;
  // Edges from v into the masked set.
  std::size_t edges_into(VertexId v, const VertexMask& a) const;

  // The vertex a retired id was merged into, or kNoVertex.
  VertexId merged_into(VertexId v) const;
  // Follows merges to the live vertex now holding v, or kNoVertex if deleted.
  VertexId representative(VertexId v) const;

  std::optional<std::uint32_t> terminal_mark(VertexId v) const;
  void set_terminal_mark(VertexId v, std::optional<std::uint32_t> pair);
  bool is_terminal(VertexId v) const { return terminal_mark(v).has_value(); }

  VertexMask mask(std::span<const VertexId> members) const {
    return VertexMask(id_bound(), members);
  }

  // Same live vertex ids and same edge multiset, provenance ignored.
  bool same_structure(const MultiGraph& other) const;

 private:
  void require_vertex(VertexId v, const char* what) const;
  void unlink(EdgeId e, VertexId v);

  std::vector<char> alive_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<VertexId> merged_into_;
  std::vector<std::int32_t> terminal_;
  std::vector<Edge> edges_;
  std::vector<char> edge_alive_;
  std::size_t num_vertices_ = 0;
  std::size_t num_edges_ = 0;
};

// Two-colouring of g with the given edges removed; nullopt if an odd cycle
// remains. Colours are indexed by vertex id.
std::optional<std::vector<std::int8_t>> two_coloring(
    const MultiGraph& g, std::span<const EdgeId> removed = {});

}  // namespace edgebip
