#pragma once

#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "edgebip/relaxation.hpp"

namespace edgebip {

enum class Rule : std::uint8_t {
  Terminator,
  Boundary,
  Pendant,
  LonelyTerminal,
  AdjacentTerminals,
  CommonNeighbor,
  MajorityNeighbour,
  Excess1,
  Excess2,
};
inline constexpr std::size_t kRuleCount = 9;
inline constexpr std::array<Rule, kRuleCount> kAllRules = {
    Rule::Terminator,        Rule::Boundary,       Rule::Pendant,
    Rule::LonelyTerminal,    Rule::AdjacentTerminals, Rule::CommonNeighbor,
    Rule::MajorityNeighbour, Rule::Excess1,        Rule::Excess2};

const char* rule_name(Rule rule);

struct ReductionOutcome {
  enum class Kind { NotApplicable, Applied, NoSolution, Solved };
  Kind kind = Kind::NotApplicable;
  Rule rule = Rule::Terminator;
  int dk = 0;
  int dpairs = 0;

  bool applied() const { return kind == Kind::Applied; }
  bool terminal() const { return kind == Kind::NoSolution || kind == Kind::Solved; }
};

struct RuleEvent {
  Rule rule;
  int dk;
  int dvertices;
  int dpairs;
  int dcost2;
};

using RuleCounts = std::array<long, kRuleCount>;

// Records how removed or merged vertices take their side once the reduced
// instance is solved. Replayed newest first.
class LiftLog {
 public:
  void record_merge(std::vector<VertexId> members, VertexId merged);
  // v takes the side of `anchor` (or the opposite side).
  void record_follow(VertexId v, VertexId anchor, bool same_side);
  void record_fixed(VertexId v, Side side);
  // X removed with N(X) ⊆ {anchor}; X joins the anchor's side.
  void record_pendant_delete(std::vector<VertexId> x, VertexId anchor);
  // X between u and v replaced by parallel u-v edges; `inner` lists the edges
  // of G[N[X]] other than direct u-v edges.
  void record_pendant_replace(std::vector<VertexId> x, VertexId u, VertexId v,
                              std::vector<std::pair<VertexId, VertexId>> inner);
  void append(const LiftLog& later);
  bool empty() const { return entries_.empty(); }

  Separation lift(Separation sep) const;

 private:
  struct Merge {
    std::vector<VertexId> members;
    VertexId merged;
  };
  struct Follow {
    VertexId v, anchor;
    bool same;
  };
  struct Fixed {
    VertexId v;
    Side side;
  };
  struct PendantDelete {
    std::vector<VertexId> x;
    VertexId anchor;
  };
  struct PendantReplace {
    std::vector<VertexId> x;
    VertexId u, v;
    std::vector<std::pair<VertexId, VertexId>> inner;
  };
  using Entry = std::variant<Merge, Follow, Fixed, PendantDelete, PendantReplace>;
  std::vector<Entry> entries_;
};

struct ReductionContext {
  LiftLog* log = nullptr;
  RuleCounts* counts = nullptr;
  std::function<void(const RuleEvent&)> trace;
};

// Merges x into one vertex: the result lies in A° (B°) if x meets A° (B°).
// Returns kNoVertex if x meets both sides. Throws StateError on terminals.
VertexId merge_vertices(TermSepInstance& inst, std::span<const VertexId> x, LiftLog& log);

// Single application of one rule. The instance is expected to be maximal and
// every rule of higher priority inapplicable.
ReductionOutcome apply_rule(Rule rule, TermSepInstance& inst, LiftLog& log);

ReductionOutcome terminator(TermSepInstance& inst);
ReductionOutcome boundary(TermSepInstance& inst, LiftLog& log);
ReductionOutcome pendant(TermSepInstance& inst, LiftLog& log);
ReductionOutcome lonely_terminal(TermSepInstance& inst, LiftLog& log);
ReductionOutcome adjacent_terminals(TermSepInstance& inst, LiftLog& log);
ReductionOutcome common_neighbor(TermSepInstance& inst, LiftLog& log);
ReductionOutcome majority_neighbour(TermSepInstance& inst, LiftLog& log);
ReductionOutcome excess1_reduction(TermSepInstance& inst, LiftLog& log);
ReductionOutcome excess2_reduction(TermSepInstance& inst, LiftLog& log);

// Normalizes, then applies rules in priority order up to and including
// `last`, re-normalizing after every application, until none applies.
// Returns NotApplicable for a reduced instance, or the terminating outcome.
ReductionOutcome reduce_exhaustively(TermSepInstance& inst, ReductionContext& ctx,
                                     Rule last = Rule::Excess2);

}  // namespace edgebip
