#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "edgebip/reductions.hpp"
#include "edgebip/relaxation.hpp"

namespace edgebip {

inline constexpr double kAlphaT = 0.59950;
inline constexpr double kAlphaNu = 0.29774;
inline constexpr double kAlphaK = 0.10276;
inline constexpr double kBranchBase = 1.977;
inline constexpr double kGoodMargin = 1e-6;

struct Potential {
  int t = 0;
  int nu2 = 0;  // 2k - 2·cost, i.e. ν in half units
  int k = 0;

  double nu() const { return nu2 / 2.0; }
  double mu() const { return kAlphaT * t + kAlphaNu * nu() + kAlphaK * k; }
};

// Requires a maximal seed.
Potential potential(const TermSepInstance& inst);

// Claimed minimum gains per branch. nu counts half units of cost.
struct BranchingVector {
  struct Part {
    int t = 0, nu = 0, k = 0;
    double drop() const { return kAlphaT * t + kAlphaNu * nu / 2.0 + kAlphaK * k; }
  };
  std::array<Part, 2> parts;

  static BranchingVector of(int t1, int n1, int k1, int t2, int n2, int k2) {
    return {{Part{t1, n1, k1}, Part{t2, n2, k2}}};
  }
  std::string str() const;
};

double vector_sum(const BranchingVector& v);
bool is_good_vector(const BranchingVector& v);

enum class CaseTag : std::uint8_t {
  TwoPairs,
  Case00,
  Case10a,
  AntennaDetected,
  Case11a,
  Case11b,
  Case11c_i,
  Case11c_ii_A,
  Case11c_ii_B1,
  Case11c_ii_B2,
  IntersectionMerge,
  Fallback,
};
inline constexpr std::size_t kCaseTagCount = 12;
const char* case_name(CaseTag tag);

struct Branch {
  std::array<Separation, 2> seeds;
  // Any one of these must be dominated by the realized decrease.
  std::vector<BranchingVector> claims;
};

struct Reduce {
  // Either a set of vertices to merge or a replacement seed.
  std::vector<VertexId> merge;
  std::optional<Separation> seed;
};

struct Step {
  CaseTag tag = CaseTag::Fallback;
  bool mirrored = false;
  std::string detail;
  std::variant<Branch, Reduce> action;

  bool is_branch() const { return std::holds_alternative<Branch>(action); }
};

struct EngineStats {
  long nodes = 0;
  long leaves = 0;
  long branches = 0;
  long step_reductions = 0;
  long dominance_violations = 0;
  long case00 = 0;
  long exhaustions = 0;
  long invariant_violations = 0;
  RuleCounts rules{};
  // Committed steps per case tag, branches and reductions alike.
  std::array<long, kCaseTagCount> steps{};

  long assertion_failures() const {
    return dominance_violations + case00 + exhaustions + invariant_violations;
  }
  void add(const EngineStats& o);
};

struct TraceRecord {
  long node = 0;
  CaseTag tag = CaseTag::Fallback;
  bool mirrored = false;
  std::string detail;
  std::optional<BranchingVector> claimed;
  // Per child: realized (Δt, Δν in half units, Δk); empty for reductions.
  std::vector<std::array<int, 3>> realized;
  double mu_before = 0;
  std::vector<double> mu_after;
};

// Chooses the next step for a reduced maximal instance with unresolved
// pairs. Never fails: when the case analysis finds nothing, it falls back to
// the plain pair branch and records the incident in `stats`.
Step select_step(const TermSepInstance& inst, EngineStats& stats);

struct EngineOptions {
  std::function<void(const TraceRecord&)> trace;
  // Abort after this many nodes (0 = unlimited).
  long node_limit = 0;
};

class BranchingEngine {
 public:
  explicit BranchingEngine(EngineOptions options = {}) : options_(std::move(options)) {}

  // Integral separation of cost at most inst.k extending inst.seed, or none.
  std::optional<Separation> solve(const TermSepInstance& inst);
  // Smallest budget admitting a solution, with that solution. Gives up above
  // `max_k`.
  std::optional<std::pair<int, Separation>> optimum(TermSepInstance inst, int max_k);

  const EngineStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

 private:
  std::optional<Separation> solve_node(TermSepInstance inst);

  EngineOptions options_;
  EngineStats stats_;
};

}  // namespace edgebip
