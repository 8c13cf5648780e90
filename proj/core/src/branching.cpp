#include "edgebip/branching.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edgebip/excess.hpp"
#include "edgebip/flow.hpp"

namespace edgebip {

Potential potential(const TermSepInstance& inst) {
  Potential p;
  p.t = inst.unresolved_count();
  p.k = inst.k;
  p.nu2 = 2 * inst.k - inst.cost2();
  return p;
}

std::string BranchingVector::str() const {
  std::ostringstream out;
  out << '[' << parts[0].t << ',' << parts[0].nu << ',' << parts[0].k << ';' << parts[1].t << ','
      << parts[1].nu << ',' << parts[1].k << ']';
  return out.str();
}

double vector_sum(const BranchingVector& v) {
  double sum = 0;
  for (const auto& part : v.parts) sum += std::pow(kBranchBase, -part.drop());
  return sum;
}

bool is_good_vector(const BranchingVector& v) { return vector_sum(v) < 1.0 - kGoodMargin; }

const char* case_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::TwoPairs: return "two_pairs";
    case CaseTag::Case00: return "case_00";
    case CaseTag::Case10a: return "case_10a";
    case CaseTag::AntennaDetected: return "antenna";
    case CaseTag::Case11a: return "case_11a";
    case CaseTag::Case11b: return "case_11b";
    case CaseTag::Case11c_i: return "case_11c_i";
    case CaseTag::Case11c_ii_A: return "case_11c_ii_A";
    case CaseTag::Case11c_ii_B1: return "case_11c_ii_B1";
    case CaseTag::Case11c_ii_B2: return "case_11c_ii_B2";
    case CaseTag::IntersectionMerge: return "intersection_merge";
    case CaseTag::Fallback: return "fallback";
  }
  return "?";
}

void EngineStats::add(const EngineStats& o) {
  nodes += o.nodes;
  leaves += o.leaves;
  branches += o.branches;
  step_reductions += o.step_reductions;
  dominance_violations += o.dominance_violations;
  case00 += o.case00;
  exhaustions += o.exhaustions;
  invariant_violations += o.invariant_violations;
  for (std::size_t i = 0; i < rules.size(); ++i) rules[i] += o.rules[i];
  for (std::size_t i = 0; i < steps.size(); ++i) steps[i] += o.steps[i];
}

namespace {

using Assignment = std::initializer_list<std::pair<VertexId, Side>>;

int cut_of(const MultiGraph& g, std::span<const VertexId> set) {
  return static_cast<int>(g.cut_size(set));
}

int side_cut(const TermSepInstance& f, Side side) {
  return static_cast<int>(f.graph.cut_size(f.seed.mask(side)));
}

int side_cut(const MultiGraph& g, const Separation& sep, Side side) {
  return static_cast<int>(g.cut_size(sep.mask(side)));
}

VertexId sole_neighbor(const MultiGraph& g, VertexId v) {
  auto inc = g.incident(v);
  return inc.size() == 1 ? g.other_end(inc[0], v) : kNoVertex;
}

std::vector<VertexId> set_minus(std::vector<VertexId> a, std::span<const VertexId> b) {
  std::vector<VertexId> sb(b.begin(), b.end());
  std::sort(sb.begin(), sb.end());
  std::sort(a.begin(), a.end());
  std::vector<VertexId> out;
  std::set_difference(a.begin(), a.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

std::vector<VertexId> set_and(std::vector<VertexId> a, std::vector<VertexId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<VertexId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(std::span<const VertexId> set, VertexId v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

// A view of the instance in which A and B may be swapped.
struct Frame {
  TermSepInstance inst;
  bool mirror = false;

  Frame(const TermSepInstance& base, bool m) : inst(base), mirror(m) {
    if (m) inst.seed = base.seed.mirrored();
  }
  const MultiGraph& g() const { return inst.graph; }
  Separation with(Assignment extra) const {
    Separation s = inst.seed;
    for (auto [v, side] : extra) s.assign(v, side);
    return s;
  }
  Separation extend(Assignment extra) const { return min_cost_extension(inst, with(extra)); }
  Separation out(const Separation& s) const { return mirror ? s.mirrored() : s; }
  int base_cut(Side side) const { return side_cut(inst, side); }
  // Δ of the given side of an extension.
  int delta(const Separation& ext, Side side) const {
    return side_cut(inst.graph, ext, side) - base_cut(side);
  }
  int into(VertexId v, Side side) const {
    return static_cast<int>(inst.graph.edges_into(v, inst.seed.mask(side)));
  }
  bool assigned(VertexId v) const { return inst.seed.assigned(v); }
  std::vector<VertexId> unresolved_terminals_except(VertexId x) const {
    std::vector<VertexId> out;
    for (const TerminalPair& p : inst.unresolved_pairs()) {
      if (p.s != x) out.push_back(p.s);
      if (p.t != x) out.push_back(p.t);
    }
    return out;
  }
  bool adjacent_to_other_terminal(VertexId v, VertexId x) const {
    for (VertexId w : inst.graph.neighbors(v)) {
      if (w == x || !inst.graph.is_terminal(w)) continue;
      const TerminalPair* p = inst.pair_of(w);
      if (p && !pair_resolved(inst.seed, *p)) return true;
    }
    return false;
  }
};

// Pushed extensions for terminal x in a frame: A_x is the maximal A side
// among minimum-cost extensions with x on A, B_x symmetrically.
struct Profile {
  VertexId x = kNoVertex, y = kNoVertex, xn = kNoVertex;
  std::vector<VertexId> a_set, b_set, inter;
  int dA = 0, dB = 0, dAt = 0, dBt = 0, eR = 0;
  bool ok = false;
};

std::vector<VertexId> pushed_side(const Frame& f, const Separation& ext, Side side) {
  const MultiGraph& g = f.g();
  std::vector<VertexId> sources = ext.members(g, side);
  VertexMask src = g.mask(sources);
  std::vector<VertexId> sinks = f.inst.seed.members(g, opposite(side));
  for (VertexId v : g.vertices()) {
    if (g.is_terminal(v) && !src.test(v) && !f.inst.seed.in(v, opposite(side))) {
      sinks.push_back(v);
    }
  }
  int bound = cut_of(g, sources);
  auto cut = min_cut(g, sources, sinks, Extremal::Max, bound);
  return cut ? cut->source_side : sources;
}

Profile make_profile(const Frame& f, VertexId x) {
  const MultiGraph& g = f.g();
  Profile p;
  p.x = x;
  p.y = f.inst.partner(x);
  p.xn = sole_neighbor(g, x);
  Separation ea = f.extend({{x, Side::A}, {p.y, Side::B}});
  Separation eb = f.extend({{x, Side::B}, {p.y, Side::A}});
  p.a_set = pushed_side(f, ea, Side::A);
  p.b_set = pushed_side(f, eb, Side::B);
  p.dA = cut_of(g, p.a_set) - f.base_cut(Side::A);
  p.dB = cut_of(g, p.b_set) - f.base_cut(Side::B);
  p.inter = set_and(p.a_set, p.b_set);
  auto at = set_minus(p.a_set, p.inter);
  auto bt = set_minus(p.b_set, p.inter);
  p.dAt = cut_of(g, at) - f.base_cut(Side::A);
  p.dBt = cut_of(g, bt) - f.base_cut(Side::B);
  std::vector<VertexId> uni = p.a_set;
  uni.insert(uni.end(), p.b_set.begin(), p.b_set.end());
  VertexMask in_union = g.mask(uni);
  std::vector<VertexId> rest;
  for (VertexId v : g.vertices()) {
    if (!in_union.test(v)) rest.push_back(v);
  }
  p.eR = static_cast<int>(g.edges_between(g.mask(p.inter), g.mask(rest)));
  p.ok = true;
  return p;
}

enum class Kind { Case00, Case10a, Antenna, Case11a, Case11b, Case11c, Unknown };

struct Classified {
  Kind kind = Kind::Unknown;
  bool mirror = false;       // frame in which the case is canonical
  Side natural = Side::None;  // antenna natural side, original orientation
};

Classified classify(const Frame& f, const Profile& p) {
  Classified c;
  const auto pr = std::make_pair(p.dA, p.dB);
  const auto tl = std::make_pair(p.dAt, p.dBt);
  using P = std::pair<int, int>;
  if (pr == P{0, 0}) {
    c.kind = Kind::Case00;
  } else if (pr == P{1, 0}) {
    if (tl == P{1, 0}) c.kind = Kind::Case10a;
    if (tl == P{0, 1}) c.kind = Kind::Antenna, c.natural = Side::B;
  } else if (pr == P{0, 1}) {
    if (tl == P{0, 1}) c.kind = Kind::Case10a, c.mirror = true;
    if (tl == P{1, 0}) c.kind = Kind::Antenna, c.natural = Side::A;
  } else if (pr == P{1, 1}) {
    if (p.eR == 1) {
      c.kind = Kind::Case11a;
    } else if (p.eR == 0 && tl == P{1, 1}) {
      c.kind = Kind::Case11b;
      c.mirror = p.xn != kNoVertex && f.into(p.xn, Side::A) > 0;
    } else if (p.eR == 0 && tl == P{0, 2}) {
      c.kind = Kind::Case11c;
    } else if (p.eR == 0 && tl == P{2, 0}) {
      c.kind = Kind::Case11c, c.mirror = true;
    }
  }
  if (c.natural != Side::None && f.mirror) c.natural = opposite(c.natural);
  return c;
}

// Partner type as seen from a frame.
struct PartnerType {
  Kind kind = Kind::Unknown;
  Side natural = Side::None;  // frame orientation
};

PartnerType in_frame(const Classified& c, bool mirror) {
  return {c.kind, mirror && c.natural != Side::None ? opposite(c.natural) : c.natural};
}

// Antenna check in a frame: returns the natural side.
std::optional<Side> antenna_side(const Frame& f, VertexId x) {
  const MultiGraph& g = f.g();
  VertexId xn = sole_neighbor(g, x);
  if (xn == kNoVertex || g.is_terminal(xn) || f.assigned(xn)) return std::nullopt;
  int ea = f.into(xn, Side::A), eb = f.into(xn, Side::B);
  if ((ea > 0) == (eb > 0)) return std::nullopt;
  Side nat = ea > 0 ? Side::A : Side::B;
  int xc = std::max(ea, eb);
  int outside = static_cast<int>(g.degree(xn)) - ea - eb - static_cast<int>(g.multiplicity(xn, x));
  if (outside != xc) return std::nullopt;
  auto others = f.unresolved_terminals_except(x);
  std::vector<VertexId> s_side = f.inst.seed.members(g, nat);
  std::vector<VertexId> u_side = f.inst.seed.members(g, opposite(nat));

  std::vector<VertexId> src1 = s_side;
  src1.push_back(x);
  src1.push_back(xn);
  std::vector<VertexId> snk1 = u_side;
  snk1.insert(snk1.end(), others.begin(), others.end());
  int d_s = f.base_cut(nat);
  auto c1 = min_cut(g, src1, snk1, Extremal::Max, d_s);
  if (!c1 || c1->value != d_s || c1->source_side.size() != src1.size()) return std::nullopt;

  std::vector<VertexId> src2 = u_side;
  src2.push_back(x);
  std::vector<VertexId> snk2 = s_side;
  snk2.insert(snk2.end(), others.begin(), others.end());
  int d_u = f.base_cut(opposite(nat)) + 1;
  auto c2 = min_cut(g, src2, snk2, Extremal::Max, d_u);
  if (!c2 || c2->value != d_u || c2->source_side.size() != src2.size()) return std::nullopt;
  return nat;
}

const std::array<BranchingVector, 2> kTwoPairClaims = {BranchingVector::of(1, 1, 0, 2, 1, 0),
                                                       BranchingVector::of(2, 1, 0, 1, 1, 0)};

Step make_branch(CaseTag tag, const Frame& f, std::string detail, Separation s1, Separation s2,
                 std::vector<BranchingVector> claims) {
  Branch b;
  b.seeds = {f.out(s1), f.out(s2)};
  for (const auto& c : claims) {
    if (is_good_vector(c)) b.claims.push_back(c);
  }
  b.claims.insert(b.claims.end(), kTwoPairClaims.begin(), kTwoPairClaims.end());
  return Step{tag, f.mirror, std::move(detail), std::move(b)};
}

Step make_merge(CaseTag tag, const Frame& f, std::string detail, std::vector<VertexId> set) {
  Reduce r;
  r.merge = std::move(set);
  return Step{tag, f.mirror, std::move(detail), std::move(r)};
}

Step make_greedy(CaseTag tag, const Frame& f, std::string detail, const Separation& ext) {
  Reduce r;
  r.seed = f.out(ext);
  return Step{tag, f.mirror, std::move(detail), std::move(r)};
}

using MaybeStep = std::optional<Step>;

MaybeStep handle_10a(const Frame& f, VertexId s) {
  const MultiGraph& g = f.g();
  Profile p = make_profile(f, s);
  if (p.dA != 1 || p.dB != 0 || p.dAt != 1 || p.dBt != 0) return std::nullopt;
  auto tilde = set_minus(set_minus(p.a_set, p.inter), f.inst.seed.members(g, Side::A));
  if (tilde.size() != 1 || g.is_terminal(tilde[0]) || p.xn == kNoVertex) return std::nullopt;
  VertexId a = tilde[0];
  int pp = static_cast<int>(g.multiplicity(p.xn, a));
  if (pp < 1) return std::nullopt;
  VertexMask as = g.mask(p.a_set);
  VertexMask bo = f.inst.seed.mask(Side::B);
  int outside = 0;
  VertexId a2 = kNoVertex;
  for (EdgeId e : g.incident(a)) {
    VertexId w = g.other_end(e, a);
    if (!as.test(w) && !bo.test(w)) ++outside, a2 = w;
  }
  int x = outside - 1;
  if (x < 0) return std::nullopt;
  if (x == 0) {
    if (g.is_terminal(a2)) return std::nullopt;
    return make_merge(CaseTag::Case10a, f, "merge a with a'", {a, a2});
  }
  auto ca = f.with({{a, Side::A}});
  auto cb = f.with({{a, Side::B}});
  BranchingVector v = BranchingVector::of(1, 1, pp, 1, 2, pp + x);
  if (pp == 1 && x == 1) {
    int db = f.delta(min_cost_extension(f.inst, cb), Side::B);
    v = db == 1 ? BranchingVector::of(1, 1, 2, 1, 2, 2) : BranchingVector::of(1, 1, 1, 1, 3, 2);
  }
  return make_branch(CaseTag::Case10a, f, "branch on a", ca, cb, {v});
}

MaybeStep handle_antennas(const TermSepInstance& inst, VertexId s, VertexId t, Side nat) {
  Frame f(inst, nat == Side::A);
  const MultiGraph& g = f.g();
  auto ns = antenna_side(f, s), nt = antenna_side(f, t);
  if (ns != Side::B || nt != Side::B) return std::nullopt;
  VertexId s1 = sole_neighbor(g, s), t1 = sole_neighbor(g, t);
  if (s1 == t1) return std::nullopt;
  int x = f.into(s1, Side::B), y = f.into(t1, Side::B);
  auto fix_ss = [&] {
    return std::make_pair(f.with({{s, Side::A}, {s1, Side::A}, {t, Side::B}}),
                          f.with({{t, Side::A}, {s, Side::B}, {s1, Side::B}}));
  };
  auto fix_tt = [&] {
    return std::make_pair(f.with({{s, Side::A}, {t, Side::B}, {t1, Side::B}}),
                          f.with({{t, Side::A}, {t1, Side::A}, {s, Side::B}}));
  };
  const bool adj_s = f.adjacent_to_other_terminal(s1, s);
  const bool adj_t = f.adjacent_to_other_terminal(t1, t);
  if (x >= 3 || (adj_s && y < 3)) {
    auto [c1, c2] = fix_ss();
    return make_branch(CaseTag::AntennaDetected, f, "fix ss'", c1, c2,
                       {BranchingVector::of(1, 2, x, 1, 1, 1)});
  }
  if (y >= 3 || adj_t) {
    auto [c1, c2] = fix_tt();
    return make_branch(CaseTag::AntennaDetected, f, "fix tt'", c1, c2,
                       {BranchingVector::of(1, 1, 1, 1, 2, y)});
  }
  VertexMask bo = f.inst.seed.mask(Side::B);
  auto external = [&](VertexId v, VertexId term) {
    std::vector<VertexId> out;
    for (VertexId w : g.neighbors(v)) {
      if (w != term && !bo.test(w)) out.push_back(w);
    }
    return out;
  };
  auto es = external(s1, s), et = external(t1, t);
  if (es.size() == 1) {
    if (g.is_terminal(es[0])) return std::nullopt;
    return make_merge(CaseTag::AntennaDetected, f, "merge s' with its outside neighbour",
                      {s1, es[0]});
  }
  if (et.size() == 1) {
    if (g.is_terminal(et[0])) return std::nullopt;
    return make_merge(CaseTag::AntennaDetected, f, "merge t' with its outside neighbour",
                      {t1, et[0]});
  }
  if (x == 2 && y == 2 && es.size() == 2 && et.size() == 2) {
    auto [c1, c2] = fix_ss();
    int da = f.delta(min_cost_extension(f.inst, c1), Side::A);
    auto v = da >= 3 ? BranchingVector::of(1, 3, 2, 1, 1, 1) : BranchingVector::of(1, 2, 2, 1, 1, 2);
    return make_branch(CaseTag::AntennaDetected, f, "fix ss'", c1, c2, {v});
  }
  return std::nullopt;
}

MaybeStep handle_11a(const Frame& f, VertexId s, PartnerType tt) {
  const MultiGraph& g = f.g();
  Profile p = make_profile(f, s);
  if (p.inter != std::vector<VertexId>{s} || p.xn == kNoVertex) return std::nullopt;
  VertexId s1 = p.xn, t = p.y;
  auto c1 = f.with({{s, Side::A}, {s1, Side::A}, {t, Side::B}});
  auto c2 = f.with({{t, Side::A}, {s, Side::B}, {s1, Side::B}});
  BranchingVector v = BranchingVector::of(1, 3, 0, 1, 3, 0);
  if (tt.kind == Kind::Antenna) {
    v = tt.natural == Side::A ? BranchingVector::of(1, 3, 1, 1, 2, 0)
                              : BranchingVector::of(1, 2, 0, 1, 3, 1);
  }
  (void)g;
  return make_branch(CaseTag::Case11a, f, "fix ss'", c1, c2, {v});
}

MaybeStep handle_11b(const Frame& f, VertexId s, PartnerType tt) {
  const MultiGraph& g = f.g();
  Profile p = make_profile(f, s);
  VertexId s1 = p.xn, t = p.y;
  if (s1 == kNoVertex) return std::nullopt;
  std::vector<VertexId> z{s, s1};
  std::sort(z.begin(), z.end());
  if (p.inter != z || f.into(s1, Side::A) != 0) return std::nullopt;
  auto at = set_minus(set_minus(p.a_set, p.inter), f.inst.seed.members(g, Side::A));
  auto bt = set_minus(set_minus(p.b_set, p.inter), f.inst.seed.members(g, Side::B));
  if (at.size() != 1 || bt.size() != 1) return std::nullopt;
  VertexId a = at[0], b = bt[0];
  int pp = static_cast<int>(g.multiplicity(s1, a));
  VertexId t1 = sole_neighbor(g, t);
  if (t1 == kNoVertex) return std::nullopt;
  if (t1 == a) {
    return make_greedy(CaseTag::Case11b, f, "t'=a", f.extend({{t, Side::A}, {s, Side::B}}));
  }
  if (t1 == b) {
    return make_greedy(CaseTag::Case11b, f, "t'=b", f.extend({{s, Side::A}, {t, Side::B}}));
  }
  if (f.assigned(t1)) return std::nullopt;
  auto c1 = f.with({{s, Side::A}, {s1, Side::A}, {t, Side::B}, {t1, Side::B}});
  auto c2 = f.with({{t, Side::A}, {t1, Side::A}, {s, Side::B}, {s1, Side::B}});
  std::vector<BranchingVector> claims;
  if (tt.kind == Kind::Antenna) {
    claims.push_back(tt.natural == Side::B ? BranchingVector::of(1, 1, pp, 1, 3, pp + 1)
                                           : BranchingVector::of(1, 3, pp + 1, 1, 1, pp));
  } else if (tt.kind == Kind::Case11b) {
    claims.push_back(BranchingVector::of(1, 2, pp + 1, 1, 2, pp + 1));
  } else {
    claims.push_back(BranchingVector::of(1, 2, pp + 1, 1, 2, pp));
    claims.push_back(BranchingVector::of(1, 2, pp, 1, 2, pp + 1));
  }
  return make_branch(CaseTag::Case11b, f, "double fix ss' and tt'", c1, c2, claims);
}

MaybeStep handle_11c(const Frame& f, VertexId s, PartnerType tt) {
  const MultiGraph& g = f.g();
  Profile p = make_profile(f, s);
  VertexId s1 = p.xn, t = p.y;
  if (s1 == kNoVertex || p.dAt != 0 || p.dBt != 2 || p.eR != 0) return std::nullopt;
  std::vector<VertexId> bs = p.b_set;
  bs.erase(std::remove(bs.begin(), bs.end(), s), bs.end());
  ExcessDecomposition dec;
  try {
    dec = decompose_excess2(f.inst, bs, Side::B);
  } catch (const InputError&) {
    return std::nullopt;
  }
  if (dec.d != s1) return std::nullopt;
  const int sigma = sigma_b_side(f.inst, dec, Side::B).sigma;
  VertexId t1 = sole_neighbor(g, t);
  if (t1 == kNoVertex) return std::nullopt;
  if (contains(dec.c, t1)) {
    return make_greedy(CaseTag::Case11c_i, f, "t'=c_i", f.extend({{s, Side::A}, {t, Side::B}}));
  }
  auto a_new = set_minus(p.a_set, f.inst.seed.members(g, Side::A));
  auto ss1 = f.with({{s, Side::A}, {s1, Side::A}, {t, Side::B}});
  auto ss2 = f.with({{t, Side::A}, {s, Side::B}, {s1, Side::B}});
  std::vector<VertexId> pair_s{s, s1};
  std::sort(pair_s.begin(), pair_s.end());

  if (a_new == pair_s) {
    int pa = f.into(s1, Side::A);
    BranchingVector v = BranchingVector::of(1, 2, sigma, 1, 2, pa);
    if (tt.kind == Kind::Antenna) {
      v = tt.natural == Side::A ? BranchingVector::of(1, 2, 1 + sigma, 1, 1, pa)
                                : BranchingVector::of(1, 2, sigma, 1, 1, 1 + pa);
    }
    return make_branch(CaseTag::Case11c_i, f, "fix ss'", ss1, ss2, {v});
  }
  if (a_new != std::vector<VertexId>{s}) return std::nullopt;
  if (tt.kind != Kind::Antenna) {
    return make_branch(CaseTag::Case11c_ii_A, f, "fix ss' (partner of type 11)", ss1, ss2,
                       {BranchingVector::of(1, 3, sigma, 1, 2, 0)});
  }
  if (f.assigned(t1)) return std::nullopt;
  VertexMask ao = f.inst.seed.mask(Side::A), bo = f.inst.seed.mask(Side::B);

  if (tt.natural == Side::A) {
    const int x = f.into(t1, Side::A);
    auto nt = f.with({{t, Side::A}, {s, Side::B}});
    auto unt = f.with({{s, Side::A}, {s1, Side::A}, {t, Side::B}, {t1, Side::B}});
    int db_unt = f.delta(min_cost_extension(f.inst, unt), Side::B);
    if (!(x == 1 && sigma == 1 && db_unt == 2)) {
      return make_branch(CaseTag::Case11c_ii_A, f, "skewed", nt, unt,
                         {BranchingVector::of(1, 1, 0, 1, db_unt >= 3 ? 5 : 4, x + sigma)});
    }
    VertexId v = kNoVertex;
    for (VertexId w : g.neighbors(t1)) {
      if (w != t && !ao.test(w) && !bo.test(w)) v = w;
    }
    if (v == kNoVertex || g.is_terminal(v)) return std::nullopt;
    if (v == s1) {
      return make_greedy(CaseTag::Case11c_ii_A, f, "v=s'", f.extend({{t, Side::A}, {s, Side::B}}));
    }
    auto ext_seed = f.with({{s, Side::A}, {s1, Side::A}, {t, Side::B}, {t1, Side::B}, {v, Side::B}});
    Separation ext = min_cost_extension(f.inst, ext_seed);
    int db_ext = f.delta(ext, Side::B);
    if (db_ext >= 3) {
      return make_branch(CaseTag::Case11c_ii_A, f, "skewed with v", nt, ext_seed,
                         {BranchingVector::of(1, 1, 0, 1, 5, 2)});
    }
    std::vector<VertexId> bq = ext.members(g, Side::B);
    bq.erase(std::remove_if(bq.begin(), bq.end(), [&](VertexId w) { return w == t || w == t1; }),
             bq.end());
    if (contains(bq, s1)) {
      return make_greedy(CaseTag::Case11c_ii_A, f, "s' in B_q",
                         f.extend({{t, Side::A}, {s, Side::B}}));
    }
    ExcessDecomposition dq;
    try {
      dq = decompose_excess2(f.inst, bq, Side::B);
    } catch (const InputError&) {
      return std::nullopt;
    }
    if (dq.d != v) return std::nullopt;
    const int sigma2 = sigma_b_side(f.inst, dq, Side::B).sigma;
    auto va = f.with({{v, Side::A}});
    auto vb = f.with({{v, Side::B}});
    BranchingVector vec = BranchingVector::of(1, 2, sigma2, 1, 2, 1);
    if (sigma2 <= 1) {
      int da = f.delta(min_cost_extension(f.inst, va), Side::A);
      vec = da >= 3 ? BranchingVector::of(1, 3, 1, 1, 2, 1) : BranchingVector::of(1, 2, 1, 1, 2, 2);
    }
    return make_branch(CaseTag::Case11c_ii_A, f, "branch on v", va, vb, {vec});
  }

  // Partner is an antenna with natural side B.
  if (sigma > 1 || f.adjacent_to_other_terminal(s1, s)) {
    return make_branch(CaseTag::Case11c_ii_B1, f, "fix ss'", ss1, ss2,
                       {BranchingVector::of(1, 2, sigma, 1, 2, 1)});
  }
  const int y = f.into(t1, Side::B);
  auto tt1 = f.with({{s, Side::A}, {t, Side::B}, {t1, Side::B}});
  auto tt2 = f.with({{t, Side::A}, {t1, Side::A}, {s, Side::B}});
  if (dec.c.empty()) {
    if (y > 1) {
      return make_branch(CaseTag::Case11c_ii_B1, f, "fix tt'", tt1, tt2,
                         {BranchingVector::of(1, 1, 1, 1, 3, y)});
    }
    VertexId w = kNoVertex;
    for (VertexId u : g.neighbors(t1)) {
      if (u != t && !bo.test(u)) w = u;
    }
    if (w == kNoVertex) return std::nullopt;
    if (w == s1) {
      return make_greedy(CaseTag::Case11c_ii_B1, f, "w=s'",
                         f.extend({{s, Side::A}, {t, Side::B}}));
    }
    if (f.into(w, Side::A) > 0) {
      return make_branch(CaseTag::Case11c_ii_B1, f, "fix tt' (w touches A)", tt1, tt2,
                         {BranchingVector::of(1, 1, 2, 1, 3, 1)});
    }
    if (g.is_terminal(w) || f.assigned(w)) return std::nullopt;
    auto ext_seed = f.with({{t, Side::A}, {t1, Side::A}, {w, Side::A}, {s, Side::B}});
    int da = f.delta(min_cost_extension(f.inst, ext_seed), Side::A);
    if (da >= 3) {
      return make_branch(CaseTag::Case11c_ii_B1, f, "fix tt' with w", tt1, ext_seed,
                         {BranchingVector::of(1, 1, 1, 1, 4, 1)});
    }
    auto wa = f.with({{w, Side::A}});
    auto wb = f.with({{w, Side::B}});
    return make_branch(CaseTag::Case11c_ii_B1, f, "branch on w", wa, wb,
                       {BranchingVector::of(1, 2, 1, 1, 2, 2)});
  }
  if (dec.c.size() == 1) {
    VertexId v = kNoVertex;
    for (VertexId u : g.neighbors(s1)) {
      if (u != s && u != dec.c[0]) {
        if (v != kNoVertex) return std::nullopt;
        v = u;
      }
    }
    if (v == kNoVertex || g.is_terminal(v)) return std::nullopt;
    return make_merge(CaseTag::Case11c_ii_B2, f, "merge s' and v", {s1, v});
  }
  return std::nullopt;
}

Step fallback(const TermSepInstance& inst, const TerminalPair& p) {
  Branch b;
  b.seeds[0] = inst.seed;
  b.seeds[0].assign(p.s, Side::A);
  b.seeds[0].assign(p.t, Side::B);
  b.seeds[1] = inst.seed;
  b.seeds[1].assign(p.s, Side::B);
  b.seeds[1].assign(p.t, Side::A);
  return Step{CaseTag::Fallback, false, "plain pair branch", std::move(b)};
}

int resolved_by(const TermSepInstance& inst, const Separation& ext) {
  int n = 0;
  for (const TerminalPair& p : inst.pairs) {
    if (!pair_resolved(inst.seed, p) && pair_resolved(ext, p)) ++n;
  }
  return n;
}

std::optional<Step> two_pairs(const TermSepInstance& inst, const std::vector<TerminalPair>& pairs) {
  Frame f(inst, false);
  for (const TerminalPair& p : pairs) {
    std::array<Separation, 2> seeds = {f.with({{p.s, Side::A}, {p.t, Side::B}}),
                                       f.with({{p.s, Side::B}, {p.t, Side::A}})};
    for (int o = 0; o < 2; ++o) {
      Separation ext = min_cost_extension(inst, seeds[o]);
      if (resolved_by(inst, ext) >= 2) {
        return make_branch(CaseTag::TwoPairs, f, "extension resolves two pairs", seeds[0],
                           seeds[1], {});
      }
      const int c = cost2(inst.graph, ext);
      for (const TerminalPair& q : pairs) {
        if (q.id == p.id) continue;
        for (Side side : {Side::A, Side::B}) {
          Separation alt = seeds[o];
          alt.assign(q.s, side);
          alt.assign(q.t, opposite(side));
          if (min_extension_cost2(inst.graph, inst.pairs, alt) != c) continue;
          std::array<Separation, 2> chosen = seeds;
          chosen[o] = alt;
          return make_branch(CaseTag::TwoPairs, f, "alternative optimum resolves two pairs",
                             chosen[0], chosen[1], {});
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Step select_step(const TermSepInstance& inst, EngineStats& stats) {
  std::vector<TerminalPair> pairs = inst.unresolved_pairs();
  if (pairs.empty()) throw StateError("select_step: no unresolved pair");
  for (TerminalPair& p : pairs) {
    if (p.t < p.s) std::swap(p.s, p.t);
  }
  if (auto step = two_pairs(inst, pairs)) return *step;

  Frame base(inst, false);
  struct Entry {
    VertexId x;
    Profile profile;
    Classified cls;
  };
  std::vector<std::array<Entry, 2>> table;
  for (const TerminalPair& p : pairs) {
    std::array<Entry, 2> row;
    int i = 0;
    for (VertexId x : {p.s, p.t}) {
      Profile pr = make_profile(base, x);
      std::vector<VertexId> z = pr.inter;
      z.erase(std::remove(z.begin(), z.end(), x), z.end());
      if (z.size() > 1) return make_merge(CaseTag::IntersectionMerge, base, "merge intersection", z);
      row[i] = Entry{x, pr, classify(base, pr)};
      ++i;
    }
    table.push_back(std::move(row));
  }

  auto violation = [&] { ++stats.invariant_violations; };
  for (const auto& row : table) {
    for (const Entry& e : row) {
      if (e.cls.kind == Kind::Case00) ++stats.case00;
      if (e.cls.kind == Kind::Unknown) violation();
      if (e.cls.kind != Kind::Case10a) continue;
      Frame f(inst, e.cls.mirror);
      if (auto step = handle_10a(f, e.x)) return *step;
      violation();
    }
  }

  for (const auto& row : table) {
    for (Kind want : {Kind::Case11a, Kind::Case11b, Kind::Case11c}) {
      for (int i = 0; i < 2; ++i) {
        const Entry& e = row[i];
        if (e.cls.kind != want) continue;
        Frame f(inst, e.cls.mirror);
        PartnerType tt = in_frame(row[1 - i].cls, e.cls.mirror);
        MaybeStep step;
        if (want == Kind::Case11a) step = handle_11a(f, e.x, tt);
        if (want == Kind::Case11b) step = handle_11b(f, e.x, tt);
        if (want == Kind::Case11c) step = handle_11c(f, e.x, tt);
        if (step) return *step;
        violation();
      }
    }
    if (row[0].cls.kind == Kind::Antenna && row[1].cls.kind == Kind::Antenna) {
      if (row[0].cls.natural == row[1].cls.natural) {
        if (auto step = handle_antennas(inst, row[0].x, row[1].x, row[0].cls.natural)) return *step;
      }
      violation();
    }
  }
  ++stats.exhaustions;
  return fallback(inst, pairs.front());
}

// ---------------------------------------------------------------------------
// Engine

namespace {

struct Child {
  TermSepInstance inst;
  LiftLog log;
  ReductionOutcome outcome;
};

}  // namespace

std::optional<Separation> BranchingEngine::solve_node(TermSepInstance inst) {
  ++stats_.nodes;
  if (options_.node_limit > 0 && stats_.nodes > options_.node_limit) {
    throw StateError("branching: node limit exceeded");
  }
  LiftLog log;
  while (true) {
    ReductionContext ctx{&log, &stats_.rules, {}};
    ReductionOutcome out = reduce_exhaustively(inst, ctx);
    if (out.kind == ReductionOutcome::Kind::NoSolution) {
      ++stats_.leaves;
      return std::nullopt;
    }
    if (out.kind == ReductionOutcome::Kind::Solved) {
      ++stats_.leaves;
      return log.lift(inst.seed);
    }
    const Potential p0 = potential(inst);
    Step step = select_step(inst, stats_);
    ++stats_.steps[static_cast<std::size_t>(step.tag)];
    TraceRecord rec;
    rec.node = stats_.nodes;
    rec.tag = step.tag;
    rec.mirrored = step.mirrored;
    rec.detail = step.detail;
    rec.mu_before = p0.mu();

    if (auto* red = std::get_if<Reduce>(&step.action)) {
      ++stats_.step_reductions;
      if (!red->merge.empty()) {
        if (merge_vertices(inst, red->merge, log) == kNoVertex) {
          throw StateError("branching: merge set meets both sides");
        }
      } else {
        inst.seed = *red->seed;
      }
      if (options_.trace) options_.trace(rec);
      continue;
    }

    ++stats_.branches;
    const Branch& br = std::get<Branch>(step.action);
    std::array<Child, 2> kids;
    for (int i = 0; i < 2; ++i) {
      kids[i].inst = inst;
      kids[i].inst.seed = min_cost_extension(inst, br.seeds[i]);
      ReductionContext cctx{&kids[i].log, &stats_.rules, {}};
      kids[i].outcome = reduce_exhaustively(kids[i].inst, cctx);
      const bool done = kids[i].outcome.terminal();
      Potential pc = done ? Potential{} : potential(kids[i].inst);
      rec.realized.push_back({p0.t - pc.t, p0.nu2 - pc.nu2, p0.k - pc.k});
      rec.mu_after.push_back(done ? -1.0 : pc.mu());
    }
    if (step.tag != CaseTag::Fallback) {
      bool dominated = false;
      for (const BranchingVector& c : br.claims) {
        bool all = true;
        for (int i = 0; i < 2; ++i) {
          if (kids[i].outcome.terminal()) continue;
          if (rec.mu_before - rec.mu_after[i] < c.parts[i].drop() - 1e-9) all = false;
        }
        if (all) {
          dominated = true;
          rec.claimed = c;
          break;
        }
      }
      if (!dominated) ++stats_.dominance_violations;
      if (!rec.claimed && !br.claims.empty()) rec.claimed = br.claims.front();
    }
    if (options_.trace) options_.trace(rec);

    for (int i = 0; i < 2; ++i) {
      Child& kid = kids[i];
      std::optional<Separation> res;
      if (kid.outcome.kind == ReductionOutcome::Kind::NoSolution) {
        ++stats_.nodes;
        ++stats_.leaves;
        continue;
      }
      if (kid.outcome.kind == ReductionOutcome::Kind::Solved) {
        ++stats_.nodes;
        ++stats_.leaves;
        res = kid.inst.seed;
      } else {
        res = solve_node(std::move(kid.inst));
      }
      if (res) return log.lift(kid.log.lift(*res));
    }
    return std::nullopt;
  }
}

std::optional<Separation> BranchingEngine::solve(const TermSepInstance& inst) {
  inst.validate();
  if (inst.k < 0) return std::nullopt;
  auto res = solve_node(inst);
  if (!res) return std::nullopt;
  if (!res->extends(inst.seed, inst.graph) || !is_integral(inst.graph, *res) ||
      cost2(inst.graph, *res) > 2 * inst.k) {
    throw StateError("branching: returned separation failed certification");
  }
  return res;
}

std::optional<std::pair<int, Separation>> BranchingEngine::optimum(TermSepInstance inst,
                                                                   int max_k) {
  int lower = (min_extension_cost2(inst.graph, inst.pairs, inst.seed) + 1) / 2;
  for (int k = lower; k <= max_k; ++k) {
    inst.k = k;
    if (auto res = solve(inst)) return std::make_pair(k, *res);
  }
  return std::nullopt;
}

}  // namespace edgebip
