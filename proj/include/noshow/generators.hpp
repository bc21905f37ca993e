#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noshow/participation.hpp"
#include "noshow/profile.hpp"
#include "noshow/rule.hpp"
#include "noshow/scoring.hpp"

namespace noshow {

/// What a generated candidate stands for.
struct Role {
  enum class Kind { gadget, vertex, set, auxiliary, filler, a_side, b_side, extra };
  Kind kind = Kind::extra;
  unsigned index = 0;  // 1-based for g_i, a_i, b_i; 0-based vertex / set index

  friend bool operator==(const Role&, const Role&) = default;
};

/// A generated election with the voter whose abstention is of interest.
struct ReducedInstance {
  ElectionInstance instance;
  std::size_t abstainer = 0;  // ballot-group index
  std::vector<Role> roles;    // per candidate

  const std::vector<CandidateId>& abstainer_ballot() const { return instance.profile.group(abstainer).ballot; }
  CandidateId candidate(const std::string& label) const;
};

/// 1×{a,b} 1×{b,c} 1×{a} 1×{c}, k = 2.
ElectionInstance concurrence_profile();

// ---------------------------------------------------------------------------
// Sequential impossibility family (k >= 3, r = k-1).

struct Theorem2Layout {
  std::vector<CandidateId> a;  // a_1..a_r
  std::vector<CandidateId> b;  // b_1..b_r
  std::optional<CandidateId> d;
  Weight top_up_target = 0;  // common approval score in A
  Committee via_a1;          // {a_1, b_1..b_r}
  Committee via_br;          // {b_r, a_1..a_r}
};

Theorem2Layout theorem2_layout(unsigned k);

/// The base profile A alone: pair ballots, singleton top-ups, and d when k = 3.
/// All approval scores equal the top-up target T, the smallest T >= every
/// pair-induced score with n >= k·T.
Profile theorem2_base(unsigned k);

/// A* = λA + A' with A' = {a_1..a_r}, {b_1..b_r}, {a_1}, {b_r}; the abstainer
/// is the {a_1..a_r} voter. Throws BadK for k < 3.
ReducedInstance theorem2_family(unsigned k, Weight lambda);

struct LambdaSearchResult {
  std::optional<Weight> lambda;  // smallest λ in range with the expected structure
  Weight tried = 0;
  Outcome before;  // f(A*) at the reported λ (or at the last λ tried)
  Outcome after;   // f(A*_{-i})
};

/// Smallest λ in 1..max_lambda with f(A*) = {via_a1, via_br} and f(A*_{-i}) = {via_br}.
LambdaSearchResult theorem2_lambda_search(const Rule& rule, unsigned k, Weight max_lambda = 200,
                                          const ComputeOptions& options = {});

// ---------------------------------------------------------------------------

/// 20×{x1,x2,x3} 10×{y1,y2} 10×{y1,y2,z} 9×{z,c} 2×{c}, k = 5; abstainer = a {c} voter.
ReducedInstance mes_unrep_instance();

// ---------------------------------------------------------------------------
// Independent set in cubic graphs → seqThiele abstention.

struct CubicGraph {
  unsigned vertices = 0;
  std::vector<std::pair<unsigned, unsigned>> edges;  // u < v, sorted

  /// Throws NotCubic unless simple and 3-regular.
  static CubicGraph make(unsigned vertices, std::vector<std::pair<unsigned, unsigned>> edges);
  /// One "u v" pair per line, '#' comments; vertex count = max id + 1.
  static CubicGraph parse(const std::string& text);
  static CubicGraph k4();
  static CubicGraph k33();
  static CubicGraph q3();
};

/// Smallest positive α with (α/4)(δ1−δ2)/δ1 ∈ ℤ and α(δ1−δ2) >= δ1.
Weight indset_alpha(const ScoringFunction& s);

/// Voters per gadget pair {g1,g2}, {g1,g3}, {g2,g4}, {g3,g4}.
Weight indset_gadget_weight(const ScoringFunction& s, unsigned vertices, unsigned t);

/// Candidates g1..g4, b, c_v; k = |V| + 4; abstainer = the {g1,g3} block.
/// Throws BadScoring unless δ(1)−δ(2) > δ(2)−δ(3), and Invariant unless
/// |V| >= 2 and |E| >= 3t.
ReducedInstance indset_reduction(const CubicGraph& graph, unsigned t, const ScoringFunction& s);

/// Exact decision by include/exclude search with a degree bound. Throws
/// TooLarge above `max_vertices`.
bool independent_set_oracle(const CubicGraph& graph, unsigned t, unsigned max_vertices = 32);

// ---------------------------------------------------------------------------
// Restricted exact cover by 3-sets → MES / seqPhragmén abstention.

struct Rx3cInstance {
  unsigned t = 0;                               // |U| = 3t
  std::vector<std::array<unsigned, 3>> sets;   // 3t sets, sorted elements

  /// Throws NotRegular unless |sets| = 3t and every element lies in exactly three sets.
  void validate() const;
  /// One "x y z" set per line; t = number of lines / 3.
  static Rx3cInstance parse(const std::string& text);
  std::string format() const;
};

/// Three exact covers of U overlaid. With `mixed_blocks` unset all three
/// partitions are independent and random; otherwise only that many 9-element
/// blocks are re-partitioned and every other triple is listed three times.
Rx3cInstance planted_rx3c(unsigned t, std::uint64_t seed, std::optional<unsigned> mixed_blocks = std::nullopt);

/// t^3 >= 90t^2 + 120t + 60.
bool rx3c_t_bound(unsigned t);
unsigned rx3c_min_t();

/// Candidates g1..g6, c_S, a_1..a_t, b1, b2; k = 4t + 5; abstainer = the
/// {g1,g2,g3} voter. Throws TBoundViolated or NotRegular.
ReducedInstance rx3c_reduction(const Rx3cInstance& inst);

/// Indices of an exact cover, or none. Throws BudgetExceeded after `max_nodes`
/// search nodes.
std::optional<std::vector<std::size_t>> exact_cover_oracle(const Rx3cInstance& inst,
                                                           std::size_t max_nodes = 10'000'000);

// ---------------------------------------------------------------------------

/// One row of a closed-form audit: the number of voters with `ballot`
/// predicted by the construction versus what the profile holds.
struct AuditRow {
  std::string what;
  Weight expected = 0;
  Weight actual = 0;
  bool ok() const { return expected == actual; }
};

/// Every ballot of the reduced profile against the voter-block formulas,
/// plus the total voter count and the committee size.
std::vector<AuditRow> rx3c_audit(const Rx3cInstance& inst, const ReducedInstance& reduced);
std::vector<AuditRow> indset_audit(const CubicGraph& graph, unsigned t, const ScoringFunction& s,
                                   const ReducedInstance& reduced);

}  // namespace noshow
