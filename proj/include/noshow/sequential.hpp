#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "noshow/profile.hpp"
#include "noshow/rational.hpp"
#include "noshow/rule.hpp"
#include "noshow/scoring.hpp"

namespace noshow {

// ---------------------------------------------------------------------------
// Single-step query functions. These are the reference semantics; the
// enumerator below computes the same outcomes with pruning.

/// Marginal Thiele score of every c ∉ partial.
std::map<CandidateId, Rational> marginal_scores(const Profile& profile, const Committee& partial,
                                                const ScoringFunction& s);

/// argmax of marginal_scores given the chosen prefix.
std::set<CandidateId> seq_thiele_query(const Profile& profile, unsigned k, const Sequence& seq,
                                       const ScoringFunction& s);

/// seqPhragmén, load formulation: y[g] is the load carried by each voter of group g.
struct PhragmenState {
  Sequence sequence;
  std::vector<Rational> loads;

  static PhragmenState fresh(const Profile& profile);
};

struct PhragmenBranch {
  CandidateId candidate;
  Rational load;  // ℓ(candidate), the new load of its approvers
  PhragmenState next;
};

/// Candidate load ℓ(c) = (1 + Σ w·y) / Σ w over approvers; none without approvers.
std::optional<Rational> phragmen_load(const Profile& profile, const std::vector<Rational>& loads, CandidateId c);

/// All argmin-load candidates. Throws NoBuyer when no unchosen candidate has an approver.
std::vector<PhragmenBranch> phragmen_query(const Profile& profile, unsigned k, const PhragmenState& state);

/// seqPhragmén, money formulation: a global clock and per-group balances that
/// grow at unit rate; buyers' balances drop to zero.
struct PhragmenMoneyState {
  Sequence sequence;
  Rational clock;
  std::vector<Rational> balance;

  static PhragmenMoneyState fresh(const Profile& profile);
};

struct PhragmenMoneyBranch {
  CandidateId candidate;
  Rational time;
  PhragmenMoneyState next;
};

std::vector<PhragmenMoneyBranch> phragmen_money_query(const Profile& profile, unsigned k,
                                                      const PhragmenMoneyState& state);

/// Smallest ρ with Σ w·min(ρ, x) = target over (budget x, weight w) pairs; none if unaffordable.
std::optional<Rational> mes_rho(std::span<const std::pair<Rational, Weight>> budgets,
                                const Rational& target = Rational(1));

struct MesState {
  enum class Phase { one, two };

  Sequence sequence;
  std::vector<Rational> budgets;  // per voter of each group
  Phase phase = Phase::one;

  /// Every voter starts with k/n.
  static MesState fresh(const Profile& profile, unsigned k);
};

struct MesBranch {
  CandidateId candidate;
  Rational rho;
  MesState next;
};

std::optional<Rational> mes_price(const Profile& profile, const std::vector<Rational>& budgets, CandidateId c);

/// Minimal-ρ affordable candidates; empty once Phase 1 is over.
std::vector<MesBranch> mes_phase1_query(const Profile& profile, unsigned k, const MesState& state);

/// All completions of a Phase-1-exhausted state by budget-carrying Phragmén.
std::set<Sequence> mes_phase2(const Profile& profile, unsigned k, const MesState& state,
                              std::size_t max_sequences = 1'000'000);

// ---------------------------------------------------------------------------
// Query-function view g(A, k, S) of a sequential rule.

using QueryFunction = std::function<std::set<CandidateId>(const Profile&, unsigned k, const Sequence&)>;

/// Replays `S` from a fresh state. For MES an unaffordable Phase-1 purchase
/// while other candidates are affordable raises InvalidSequence.
QueryFunction query_function(const Rule& rule);

bool check_standardness(const QueryFunction& g, const ElectionInstance& instance);
bool check_standardness(const Rule& rule, const ElectionInstance& instance);

enum class ConcurrenceVerdict { premise_fails, holds, violated };

/// Premises: ballots of size <= 2, equal approval scores <= n/k, and for every
/// chosen c_j the number of {c_j,d} ballots dominates the number of {c_j,c}
/// ballots, once strictly. Then d must not be queried.
ConcurrenceVerdict check_concurrence(const QueryFunction& g, const Profile& profile, unsigned k, const Sequence& seq,
                                     CandidateId c, CandidateId d);
ConcurrenceVerdict check_concurrence(const Rule& rule, const Profile& profile, unsigned k, const Sequence& seq,
                                     CandidateId c, CandidateId d);

/// True iff g(λA + A', k, S) ⊄ g(A, k, S) for this one λ. Never proves continuity.
bool continuity_refuted_at(const QueryFunction& g, const Profile& a, const Profile& a_prime, unsigned k,
                           const Sequence& seq, Weight lambda);

// ---------------------------------------------------------------------------
// Tie-branch enumeration.

struct Transition {
  const Sequence& prefix;
  CandidateId candidate;
  const Rational& value;  // marginal score, load, price, or Phase-2 time
  bool phase_two;         // MES only
  std::size_t tie_size;   // |argmin| at this node before any pruning
};

struct EnumerationOptions {
  std::size_t max_branches = 1'000'000;
  /// Cap on |f(A, k)| after clone classes are expanded again.
  std::size_t max_committees = 1'000'000;
  /// Cache results of branching nodes keyed by the full state.
  bool memoize = true;
  std::size_t memo_bytes = std::size_t{1} << 30;
  /// Branch only within one approver-connected component of a tie that fits
  /// into the remaining slots.
  bool reduce_levels = true;
  /// Branch only on the smallest member of each clone class.
  bool use_clones = true;
  /// Skip a tied candidate c' when swapping it with an explored candidate c
  /// maps the current state onto itself; its completions are the swapped ones.
  bool use_symmetry = true;
  std::function<void(const Transition&)> on_transition;
  std::function<void(const Sequence&, std::string_view)> on_leaf;
};

struct EnumerationResult {
  Outcome outcome;
  /// Some branch could only be filled with candidates nobody approves.
  bool unfilled_fallback = false;
  std::size_t leaves = 0;
  std::size_t branch_nodes = 0;
  std::size_t memo_hits = 0;
  std::size_t mirrored = 0;
};

/// f(A, k) of a sequential rule: union over all tie-breaking orders.
/// Throws BranchExplosion beyond options.max_branches leaves.
EnumerationResult enumerate_outcomes(const Rule& rule, const ElectionInstance& instance,
                                     const EnumerationOptions& options = {});

}  // namespace noshow
