#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "noshow/profile.hpp"
#include "noshow/rule.hpp"
#include "noshow/sequential.hpp"

namespace noshow {

/// Kelly extension of a voter's approval-count preference to sets of committees.
enum class KellyVerdict { none, weak, strict };

/// weak iff every W ∈ x is at least as good as every W' ∈ y for `ballot`;
/// strict iff additionally one such pair is strictly better. Both sets non-empty.
KellyVerdict kelly_compare(const Outcome& x, const Outcome& y, std::span<const CandidateId> ballot);

/// `count` voters of ballot group `group` stay home.
struct Abstention {
  std::size_t group = 0;
  Weight count = 1;

  friend bool operator==(const Abstention&, const Abstention&) = default;
};

/// |W ∩ ballot| for every committee of an outcome, in canonical committee order.
struct ApprovalCounts {
  std::vector<CandidateId> ballot;
  std::vector<unsigned> before;
  std::vector<unsigned> after;
};

/// The abstainers prefer f(A_{-I}) to f(A) in the Kelly sense: every abstainer
/// weakly, at least one strictly.
struct AbstentionWitness {
  std::vector<Abstention> abstainers;
  Outcome before;
  Outcome after;
  std::vector<ApprovalCounts> approvals;  // one entry per distinct abstaining group
};

struct ParticipationOptions {
  ComputeOptions compute;
  /// Abstainer multisets of total size up to this bound in group scans.
  unsigned max_group_size = 3;
  /// Workers for scans; results are aggregated in group order regardless.
  unsigned threads = 1;
};

/// Witness iff f(A_{-i}) is Kelly-strictly preferred by the abstaining ballot.
/// Throws TooManyAbstainers when count exceeds the group weight and
/// AllVotersAbstain when nobody would be left.
std::optional<AbstentionWitness> benefits_by_abstaining(const Rule& rule, const ElectionInstance& instance,
                                                        std::size_t group, Weight count = 1,
                                                        const ParticipationOptions& options = {});

std::optional<AbstentionWitness> group_benefits(const Rule& rule, const ElectionInstance& instance,
                                                std::span<const Abstention> abstainers,
                                                const ParticipationOptions& options = {});

/// Single-voter abstention for every group, in group order. A lone voter is
/// never asked to abstain since that would empty the electorate.
std::vector<AbstentionWitness> scan_participation(const Rule& rule, const ElectionInstance& instance,
                                                  const ParticipationOptions& options = {});

/// Every abstainer multiset of total size 1..options.max_group_size that leaves
/// at least one voter, in lexicographic order of (group, count) lists.
std::vector<AbstentionWitness> scan_group_participation(const Rule& rule, const ElectionInstance& instance,
                                                        const ParticipationOptions& options = {});

/// Groups with some winning committee disjoint from their ballot.
std::vector<std::size_t> unrepresented_groups(const Profile& profile, const Outcome& outcome);

/// First witness among unrepresented voters, in group order.
std::optional<AbstentionWitness> unrepresented_check(const Rule& rule, const ElectionInstance& instance,
                                                     const ParticipationOptions& options = {});

/// claimed == f(A, k) exactly.
bool is_outcome(const Rule& rule, const ElectionInstance& instance, const Outcome& claimed,
                const ComputeOptions& options = {});

/// max over W ∈ outcome of |W ∩ ballot|.
unsigned max_approvals(const Outcome& outcome, std::span<const CandidateId> ballot);
unsigned max_approvals(const Rule& rule, const ElectionInstance& instance, std::span<const CandidateId> ballot,
                       const ComputeOptions& options = {});

/// One voter of `group` adds or deletes one approval of `candidate`.
struct ApprovalChange {
  std::size_t group = 0;
  CandidateId candidate = 0;
  bool added = false;
  Outcome before;
  Outcome after;
};

/// Tries additions first, then deletions, group by group and candidate by
/// candidate; deletions that would empty a ballot are skipped. Returns the
/// first change that alters the outcome.
std::optional<ApprovalChange> single_approval_robustness(const Rule& rule, const ElectionInstance& instance,
                                                         const ParticipationOptions& options = {});

}  // namespace noshow
