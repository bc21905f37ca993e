#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace noshow {

using CandidateId = std::uint32_t;
using Weight = std::uint64_t;

/// Sorted, duplicate-free list of candidate ids.
using Committee = std::vector<CandidateId>;
/// Ordered, repetition-free list of candidate ids (a picking order).
using Sequence = std::vector<CandidateId>;

/// `count` identical voters sharing one approval ballot.
struct BallotGroup {
  std::vector<CandidateId> ballot;  // sorted, non-empty
  Weight weight = 1;

  friend bool operator==(const BallotGroup&, const BallotGroup&) = default;
};

/// Weighted approval profile over candidates 0..m-1.
///
/// Groups are normalized: ballots are sorted, duplicates merged, and groups are
/// ordered lexicographically by ballot. Instances are immutable once built.
class Profile {
 public:
  Profile() = default;

  /// Builds a normalized profile. Throws EmptyBallot / BadCandidate.
  static Profile normalize(unsigned num_candidates, std::vector<BallotGroup> raw,
                           std::vector<std::string> labels = {});

  unsigned num_candidates() const { return num_candidates_; }
  std::size_t num_groups() const { return groups_.size(); }
  std::span<const BallotGroup> groups() const { return groups_; }
  const BallotGroup& group(std::size_t g) const { return groups_.at(g); }
  Weight total_weight() const { return total_weight_; }

  /// Indices of the groups whose ballot contains `c`.
  std::span<const std::size_t> supporters(CandidateId c) const { return supporters_.at(c); }
  bool approves(std::size_t g, CandidateId c) const;
  std::optional<std::size_t> find_group(std::span<const CandidateId> ballot) const;

  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(CandidateId c) const;
  std::optional<CandidateId> find_label(const std::string& label) const;

  /// Every weight multiplied by `factor` (factor >= 1).
  Profile scaled(Weight factor) const;
  /// Union of the two electorates; candidate counts must agree.
  Profile plus(const Profile& other) const;

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.num_candidates_ == b.num_candidates_ && a.groups_ == b.groups_;
  }

 private:
  unsigned num_candidates_ = 0;
  std::vector<BallotGroup> groups_;
  std::vector<std::vector<std::size_t>> supporters_;
  std::vector<std::string> labels_;
  Weight total_weight_ = 0;
};

Profile normalize_profile(unsigned num_candidates, std::vector<BallotGroup> raw);

/// Removes `count` voters from group `g`; the group disappears when it empties.
Profile abstain(const Profile& profile, std::size_t g, Weight count);

/// One voter of group `g` adds (or deletes) candidate `c`; the changed voter
/// becomes its own ballot (merged with an identical group if one exists).
Profile modify_approval(const Profile& profile, std::size_t g, CandidateId c, bool add);

/// result[c] = number of voters approving c.
std::vector<Weight> approval_scores(const Profile& profile);

/// A profile together with a committee size 1 <= k <= m-1.
struct ElectionInstance {
  Profile profile;
  unsigned k = 1;

  ElectionInstance() = default;
  ElectionInstance(Profile p, unsigned committee_size);
};

/// Set of tied winning committees, kept in canonical (lexicographic) order.
class Outcome {
 public:
  Outcome() = default;
  explicit Outcome(std::set<Committee> committees) : committees_(std::move(committees)) {}

  const std::set<Committee>& committees() const { return committees_; }
  std::size_t size() const { return committees_.size(); }
  bool empty() const { return committees_.empty(); }
  bool contains(const Committee& w) const { return committees_.count(w) != 0; }
  void insert(Committee w) { committees_.insert(std::move(w)); }

  /// True iff every committee contains `c`.
  bool all_contain(CandidateId c) const;
  /// True iff some committee contains `c`.
  bool any_contains(CandidateId c) const;

  friend bool operator==(const Outcome&, const Outcome&) = default;

 private:
  std::set<Committee> committees_;
};

/// |w ∩ ballot| for sorted inputs.
unsigned overlap(std::span<const CandidateId> w, std::span<const CandidateId> ballot);

Committee make_committee(std::vector<CandidateId> members);

}  // namespace noshow
