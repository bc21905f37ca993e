#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noshow/profile.hpp"

namespace noshow {

/// Any two supporter sets are nested or disjoint (weights play no role).
bool is_laminar(const Profile& profile);

/// x ⇉ y: ∅ ≠ N(y) ⊊ N(x).
bool strictly_precedes(const Profile& profile, CandidateId x, CandidateId y);

/// Some x with x ⇉ c that is not in `chosen`, if any.
std::optional<CandidateId> unchosen_predecessor(const Profile& profile, const Sequence& chosen, CandidateId c);

struct LaminarNode {
  std::vector<CandidateId> members;    // one clone class (identical supporter sets)
  std::vector<std::size_t> supporters;  // group indices, sorted
  std::optional<std::size_t> parent;   // immediate ⇉-predecessor class
  std::vector<std::size_t> children;
  Weight weight = 0;  // voters whose ballot is exactly this node's up-set
};

/// Clone classes of approved candidates arranged by ⇉. Children's supporter
/// sets are disjoint proper subsets of their parent's. Candidates nobody
/// approves belong to no node.
class LaminarForest {
 public:
  unsigned num_candidates = 0;
  std::vector<LaminarNode> nodes;  // ordered by smallest member
  std::vector<std::size_t> roots;

  std::optional<std::size_t> node_of(CandidateId c) const;
  /// Members of `node` and of all its ancestors, sorted.
  std::vector<CandidateId> up_set(std::size_t node) const;
  /// One ballot group per node of positive weight; normalizing these
  /// reproduces the source profile.
  std::vector<BallotGroup> ballots() const;
  Profile to_profile(std::vector<std::string> labels = {}) const;
  /// Graphviz digraph with parent → child edges.
  std::string to_dot(const Profile& labels_from) const;
};

/// Throws NotLaminar.
LaminarForest laminar_forest(const Profile& profile);

struct LaminarParams {
  unsigned m = 6;
  unsigned depth = 3;      // levels in each tree; 1 gives a party-list profile
  unsigned branching = 3;  // children per node
  Weight min_weight = 1;
  Weight max_weight = 5;
  /// Probability (in percent) that a candidate joins an existing node as a clone.
  unsigned clone_percent = 20;
};

/// Random forest emitted as up-set ballots; deterministic per seed.
Profile random_laminar(const LaminarParams& params, std::uint64_t seed);

}  // namespace noshow
