#include "noshow/profile.hpp"

#include <algorithm>
#include <map>

#include "noshow/error.hpp"

namespace noshow {

Profile Profile::normalize(unsigned num_candidates, std::vector<BallotGroup> raw,
                           std::vector<std::string> labels) {
  std::map<std::vector<CandidateId>, Weight> merged;
  for (auto& group : raw) {
    if (group.ballot.empty()) throw Error(ErrorCode::empty_ballot, "ballot must be non-empty");
    if (group.weight == 0) throw Error(ErrorCode::invariant, "ballot weight must be >= 1");
    std::sort(group.ballot.begin(), group.ballot.end());
    group.ballot.erase(std::unique(group.ballot.begin(), group.ballot.end()), group.ballot.end());
    if (group.ballot.back() >= num_candidates) {
      throw Error(ErrorCode::bad_candidate, "candidate " + std::to_string(group.ballot.back()) +
                                                " out of range (m=" + std::to_string(num_candidates) + ")");
    }
    merged[group.ballot] += group.weight;
  }
  if (!labels.empty() && labels.size() != num_candidates) {
    throw Error(ErrorCode::invariant, "label count does not match m");
  }

  Profile p;
  p.num_candidates_ = num_candidates;
  p.labels_ = std::move(labels);
  p.supporters_.assign(num_candidates, {});
  for (auto& [ballot, weight] : merged) {
    const std::size_t g = p.groups_.size();
    for (CandidateId c : ballot) p.supporters_[c].push_back(g);
    p.total_weight_ += weight;
    p.groups_.push_back({ballot, weight});
  }
  return p;
}

bool Profile::approves(std::size_t g, CandidateId c) const {
  const auto& b = groups_.at(g).ballot;
  return std::binary_search(b.begin(), b.end(), c);
}

std::optional<std::size_t> Profile::find_group(std::span<const CandidateId> ballot) const {
  std::vector<CandidateId> key(ballot.begin(), ballot.end());
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  auto it = std::lower_bound(groups_.begin(), groups_.end(), key,
                             [](const BallotGroup& g, const std::vector<CandidateId>& k) { return g.ballot < k; });
  if (it == groups_.end() || it->ballot != key) return std::nullopt;
  return static_cast<std::size_t>(it - groups_.begin());
}

std::string Profile::label(CandidateId c) const {
  if (c < labels_.size() && !labels_[c].empty()) return labels_[c];
  return std::to_string(c);
}

std::optional<CandidateId> Profile::find_label(const std::string& name) const {
  for (CandidateId c = 0; c < labels_.size(); ++c) {
    if (labels_[c] == name) return c;
  }
  return std::nullopt;
}

Profile Profile::scaled(Weight factor) const {
  if (factor == 0) throw Error(ErrorCode::invariant, "scale factor must be >= 1");
  std::vector<BallotGroup> raw(groups_.begin(), groups_.end());
  for (auto& g : raw) g.weight *= factor;
  return normalize(num_candidates_, std::move(raw), labels_);
}

Profile Profile::plus(const Profile& other) const {
  if (other.num_candidates_ != num_candidates_) {
    throw Error(ErrorCode::invariant, "profiles over different candidate sets");
  }
  std::vector<BallotGroup> raw(groups_.begin(), groups_.end());
  raw.insert(raw.end(), other.groups_.begin(), other.groups_.end());
  return normalize(num_candidates_, std::move(raw), labels_.empty() ? other.labels_ : labels_);
}

Profile normalize_profile(unsigned num_candidates, std::vector<BallotGroup> raw) {
  return Profile::normalize(num_candidates, std::move(raw));
}

Profile abstain(const Profile& profile, std::size_t g, Weight count) {
  if (g >= profile.num_groups()) throw Error(ErrorCode::invariant, "group index out of range");
  if (count == 0) throw Error(ErrorCode::invariant, "abstainer count must be >= 1");
  const Weight w = profile.group(g).weight;
  if (count > w) {
    throw Error(ErrorCode::too_many_abstainers,
                std::to_string(count) + " abstainers from a group of " + std::to_string(w));
  }
  std::vector<BallotGroup> raw(profile.groups().begin(), profile.groups().end());
  if (count == w) {
    raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(g));
  } else {
    raw[g].weight -= count;
  }
  return Profile::normalize(profile.num_candidates(), std::move(raw), profile.labels());
}

Profile modify_approval(const Profile& profile, std::size_t g, CandidateId c, bool add) {
  if (g >= profile.num_groups()) throw Error(ErrorCode::invariant, "group index out of range");
  if (c >= profile.num_candidates()) throw Error(ErrorCode::bad_candidate, "candidate out of range");
  std::vector<BallotGroup> raw(profile.groups().begin(), profile.groups().end());
  std::vector<CandidateId> ballot = raw[g].ballot;
  const bool present = std::binary_search(ballot.begin(), ballot.end(), c);
  if (add == present) throw Error(ErrorCode::invariant, "approval modification is a no-op");
  if (add) {
    ballot.push_back(c);
  } else {
    ballot.erase(std::find(ballot.begin(), ballot.end(), c));
    if (ballot.empty()) throw Error(ErrorCode::empty_ballot, "deletion would empty the ballot");
  }
  if (--raw[g].weight == 0) raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(g));
  raw.push_back({std::move(ballot), 1});
  return Profile::normalize(profile.num_candidates(), std::move(raw), profile.labels());
}

std::vector<Weight> approval_scores(const Profile& profile) {
  std::vector<Weight> scores(profile.num_candidates(), 0);
  for (const auto& g : profile.groups()) {
    for (CandidateId c : g.ballot) scores[c] += g.weight;
  }
  return scores;
}

ElectionInstance::ElectionInstance(Profile p, unsigned committee_size)
    : profile(std::move(p)), k(committee_size) {
  const unsigned m = profile.num_candidates();
  if (k < 1 || k + 1 > m) {
    throw Error(ErrorCode::invariant,
                "committee size k=" + std::to_string(k) + " must satisfy 1 <= k <= m-1 (m=" + std::to_string(m) + ")");
  }
  if (profile.total_weight() == 0) throw Error(ErrorCode::invariant, "profile has no voters");
}

bool Outcome::all_contain(CandidateId c) const {
  return std::all_of(committees_.begin(), committees_.end(),
                     [c](const Committee& w) { return std::binary_search(w.begin(), w.end(), c); });
}

bool Outcome::any_contains(CandidateId c) const {
  return std::any_of(committees_.begin(), committees_.end(),
                     [c](const Committee& w) { return std::binary_search(w.begin(), w.end(), c); });
}

unsigned overlap(std::span<const CandidateId> w, std::span<const CandidateId> ballot) {
  unsigned count = 0;
  auto i = w.begin();
  auto j = ballot.begin();
  while (i != w.end() && j != ballot.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

Committee make_committee(std::vector<CandidateId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

}  // namespace noshow
