#include "noshow/participation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "noshow/error.hpp"

namespace noshow {

namespace {

// Runs body(i) for i in [0, n) on up to `threads` workers. The first exception
// (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Profile abstain_all(const Profile& profile, std::span<const Abstention> abstainers) {
  std::vector<Weight> removed(profile.num_groups(), 0);
  Weight total = 0;
  for (const auto& a : abstainers) {
    if (a.group >= profile.num_groups()) throw Error(ErrorCode::invariant, "group index out of range");
    if (a.count == 0) throw Error(ErrorCode::invariant, "abstainer count must be >= 1");
    removed[a.group] += a.count;
    total += a.count;
  }
  std::vector<BallotGroup> raw;
  for (std::size_t g = 0; g < profile.num_groups(); ++g) {
    const auto& grp = profile.group(g);
    if (removed[g] > grp.weight) {
      throw Error(ErrorCode::too_many_abstainers,
                  std::to_string(removed[g]) + " abstainers from a group of " + std::to_string(grp.weight));
    }
    if (removed[g] < grp.weight) raw.push_back({grp.ballot, grp.weight - removed[g]});
  }
  if (total >= profile.total_weight()) throw Error(ErrorCode::all_voters_abstain, "no voter would remain");
  return Profile::normalize(profile.num_candidates(), std::move(raw), profile.labels());
}

std::vector<unsigned> counts_for(const Outcome& outcome, std::span<const CandidateId> ballot) {
  std::vector<unsigned> out;
  for (const auto& w : outcome.committees()) out.push_back(overlap(w, ballot));
  return out;
}

// Witness test against a precomputed f(A).
std::optional<AbstentionWitness> judge(const Rule& rule, const ElectionInstance& instance, const Outcome& before,
                                       std::span<const Abstention> abstainers, const ParticipationOptions& options) {
  const ElectionInstance reduced(abstain_all(instance.profile, abstainers), instance.k);
  Outcome after = compute_outcome(rule, reduced, options.compute);
  bool strict = false;
  std::vector<std::size_t> seen;
  for (const auto& a : abstainers) {
    if (std::find(seen.begin(), seen.end(), a.group) != seen.end()) continue;
    seen.push_back(a.group);
    switch (kelly_compare(after, before, instance.profile.group(a.group).ballot)) {
      case KellyVerdict::none:
        return std::nullopt;
      case KellyVerdict::strict:
        strict = true;
        break;
      case KellyVerdict::weak:
        break;
    }
  }
  if (!strict) return std::nullopt;
  AbstentionWitness w;
  w.abstainers.assign(abstainers.begin(), abstainers.end());
  for (std::size_t g : seen) {
    const auto& ballot = instance.profile.group(g).ballot;
    w.approvals.push_back({ballot, counts_for(before, ballot), counts_for(after, ballot)});
  }
  w.before = before;
  w.after = std::move(after);
  return w;
}

// Evaluates each abstainer list and keeps the witnesses in input order.
std::vector<AbstentionWitness> scan(const Rule& rule, const ElectionInstance& instance,
                                    const std::vector<std::vector<Abstention>>& candidates,
                                    const ParticipationOptions& options) {
  const Outcome before = compute_outcome(rule, instance, options.compute);
  std::vector<std::optional<AbstentionWitness>> found(candidates.size());
  parallel_for(candidates.size(), options.threads,
               [&](std::size_t i) { found[i] = judge(rule, instance, before, candidates[i], options); });
  std::vector<AbstentionWitness> out;
  for (auto& f : found) {
    if (f) out.push_back(std::move(*f));
  }
  return out;
}

}  // namespace

KellyVerdict kelly_compare(const Outcome& x, const Outcome& y, std::span<const CandidateId> ballot) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::invariant, "Kelly comparison of an empty outcome");
  unsigned x_min = ~0u, x_max = 0, y_min = ~0u, y_max = 0;
  for (const auto& w : x.committees()) {
    const unsigned v = overlap(w, ballot);
    x_min = std::min(x_min, v);
    x_max = std::max(x_max, v);
  }
  for (const auto& w : y.committees()) {
    const unsigned v = overlap(w, ballot);
    y_min = std::min(y_min, v);
    y_max = std::max(y_max, v);
  }
  if (x_min < y_max) return KellyVerdict::none;
  // min X >= max Y; some pair is strict iff max X > min Y
  return x_max > y_min ? KellyVerdict::strict : KellyVerdict::weak;
}

std::optional<AbstentionWitness> benefits_by_abstaining(const Rule& rule, const ElectionInstance& instance,
                                                        std::size_t group, Weight count,
                                                        const ParticipationOptions& options) {
  const Abstention a{group, count};
  return group_benefits(rule, instance, std::span<const Abstention>(&a, 1), options);
}

std::optional<AbstentionWitness> group_benefits(const Rule& rule, const ElectionInstance& instance,
                                                std::span<const Abstention> abstainers,
                                                const ParticipationOptions& options) {
  if (abstainers.empty()) throw Error(ErrorCode::invariant, "empty abstainer set");
  abstain_all(instance.profile, abstainers);  // validate before the expensive part
  const Outcome before = compute_outcome(rule, instance, options.compute);
  return judge(rule, instance, before, abstainers, options);
}

std::vector<AbstentionWitness> scan_participation(const Rule& rule, const ElectionInstance& instance,
                                                  const ParticipationOptions& options) {
  std::vector<std::vector<Abstention>> candidates;
  if (instance.profile.total_weight() > 1) {
    for (std::size_t g = 0; g < instance.profile.num_groups(); ++g) candidates.push_back({{g, 1}});
  }
  return scan(rule, instance, candidates, options);
}

std::vector<AbstentionWitness> scan_group_participation(const Rule& rule, const ElectionInstance& instance,
                                                        const ParticipationOptions& options) {
  const Profile& p = instance.profile;
  std::vector<std::vector<Abstention>> candidates;
  std::vector<Abstention> current;
  // groups strictly increasing along `current`; counts bounded by weight and budget
  std::function<void(std::size_t, Weight)> grow = [&](std::size_t from, Weight used) {
    for (std::size_t g = from; g < p.num_groups(); ++g) {
      for (Weight c = 1; c <= p.group(g).weight && used + c <= options.max_group_size; ++c) {
        if (used + c >= p.total_weight()) break;
        current.push_back({g, c});
        candidates.push_back(current);
        grow(g + 1, used + c);
        current.pop_back();
      }
    }
  };
  grow(0, 0);
  return scan(rule, instance, candidates, options);
}

std::vector<std::size_t> unrepresented_groups(const Profile& profile, const Outcome& outcome) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < profile.num_groups(); ++g) {
    for (const auto& w : outcome.committees()) {
      if (overlap(w, profile.group(g).ballot) == 0) {
        out.push_back(g);
        break;
      }
    }
  }
  return out;
}

std::optional<AbstentionWitness> unrepresented_check(const Rule& rule, const ElectionInstance& instance,
                                                     const ParticipationOptions& options) {
  if (instance.profile.total_weight() <= 1) return std::nullopt;
  const Outcome before = compute_outcome(rule, instance, options.compute);
  const auto groups = unrepresented_groups(instance.profile, before);
  std::vector<std::optional<AbstentionWitness>> found(groups.size());
  parallel_for(groups.size(), options.threads, [&](std::size_t i) {
    const Abstention a{groups[i], 1};
    found[i] = judge(rule, instance, before, std::span<const Abstention>(&a, 1), options);
  });
  for (auto& f : found) {
    if (f) return std::move(*f);
  }
  return std::nullopt;
}

bool is_outcome(const Rule& rule, const ElectionInstance& instance, const Outcome& claimed,
                const ComputeOptions& options) {
  for (const auto& w : claimed.committees()) {
    if (w.size() != instance.k || !std::is_sorted(w.begin(), w.end()) ||
        std::adjacent_find(w.begin(), w.end()) != w.end() ||
        (!w.empty() && w.back() >= instance.profile.num_candidates())) {
      return false;
    }
  }
  return compute_outcome(rule, instance, options) == claimed;
}

unsigned max_approvals(const Outcome& outcome, std::span<const CandidateId> ballot) {
  unsigned best = 0;
  for (const auto& w : outcome.committees()) best = std::max(best, overlap(w, ballot));
  return best;
}

unsigned max_approvals(const Rule& rule, const ElectionInstance& instance, std::span<const CandidateId> ballot,
                       const ComputeOptions& options) {
  return max_approvals(compute_outcome(rule, instance, options), ballot);
}

std::optional<ApprovalChange> single_approval_robustness(const Rule& rule, const ElectionInstance& instance,
                                                         const ParticipationOptions& options) {
  const Profile& p = instance.profile;
  const Outcome before = compute_outcome(rule, instance, options.compute);
  struct Mod {
    std::size_t group;
    CandidateId candidate;
    bool add;
  };
  std::vector<Mod> mods;
  for (bool add : {true, false}) {
    for (std::size_t g = 0; g < p.num_groups(); ++g) {
      const auto& ballot = p.group(g).ballot;
      for (CandidateId c = 0; c < p.num_candidates(); ++c) {
        const bool present = std::binary_search(ballot.begin(), ballot.end(), c);
        if (add == present) continue;
        if (!add && ballot.size() == 1) continue;
        mods.push_back({g, c, add});
      }
    }
  }
  std::vector<std::optional<Outcome>> changed(mods.size());
  std::atomic<std::size_t> first_hit{mods.size()};
  parallel_for(mods.size(), options.threads, [&](std::size_t i) {
    if (i > first_hit.load()) return;  // a smaller index already changed the outcome
    const ElectionInstance modified(modify_approval(p, mods[i].group, mods[i].candidate, mods[i].add), instance.k);
    Outcome after = compute_outcome(rule, modified, options.compute);
    if (after == before) return;
    changed[i] = std::move(after);
    for (std::size_t cur = first_hit.load(); i < cur && !first_hit.compare_exchange_weak(cur, i);) {
    }
  });
  for (std::size_t i = 0; i < mods.size(); ++i) {
    if (changed[i]) return ApprovalChange{mods[i].group, mods[i].candidate, mods[i].add, before, *changed[i]};
  }
  return std::nullopt;
}

}  // namespace noshow
