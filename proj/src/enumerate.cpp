// Tie-branch enumeration for sequential rules.
//
// Values are normalized so that smaller is better: negated marginal score for
// seqThiele, candidate load for seqPhragmén and MES Phase 2, price ρ for MES
// Phase 1. Along every branch these values are monotone (marginals never grow,
// loads and prices never shrink), which the level reduction relies on.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <unordered_map>

#include "noshow/error.hpp"
#include "noshow/sequential.hpp"

namespace noshow {

namespace {

enum class Mode { thiele, phragmen, mes };

using Results = std::shared_ptr<const std::vector<Committee>>;

struct State {
  std::vector<char> chosen;
  Sequence seq;
  std::vector<unsigned> counts;       // seqThiele: approved picks per group
  std::vector<Rational> group;        // loads (Phragmén, MES Phase 2) or budgets (MES Phase 1)
  std::vector<std::optional<Rational>> value;
  bool phase_two = false;
};

class Engine {
 public:
  Engine(const Rule& rule, const ElectionInstance& instance, const EnumerationOptions& options)
      : profile_(instance.profile), k_(instance.k), options_(options) {
    switch (rule.kind()) {
      case Rule::Kind::seq_thiele: mode_ = Mode::thiele; break;
      case Rule::Kind::phragmen: mode_ = Mode::phragmen; break;
      case Rule::Kind::mes: mode_ = Mode::mes; break;
      case Rule::Kind::mes_phase1:
        mode_ = Mode::mes;
        phase1_only_ = true;
        break;
      case Rule::Kind::scoring: throw Error(ErrorCode::invariant, "not a sequential rule");
    }
    if (mode_ == Mode::thiele) {
      const auto s = rule.scoring_for(instance);
      for (unsigned x = 1; x <= k_; ++x) delta_.push_back(s.delta(x));
    }
    build_static();
  }

  EnumerationResult run() {
    State root = initial_state();
    Results res = solve(std::move(root));
    result_.outcome = expand(*res);
    return std::move(result_);
  }

 private:
  const Profile& profile_;
  unsigned k_;
  const EnumerationOptions& options_;
  Mode mode_ = Mode::thiele;
  bool phase1_only_ = false;
  std::vector<Rational> delta_;  // delta_[x-1] = δ(x)

  std::vector<std::vector<CandidateId>> neighbors_;
  std::vector<std::uint32_t> clone_class_;
  std::vector<std::vector<CandidateId>> class_members_;

  std::unordered_map<std::string, Results> memo_;
  std::size_t memo_bytes_ = 0;
  EnumerationResult result_;

  unsigned m() const { return profile_.num_candidates(); }

  void build_static() {
    const unsigned n = m();
    neighbors_.assign(n, {});
    std::vector<std::uint32_t> stamp(n, UINT32_MAX);
    for (CandidateId c = 0; c < n; ++c) {
      for (std::size_t g : profile_.supporters(c)) {
        for (CandidateId d : profile_.group(g).ballot) {
          if (stamp[d] != c) {
            stamp[d] = c;
            neighbors_[c].push_back(d);
          }
        }
      }
    }
    std::map<std::vector<std::size_t>, std::uint32_t> classes;
    clone_class_.resize(n);
    for (CandidateId c = 0; c < n; ++c) {
      const auto sup = profile_.supporters(c);
      std::vector<std::size_t> key(sup.begin(), sup.end());
      auto [it, fresh] = classes.emplace(std::move(key), static_cast<std::uint32_t>(class_members_.size()));
      if (fresh) class_members_.emplace_back();
      clone_class_[c] = it->second;
      class_members_[it->second].push_back(c);
    }
  }

  State initial_state() {
    State st;
    st.chosen.assign(m(), 0);
    st.value.resize(m());
    if (mode_ == Mode::thiele) {
      st.counts.assign(profile_.num_groups(), 0);
    } else if (mode_ == Mode::phragmen) {
      st.group.assign(profile_.num_groups(), Rational(0));
    } else {
      st.group.assign(profile_.num_groups(),
                      Rational(static_cast<long>(k_), static_cast<long>(profile_.total_weight())));
    }
    for (CandidateId c = 0; c < m(); ++c) st.value[c] = evaluate(st, c);
    return st;
  }

  std::optional<Rational> evaluate(const State& st, CandidateId c) const {
    if (mode_ == Mode::thiele) {
      Rational sum;
      for (std::size_t g : profile_.supporters(c)) {
        sum += Rational(static_cast<unsigned long>(profile_.group(g).weight)) * delta_.at(st.counts[g]);
      }
      return -sum;
    }
    if (mode_ == Mode::mes && !st.phase_two) return mes_price(profile_, st.group, c);
    return phragmen_load(profile_, st.group, c);
  }

  void pick(State& st, CandidateId c) {
    const std::optional<Rational> v = st.value[c];
    st.chosen[c] = 1;
    st.seq.push_back(c);
    st.value[c].reset();
    if (mode_ == Mode::thiele) {
      for (std::size_t g : profile_.supporters(c)) ++st.counts[g];
    } else if (v) {
      if (mode_ == Mode::mes && !st.phase_two) {
        for (std::size_t g : profile_.supporters(c)) st.group[g] -= min(*v, st.group[g]);
      } else {
        for (std::size_t g : profile_.supporters(c)) st.group[g] = *v;
      }
    }
    if (st.seq.size() == k_) return;
    for (CandidateId d : neighbors_[c]) {
      if (!st.chosen[d]) st.value[d] = evaluate(st, d);
    }
  }

  void enter_phase_two(State& st) {
    st.phase_two = true;
    // A leftover budget x behaves like a load of −x: budget at time τ is τ − y.
    for (auto& x : st.group) x = -x;
    for (CandidateId c = 0; c < m(); ++c) {
      if (!st.chosen[c]) st.value[c] = evaluate(st, c);
    }
  }

  void count_leaves(std::size_t n) {
    result_.leaves += n;
    if (result_.leaves > options_.max_branches) {
      throw Error(ErrorCode::branch_explosion,
                  "more than " + std::to_string(options_.max_branches) + " sequences explored");
    }
  }

  Results leaf(const State& st, std::string_view why) {
    count_leaves(1);
    if (options_.on_leaf) options_.on_leaf(st.seq, why);
    return std::make_shared<const std::vector<Committee>>(1, make_committee(st.seq));
  }

  // Every way of topping up the committee with `r` unchosen candidates.
  Results fill_all(const State& st, std::string_view why) {
    std::vector<CandidateId> pool;
    for (CandidateId c = 0; c < m(); ++c) {
      if (!st.chosen[c]) pool.push_back(c);
    }
    const auto r = static_cast<unsigned>(k_ - st.seq.size());
    const std::size_t total = binomial_capped(static_cast<unsigned>(pool.size()), r, options_.max_branches);
    count_leaves(total);
    if (options_.on_leaf) options_.on_leaf(st.seq, why);
    auto out = std::make_shared<std::vector<Committee>>();
    std::vector<unsigned> idx(r);
    std::iota(idx.begin(), idx.end(), 0u);
    while (true) {
      Committee w = st.seq;
      for (unsigned i : idx) w.push_back(pool[i]);
      out->push_back(make_committee(std::move(w)));
      int i = static_cast<int>(r) - 1;
      while (i >= 0 && idx[i] == pool.size() - r + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (unsigned j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(out->begin(), out->end());
    return out;
  }

  std::vector<CandidateId> best_set(const State& st, const Rational*& level) const {
    std::vector<CandidateId> best;
    level = nullptr;
    for (CandidateId c = 0; c < m(); ++c) {
      if (st.chosen[c] || !st.value[c]) continue;
      if (!level || *st.value[c] < *level) {
        level = &*st.value[c];
        best.clear();
      }
      if (*st.value[c] == *level) best.push_back(c);
    }
    return best;
  }

  // Picks with disjoint approvers commute, and no value outside the tie can
  // reach the current level again. If the whole tie fits into the remaining
  // slots, one approver-connected component of it can therefore go first.
  std::vector<CandidateId> reduce(const State& st, const std::vector<CandidateId>& tie) const {
    std::vector<CandidateId> pool = tie;
    const std::size_t remaining = k_ - st.seq.size();
    if (options_.reduce_levels && tie.size() > 1 && tie.size() <= remaining) {
      std::vector<std::size_t> parent(tie.size());
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      std::unordered_map<std::size_t, std::size_t> owner;
      for (std::size_t i = 0; i < tie.size(); ++i) {
        for (std::size_t g : profile_.supporters(tie[i])) {
          auto [it, fresh] = owner.emplace(g, i);
          if (!fresh) parent[find(i)] = find(it->second);
        }
      }
      const std::size_t root = find(0);
      pool.clear();
      for (std::size_t i = 0; i < tie.size(); ++i) {
        if (find(i) == root) pool.push_back(tie[i]);
      }
    }
    if (options_.use_clones) {
      std::vector<CandidateId> reps;
      for (CandidateId c : pool) {
        bool smallest = true;
        for (CandidateId d : class_members_[clone_class_[c]]) {
          if (d >= c) break;
          if (!st.chosen[d]) {
            smallest = false;
            break;
          }
        }
        if (smallest) reps.push_back(c);
      }
      pool = std::move(reps);
    }
    return pool;
  }

  // The transposition (a b) fixes the state: every group containing exactly
  // one of them has a partner with the other swapped in, of equal weight and
  // equal state. Groups containing both or neither are fixed anyway.
  bool swappable(const State& st, CandidateId a, CandidateId b) const {
    const auto sup_a = profile_.supporters(a);
    if (sup_a.size() != profile_.supporters(b).size()) return false;
    std::vector<CandidateId> image;
    for (std::size_t g : sup_a) {
      const auto& ballot = profile_.group(g).ballot;
      if (std::binary_search(ballot.begin(), ballot.end(), b)) continue;
      image = ballot;
      std::replace(image.begin(), image.end(), a, b);
      std::sort(image.begin(), image.end());
      const auto h = profile_.find_group(image);
      if (!h || profile_.group(*h).weight != profile_.group(g).weight) return false;
      if (mode_ == Mode::thiele ? st.counts[*h] != st.counts[g] : st.group[*h] != st.group[g]) return false;
    }
    return true;
  }

  // Image of a (clone-canonical) committee under (a b), made canonical again.
  Committee swapped(const Committee& w, CandidateId a, CandidateId b) const {
    Committee out = w;
    for (auto& x : out) {
      if (x == a) {
        x = b;
      } else if (x == b) {
        x = a;
      }
    }
    if (options_.use_clones) {
      std::map<std::uint32_t, unsigned> per_class;
      for (CandidateId c : out) ++per_class[clone_class_[c]];
      out.clear();
      for (const auto& [cls, cnt] : per_class) {
        out.insert(out.end(), class_members_[cls].begin(), class_members_[cls].begin() + cnt);
      }
    }
    return make_committee(std::move(out));
  }

  std::string memo_key(const State& st) const {
    std::string key;
    key.reserve(m() / 8 + 2 + st.group.size() * 16);
    unsigned char byte = 0;
    for (CandidateId c = 0; c < m(); ++c) {
      byte = static_cast<unsigned char>(byte | (st.chosen[c] ? 1u << (c % 8) : 0u));
      if (c % 8 == 7) {
        key.push_back(static_cast<char>(byte));
        byte = 0;
      }
    }
    key.push_back(static_cast<char>(byte));
    key.push_back(st.phase_two ? 'b' : 'a');
    // seqThiele state is a function of the chosen set alone.
    if (mode_ != Mode::thiele) {
      for (const auto& v : st.group) v.append_key(key);
    }
    return key;
  }

  void notify(const State& st, CandidateId c, std::size_t tie_size) const {
    if (!options_.on_transition) return;
    const Rational shown = mode_ == Mode::thiele ? -*st.value[c] : *st.value[c];
    options_.on_transition(Transition{st.seq, c, shown, st.phase_two, tie_size});
  }

  // A deterministic step up to symmetry: `rep` was explored, and each of
  // `images` would have produced the (rep image) swap of the same completions.
  struct Mirror {
    CandidateId rep;
    std::vector<CandidateId> images;
  };

  Results solve(State st) {
    std::vector<Mirror> pending;
    Results res = advance(st, pending);
    if (pending.empty()) return res;
    std::set<Committee> all(res->begin(), res->end());
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
      const std::vector<Committee> base(all.begin(), all.end());
      for (CandidateId c : it->images) {
        ++result_.mirrored;
        for (const auto& w : base) all.insert(swapped(w, it->rep, c));
      }
    }
    return std::make_shared<const std::vector<Committee>>(all.begin(), all.end());
  }

  std::pair<std::vector<CandidateId>, std::vector<std::pair<CandidateId, std::size_t>>> split_symmetric(
      const State& st, const std::vector<CandidateId>& eligible) const {
    std::vector<CandidateId> reps;
    std::vector<std::pair<CandidateId, std::size_t>> images;  // (candidate, index into reps)
    for (CandidateId c : eligible) {
      std::size_t r = 0;
      while (options_.use_symmetry && r < reps.size() && !swappable(st, reps[r], c)) ++r;
      if (options_.use_symmetry && r < reps.size()) {
        images.emplace_back(c, r);
      } else {
        reps.push_back(c);
      }
    }
    return {std::move(reps), std::move(images)};
  }

  Results advance(State& st, std::vector<Mirror>& pending) {
    while (true) {
      if (st.seq.size() == k_) return leaf(st, "complete");
      const Rational* level = nullptr;
      auto tie = best_set(st, level);
      if (tie.empty()) {
        if (mode_ == Mode::mes && !st.phase_two) {
          if (phase1_only_) return leaf(st, "phase-1 end");
          enter_phase_two(st);
          continue;
        }
        result_.unfilled_fallback = true;
        return fill_all(st, "fallback");
      }
      if (mode_ == Mode::thiele && level->is_zero()) return fill_all(st, "saturated");

      const auto eligible = reduce(st, tie);
      if (eligible.size() == 1) {
        notify(st, eligible.front(), tie.size());
        pick(st, eligible.front());
        continue;
      }
      auto [reps, images] = split_symmetric(st, eligible);
      if (reps.size() == 1) {
        Mirror mirror{reps.front(), {}};
        for (const auto& im : images) mirror.images.push_back(im.first);
        pending.push_back(std::move(mirror));
        notify(st, reps.front(), tie.size());
        pick(st, reps.front());
        continue;
      }

      ++result_.branch_nodes;
      std::string key;
      if (options_.memoize) {
        key = memo_key(st);
        if (auto it = memo_.find(key); it != memo_.end()) {
          ++result_.memo_hits;
          return it->second;
        }
      }
      std::set<Committee> merged;
      std::vector<Results> subs;
      for (CandidateId c : reps) {
        State child = st;
        notify(child, c, tie.size());
        pick(child, c);
        subs.push_back(solve(std::move(child)));
        merged.insert(subs.back()->begin(), subs.back()->end());
      }
      for (const auto& [c, r] : images) {
        ++result_.mirrored;
        for (const auto& w : *subs[r]) merged.insert(swapped(w, reps[r], c));
      }
      auto out = std::make_shared<const std::vector<Committee>>(merged.begin(), merged.end());
      if (options_.memoize) {
        std::size_t bytes = key.size() + 64;
        for (const auto& w : *out) bytes += w.size() * sizeof(CandidateId) + 32;
        if (memo_bytes_ + bytes <= options_.memo_bytes) {
          memo_bytes_ += bytes;
          memo_.emplace(std::move(key), out);
        }
      }
      return out;
    }
  }

  // Undo the clone canonicalization: each committee stands for every committee
  // with the same number of members from each clone class.
  Outcome expand(const std::vector<Committee>& canonical) {
    Outcome out;
    if (!options_.use_clones) {
      for (const auto& w : canonical) out.insert(w);
      return out;
    }
    for (const auto& w : canonical) {
      std::map<std::uint32_t, unsigned> per_class;
      for (CandidateId c : w) ++per_class[clone_class_[c]];
      std::vector<std::vector<Committee>> parts;
      std::size_t product = 1;
      for (const auto& [cls, cnt] : per_class) {
        const auto& members = class_members_[cls];
        std::vector<Committee> options;
        std::vector<unsigned> idx(cnt);
        std::iota(idx.begin(), idx.end(), 0u);
        product *= binomial_capped(static_cast<unsigned>(members.size()), cnt, options_.max_committees);
        if (product > options_.max_committees) {
          throw Error(ErrorCode::branch_explosion, "outcome has more than " +
                                                       std::to_string(options_.max_committees) + " committees");
        }
        while (true) {
          Committee part;
          for (unsigned i : idx) part.push_back(members[i]);
          options.push_back(std::move(part));
          int i = static_cast<int>(cnt) - 1;
          while (i >= 0 && idx[i] == members.size() - cnt + i) --i;
          if (i < 0) break;
          ++idx[i];
          for (unsigned j = i + 1; j < cnt; ++j) idx[j] = idx[j - 1] + 1;
        }
        parts.push_back(std::move(options));
      }
      std::vector<std::size_t> pos(parts.size(), 0);
      while (true) {
        Committee full;
        for (std::size_t p = 0; p < parts.size(); ++p) {
          full.insert(full.end(), parts[p][pos[p]].begin(), parts[p][pos[p]].end());
        }
        out.insert(make_committee(std::move(full)));
        std::size_t p = 0;
        while (p < parts.size() && ++pos[p] == parts[p].size()) pos[p++] = 0;
        if (p == parts.size()) break;
      }
      if (out.size() > options_.max_committees) {
        throw Error(ErrorCode::branch_explosion,
                    "outcome has more than " + std::to_string(options_.max_committees) + " committees");
      }
    }
    return out;
  }
};

}  // namespace

EnumerationResult enumerate_outcomes(const Rule& rule, const ElectionInstance& instance,
                                     const EnumerationOptions& options) {
  Engine engine(rule, instance, options);
  return engine.run();
}

}  // namespace noshow
