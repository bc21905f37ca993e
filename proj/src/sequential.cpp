#include "noshow/sequential.hpp"

#include <algorithm>

#include "noshow/error.hpp"

namespace noshow {

namespace {

Rational as_rational(Weight w) { return Rational(static_cast<unsigned long>(w)); }

std::vector<char> chosen_mask(unsigned m, const Sequence& seq) {
  std::vector<char> chosen(m, 0);
  for (CandidateId c : seq) {
    if (c >= m) throw Error(ErrorCode::bad_candidate, "candidate out of range in sequence");
    if (chosen[c]) throw Error(ErrorCode::invalid_sequence, "sequence repeats candidate " + std::to_string(c));
    chosen[c] = 1;
  }
  return chosen;
}

template <class Value>
std::set<CandidateId> argmin_set(const std::vector<std::optional<Value>>& values) {
  std::set<CandidateId> best;
  const Value* top = nullptr;
  for (CandidateId c = 0; c < values.size(); ++c) {
    if (!values[c]) continue;
    if (!top || *values[c] < *top) {
      top = &*values[c];
      best.clear();
    }
    if (*values[c] == *top) best.insert(c);
  }
  return best;
}

std::set<CandidateId> unchosen(unsigned m, const std::vector<char>& chosen) {
  std::set<CandidateId> out;
  for (CandidateId c = 0; c < m; ++c) {
    if (!chosen[c]) out.insert(c);
  }
  return out;
}

}  // namespace

std::map<CandidateId, Rational> marginal_scores(const Profile& profile, const Committee& partial,
                                                const ScoringFunction& s) {
  std::vector<char> in(profile.num_candidates(), 0);
  for (CandidateId c : partial) in.at(c) = 1;
  std::vector<unsigned> have(profile.num_groups(), 0);
  for (std::size_t g = 0; g < profile.num_groups(); ++g) have[g] = overlap(partial, profile.group(g).ballot);

  std::map<CandidateId, Rational> out;
  for (CandidateId c = 0; c < profile.num_candidates(); ++c) {
    if (in[c]) continue;
    Rational sum;
    for (std::size_t g : profile.supporters(c)) {
      sum += as_rational(profile.group(g).weight) * (s.thiele_value(have[g] + 1) - s.thiele_value(have[g]));
    }
    out.emplace(c, std::move(sum));
  }
  return out;
}

std::set<CandidateId> seq_thiele_query(const Profile& profile, unsigned k, const Sequence& seq,
                                       const ScoringFunction& s) {
  (void)k;
  chosen_mask(profile.num_candidates(), seq);
  std::set<CandidateId> best;
  const Rational* top = nullptr;
  const auto scores = marginal_scores(profile, make_committee(seq), s);
  for (const auto& [c, v] : scores) {
    if (!top || v > *top) {
      top = &v;
      best.clear();
    }
    if (v == *top) best.insert(c);
  }
  return best;
}

PhragmenState PhragmenState::fresh(const Profile& profile) {
  return PhragmenState{{}, std::vector<Rational>(profile.num_groups())};
}

std::optional<Rational> phragmen_load(const Profile& profile, const std::vector<Rational>& loads, CandidateId c) {
  const auto sup = profile.supporters(c);
  if (sup.empty()) return std::nullopt;
  Rational num(1);
  Weight den = 0;
  for (std::size_t g : sup) {
    num += as_rational(profile.group(g).weight) * loads[g];
    den += profile.group(g).weight;
  }
  return num / as_rational(den);
}

std::vector<PhragmenBranch> phragmen_query(const Profile& profile, unsigned k, const PhragmenState& state) {
  (void)k;
  const unsigned m = profile.num_candidates();
  const auto chosen = chosen_mask(m, state.sequence);
  std::vector<std::optional<Rational>> load(m);
  for (CandidateId c = 0; c < m; ++c) {
    if (!chosen[c]) load[c] = phragmen_load(profile, state.loads, c);
  }
  const auto best = argmin_set(load);
  if (best.empty()) throw Error(ErrorCode::no_buyer, "no unchosen candidate has an approver");
  std::vector<PhragmenBranch> out;
  for (CandidateId c : best) {
    PhragmenState next = state;
    next.sequence.push_back(c);
    for (std::size_t g : profile.supporters(c)) next.loads[g] = *load[c];
    out.push_back({c, *load[c], std::move(next)});
  }
  return out;
}

PhragmenMoneyState PhragmenMoneyState::fresh(const Profile& profile) {
  return PhragmenMoneyState{{}, Rational(0), std::vector<Rational>(profile.num_groups())};
}

std::vector<PhragmenMoneyBranch> phragmen_money_query(const Profile& profile, unsigned k,
                                                      const PhragmenMoneyState& state) {
  (void)k;
  const unsigned m = profile.num_candidates();
  const auto chosen = chosen_mask(m, state.sequence);
  std::vector<std::optional<Rational>> when(m);
  for (CandidateId c = 0; c < m; ++c) {
    if (chosen[c] || profile.supporters(c).empty()) continue;
    Rational missing(1);
    Weight rate = 0;
    for (std::size_t g : profile.supporters(c)) {
      missing -= as_rational(profile.group(g).weight) * state.balance[g];
      rate += profile.group(g).weight;
    }
    when[c] = state.clock + missing / as_rational(rate);
  }
  const auto best = argmin_set(when);
  if (best.empty()) throw Error(ErrorCode::no_buyer, "no unchosen candidate has an approver");
  std::vector<PhragmenMoneyBranch> out;
  for (CandidateId c : best) {
    PhragmenMoneyState next = state;
    const Rational elapsed = *when[c] - state.clock;
    for (auto& b : next.balance) b += elapsed;
    for (std::size_t g : profile.supporters(c)) next.balance[g] = Rational(0);
    next.clock = *when[c];
    next.sequence.push_back(c);
    out.push_back({c, *when[c], std::move(next)});
  }
  return out;
}

std::optional<Rational> mes_rho(std::span<const std::pair<Rational, Weight>> budgets, const Rational& target) {
  std::vector<std::pair<Rational, Weight>> sorted(budgets.begin(), budgets.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Rational total;
  Weight weight = 0;
  for (const auto& [x, w] : sorted) {
    total += as_rational(w) * x;
    weight += w;
  }
  if (total < target || weight == 0) return std::nullopt;

  // Payers below the breakpoint give their whole budget; the rest split the remainder.
  Rational remaining = target;
  for (const auto& [x, w] : sorted) {
    const Rational share = remaining / as_rational(weight);
    if (x >= share) return share;
    remaining -= as_rational(w) * x;
    weight -= w;
  }
  throw Error(ErrorCode::invariant, "waterfilling did not terminate");
}

MesState MesState::fresh(const Profile& profile, unsigned k) {
  const Rational share(static_cast<long>(k), static_cast<long>(profile.total_weight()));
  return MesState{{}, std::vector<Rational>(profile.num_groups(), share), Phase::one};
}

std::optional<Rational> mes_price(const Profile& profile, const std::vector<Rational>& budgets, CandidateId c) {
  std::vector<std::pair<Rational, Weight>> pairs;
  for (std::size_t g : profile.supporters(c)) pairs.emplace_back(budgets[g], profile.group(g).weight);
  return mes_rho(pairs);
}

std::vector<MesBranch> mes_phase1_query(const Profile& profile, unsigned k, const MesState& state) {
  (void)k;
  if (state.phase != MesState::Phase::one) return {};
  const unsigned m = profile.num_candidates();
  const auto chosen = chosen_mask(m, state.sequence);
  std::vector<std::optional<Rational>> price(m);
  for (CandidateId c = 0; c < m; ++c) {
    if (!chosen[c]) price[c] = mes_price(profile, state.budgets, c);
  }
  std::vector<MesBranch> out;
  for (CandidateId c : argmin_set(price)) {
    MesState next = state;
    next.sequence.push_back(c);
    for (std::size_t g : profile.supporters(c)) next.budgets[g] -= min(*price[c], next.budgets[g]);
    out.push_back({c, *price[c], std::move(next)});
  }
  return out;
}

namespace {

void phase2_dfs(const Profile& profile, unsigned k, const PhragmenState& state, std::set<Sequence>& out,
                std::size_t max_sequences) {
  if (state.sequence.size() >= k) {
    out.insert(state.sequence);
    if (out.size() > max_sequences) throw Error(ErrorCode::branch_explosion, "too many Phase-2 completions");
    return;
  }
  std::vector<PhragmenBranch> branches;
  try {
    branches = phragmen_query(profile, k, state);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::no_buyer) throw;
    const auto chosen = chosen_mask(profile.num_candidates(), state.sequence);
    for (CandidateId c : unchosen(profile.num_candidates(), chosen)) {
      PhragmenState next = state;
      next.sequence.push_back(c);
      phase2_dfs(profile, k, next, out, max_sequences);
    }
    return;
  }
  for (const auto& b : branches) phase2_dfs(profile, k, b.next, out, max_sequences);
}

}  // namespace

std::set<Sequence> mes_phase2(const Profile& profile, unsigned k, const MesState& state, std::size_t max_sequences) {
  if (state.phase == MesState::Phase::one && !mes_phase1_query(profile, k, state).empty()) {
    throw Error(ErrorCode::invariant, "Phase 1 is not exhausted");
  }
  PhragmenState start{state.sequence, {}};
  // Budget at time τ is τ − y, so a leftover budget x is a load of −x.
  for (const auto& x : state.budgets) start.loads.push_back(-x);
  std::set<Sequence> out;
  phase2_dfs(profile, k, start, out, max_sequences);
  return out;
}

namespace {

std::set<CandidateId> phragmen_from_loads(const Profile& profile, const std::vector<char>& chosen,
                                          const std::vector<Rational>& loads) {
  std::vector<std::optional<Rational>> load(profile.num_candidates());
  for (CandidateId c = 0; c < profile.num_candidates(); ++c) {
    if (!chosen[c]) load[c] = phragmen_load(profile, loads, c);
  }
  auto best = argmin_set(load);
  if (best.empty()) return unchosen(profile.num_candidates(), chosen);
  return best;
}

void buy_with_load(const Profile& profile, std::vector<Rational>& loads, CandidateId c) {
  if (auto l = phragmen_load(profile, loads, c)) {
    for (std::size_t g : profile.supporters(c)) loads[g] = *l;
  }
}

std::set<CandidateId> mes_query(const Profile& profile, unsigned k, const Sequence& seq, bool phase1_only) {
  const unsigned m = profile.num_candidates();
  std::vector<char> chosen(m, 0);
  auto state = MesState::fresh(profile, k);
  auto any_affordable = [&] {
    for (CandidateId c = 0; c < m; ++c) {
      if (!chosen[c] && mes_price(profile, state.budgets, c)) return true;
    }
    return false;
  };
  std::vector<Rational> loads;
  bool phase_two = false;
  for (CandidateId c : seq) {
    if (c >= m || chosen[c]) throw Error(ErrorCode::invalid_sequence, "malformed sequence");
    if (!phase_two) {
      if (auto rho = mes_price(profile, state.budgets, c)) {
        for (std::size_t g : profile.supporters(c)) state.budgets[g] -= min(*rho, state.budgets[g]);
        chosen[c] = 1;
        continue;
      }
      if (any_affordable()) {
        throw Error(ErrorCode::invalid_sequence,
                    "candidate " + std::to_string(c) + " is unaffordable while Phase 1 is still running");
      }
      if (phase1_only) throw Error(ErrorCode::invalid_sequence, "sequence extends past Phase 1");
      phase_two = true;
      for (const auto& x : state.budgets) loads.push_back(-x);
    }
    buy_with_load(profile, loads, c);
    chosen[c] = 1;
  }
  if (!phase_two) {
    std::vector<std::optional<Rational>> price(m);
    for (CandidateId c = 0; c < m; ++c) {
      if (!chosen[c]) price[c] = mes_price(profile, state.budgets, c);
    }
    auto best = argmin_set(price);
    if (!best.empty() || phase1_only) return best;
    for (const auto& x : state.budgets) loads.push_back(-x);
  }
  return phragmen_from_loads(profile, chosen, loads);
}

}  // namespace

QueryFunction query_function(const Rule& rule) {
  switch (rule.kind()) {
    case Rule::Kind::scoring:
      throw Error(ErrorCode::invariant, "scoring rule " + rule.name() + " has no query function");
    case Rule::Kind::seq_thiele:
      return [rule](const Profile& profile, unsigned k, const Sequence& seq) {
        unsigned max_ballot = 1;
        for (const auto& g : profile.groups()) max_ballot = std::max(max_ballot, static_cast<unsigned>(g.ballot.size()));
        return seq_thiele_query(profile, k, seq, rule.scoring_for(k, max_ballot));
      };
    case Rule::Kind::phragmen:
      return [](const Profile& profile, unsigned, const Sequence& seq) {
        const auto chosen = chosen_mask(profile.num_candidates(), seq);
        std::vector<Rational> loads(profile.num_groups());
        for (CandidateId c : seq) buy_with_load(profile, loads, c);
        return phragmen_from_loads(profile, chosen, loads);
      };
    case Rule::Kind::mes:
      return [](const Profile& profile, unsigned k, const Sequence& seq) { return mes_query(profile, k, seq, false); };
    case Rule::Kind::mes_phase1:
      return [](const Profile& profile, unsigned k, const Sequence& seq) { return mes_query(profile, k, seq, true); };
  }
  throw Error(ErrorCode::invariant, "unknown rule kind");
}

bool check_standardness(const QueryFunction& g, const ElectionInstance& instance) {
  const auto scores = approval_scores(instance.profile);
  const Weight top = *std::max_element(scores.begin(), scores.end());
  std::set<CandidateId> winners;
  for (CandidateId c = 0; c < scores.size(); ++c) {
    if (scores[c] == top) winners.insert(c);
  }
  return g(instance.profile, instance.k, {}) == winners;
}

bool check_standardness(const Rule& rule, const ElectionInstance& instance) {
  return check_standardness(query_function(rule), instance);
}

ConcurrenceVerdict check_concurrence(const QueryFunction& g, const Profile& profile, unsigned k, const Sequence& seq,
                                     CandidateId c, CandidateId d) {
  const unsigned m = profile.num_candidates();
  if (c >= m || d >= m || c == d) return ConcurrenceVerdict::premise_fails;
  const auto chosen = chosen_mask(m, seq);
  if (chosen[c] || chosen[d]) return ConcurrenceVerdict::premise_fails;
  for (const auto& grp : profile.groups()) {
    if (grp.ballot.size() > 2) return ConcurrenceVerdict::premise_fails;
  }
  const auto scores = approval_scores(profile);
  for (Weight s : scores) {
    if (s != scores[0] || s * k > profile.total_weight()) return ConcurrenceVerdict::premise_fails;
  }
  auto pair_count = [&](CandidateId x, CandidateId y) -> Weight {
    const CandidateId ballot[2] = {std::min(x, y), std::max(x, y)};
    const auto gi = profile.find_group(ballot);
    return gi ? profile.group(*gi).weight : 0;
  };
  bool strict = false;
  for (CandidateId cj : seq) {
    const Weight with_d = pair_count(cj, d);
    const Weight with_c = pair_count(cj, c);
    if (with_d < with_c) return ConcurrenceVerdict::premise_fails;
    strict = strict || with_d > with_c;
  }
  if (!strict) return ConcurrenceVerdict::premise_fails;
  return g(profile, k, seq).count(d) ? ConcurrenceVerdict::violated : ConcurrenceVerdict::holds;
}

ConcurrenceVerdict check_concurrence(const Rule& rule, const Profile& profile, unsigned k, const Sequence& seq,
                                     CandidateId c, CandidateId d) {
  return check_concurrence(query_function(rule), profile, k, seq, c, d);
}

bool continuity_refuted_at(const QueryFunction& g, const Profile& a, const Profile& a_prime, unsigned k,
                           const Sequence& seq, Weight lambda) {
  const Profile combined = a.scaled(lambda).plus(a_prime);
  const auto big = g(combined, k, seq);
  const auto base = g(a, k, seq);
  return !std::includes(base.begin(), base.end(), big.begin(), big.end());
}

}  // namespace noshow
