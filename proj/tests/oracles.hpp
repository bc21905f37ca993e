#pragma once
// Brute-force reference implementations. They expand weighted groups into
// individual voters, enumerate every tie branch without pruning, and share no
// code with the library beyond the Profile container and Rational.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "noshow/profile.hpp"
#include "noshow/rational.hpp"

namespace oracle {

using noshow::CandidateId;
using noshow::Committee;
using noshow::Rational;

struct Voters {
  unsigned m = 0;
  std::vector<std::vector<CandidateId>> ballots;
};

inline Voters expand(const noshow::Profile& p) {
  Voters v;
  v.m = p.num_candidates();
  for (const auto& g : p.groups()) {
    for (noshow::Weight i = 0; i < g.weight; ++i) v.ballots.push_back(g.ballot);
  }
  return v;
}

inline unsigned hits(const std::vector<CandidateId>& ballot, const std::vector<char>& in) {
  unsigned h = 0;
  for (CandidateId c : ballot) h += in[c] ? 1 : 0;
  return h;
}

/// s(x, y) as a plain callback.
using ScoreFn = std::function<Rational(unsigned x, unsigned y)>;

inline ScoreFn av() { return [](unsigned x, unsigned) { return Rational(static_cast<long>(x)); }; }
inline ScoreFn pav() {
  return [](unsigned x, unsigned) {
    Rational s;
    for (unsigned i = 1; i <= x; ++i) s += Rational(1L, static_cast<long>(i));
    return s;
  };
}
inline ScoreFn ccav() { return [](unsigned x, unsigned) { return Rational(x > 0 ? 1 : 0); }; }
inline ScoreFn sav() {
  return [](unsigned x, unsigned y) { return Rational(static_cast<long>(x), static_cast<long>(y)); };
}

/// argmax of Σ_i s(|A_i ∩ W|, |A_i|) over all k-subsets (bitmask enumeration, m <= 20).
inline std::set<Committee> scoring_outcome(const noshow::Profile& p, unsigned k, const ScoreFn& s) {
  const Voters v = expand(p);
  std::set<Committee> best;
  std::optional<Rational> top;
  for (std::uint32_t mask = 0; mask < (1u << v.m); ++mask) {
    if (static_cast<unsigned>(__builtin_popcount(mask)) != k) continue;
    std::vector<char> in(v.m, 0);
    Committee w;
    for (CandidateId c = 0; c < v.m; ++c) {
      if (mask >> c & 1u) {
        in[c] = 1;
        w.push_back(c);
      }
    }
    Rational total;
    for (const auto& b : v.ballots) total += s(hits(b, in), static_cast<unsigned>(b.size()));
    if (!top || total > *top) {
      top = total;
      best.clear();
    }
    if (total == *top) best.insert(w);
  }
  return best;
}

enum class Seq { thiele, phragmen, mes, mes_phase1 };

/// One DFS node of the reference sequential rules.
struct Node {
  std::vector<char> in;
  std::vector<CandidateId> seq;
  std::vector<Rational> money;  // Phragmén: loads; MES: budgets (Phase 1) or loads (Phase 2)
  bool phase_two = false;
};

// MES price over individual budgets: try every breakpoint directly.
inline std::optional<Rational> price(std::vector<Rational> budgets) {
  Rational total;
  for (const auto& b : budgets) total += b;
  if (total < Rational(1) || budgets.empty()) return std::nullopt;
  std::sort(budgets.begin(), budgets.end());
  const long n = static_cast<long>(budgets.size());
  Rational paid_in_full;
  for (long j = 0; j < n; ++j) {
    // the first j voters pay everything; the remaining n-j pay rho each
    Rational rho = (Rational(1) - paid_in_full) / Rational(n - j);
    const bool low_ok = j == 0 || budgets[j - 1] <= rho;
    if (low_ok && rho <= budgets[j]) return rho;
    paid_in_full += budgets[j];
  }
  return std::nullopt;
}

inline Committee as_committee(std::vector<CandidateId> seq) {
  std::sort(seq.begin(), seq.end());
  return seq;
}

struct SeqResult {
  std::set<Committee> outcome;
  bool fallback = false;
  std::set<std::vector<CandidateId>> sequences;
};

/// All committees reachable by some tie-breaking order, no pruning whatsoever.
inline SeqResult sequential_outcome(const noshow::Profile& p, unsigned k, Seq rule, const ScoreFn& s = av(),
                                    std::function<void(const Node&, CandidateId)> on_pick = {}) {
  const Voters v = expand(p);
  const long n = static_cast<long>(v.ballots.size());
  SeqResult out;

  std::function<void(Node)> dfs = [&](Node node) {
    if (node.seq.size() == k) {
      out.outcome.insert(as_committee(node.seq));
      out.sequences.insert(node.seq);
      return;
    }
    // value per candidate (smaller is better); nullopt = not eligible
    std::vector<std::optional<Rational>> val(v.m);
    for (CandidateId c = 0; c < v.m; ++c) {
      if (node.in[c]) continue;
      if (rule == Seq::thiele) {
        Rational gain;
        for (const auto& b : v.ballots) {
          if (!std::count(b.begin(), b.end(), c)) continue;
          const unsigned h = hits(b, node.in);
          gain += s(h + 1, 0) - s(h, 0);
        }
        val[c] = -gain;
      } else if ((rule == Seq::mes || rule == Seq::mes_phase1) && !node.phase_two) {
        std::vector<Rational> budgets;
        for (std::size_t i = 0; i < v.ballots.size(); ++i) {
          if (std::count(v.ballots[i].begin(), v.ballots[i].end(), c)) budgets.push_back(node.money[i]);
        }
        val[c] = price(budgets);
      } else {
        Rational num(1);
        long cnt = 0;
        for (std::size_t i = 0; i < v.ballots.size(); ++i) {
          if (std::count(v.ballots[i].begin(), v.ballots[i].end(), c)) {
            num += node.money[i];
            ++cnt;
          }
        }
        if (cnt > 0) val[c] = num / Rational(cnt);
      }
    }
    std::optional<Rational> best;
    for (const auto& x : val) {
      if (x && (!best || *x < *best)) best = x;
    }
    if (!best) {
      if (rule == Seq::mes && !node.phase_two) {
        node.phase_two = true;
        for (auto& x : node.money) x = -x;
        dfs(node);
        return;
      }
      if (rule == Seq::mes_phase1) {
        out.outcome.insert(as_committee(node.seq));
        out.sequences.insert(node.seq);
        return;
      }
      out.fallback = true;
      for (CandidateId c = 0; c < v.m; ++c) {
        if (node.in[c]) continue;
        Node next = node;
        next.in[c] = 1;
        next.seq.push_back(c);
        dfs(next);
      }
      return;
    }
    if (rule == Seq::thiele && best->is_zero()) {
      // every remaining pick gains nothing: each completion is a tie branch
      for (CandidateId c = 0; c < v.m; ++c) {
        if (node.in[c]) continue;
        Node next = node;
        next.in[c] = 1;
        next.seq.push_back(c);
        if (on_pick) on_pick(node, c);
        dfs(next);
      }
      return;
    }
    for (CandidateId c = 0; c < v.m; ++c) {
      if (!val[c] || *val[c] != *best) continue;
      if (on_pick) on_pick(node, c);
      Node next = node;
      next.in[c] = 1;
      next.seq.push_back(c);
      for (std::size_t i = 0; i < v.ballots.size(); ++i) {
        if (!std::count(v.ballots[i].begin(), v.ballots[i].end(), c)) continue;
        if (rule == Seq::thiele) continue;
        if ((rule == Seq::mes || rule == Seq::mes_phase1) && !node.phase_two) {
          next.money[i] -= noshow::min(*best, next.money[i]);
        } else {
          next.money[i] = *best;
        }
      }
      dfs(next);
    }
  };

  Node root;
  root.in.assign(v.m, 0);
  if (rule == Seq::mes || rule == Seq::mes_phase1) {
    root.money.assign(v.ballots.size(), Rational(static_cast<long>(k), n));
  } else {
    root.money.assign(v.ballots.size(), Rational(0));
  }
  dfs(root);
  return out;
}

// ---------------------------------------------------------------------------
// Random inputs.

/// m candidates, n unit-weight voters with non-empty random ballots.
inline noshow::Profile random_profile(std::mt19937_64& rng, unsigned m, unsigned n) {
  std::vector<noshow::BallotGroup> raw;
  std::uniform_int_distribution<std::uint32_t> mask_dist(1, (1u << m) - 1);
  for (unsigned i = 0; i < n; ++i) {
    const auto mask = mask_dist(rng);
    noshow::BallotGroup g;
    for (CandidateId c = 0; c < m; ++c) {
      if (mask >> c & 1u) g.ballot.push_back(c);
    }
    raw.push_back(std::move(g));
  }
  return noshow::Profile::normalize(m, std::move(raw));
}

/// Independent-set decision by plain subset enumeration (no pruning).
inline bool has_independent_set(unsigned vertices, const std::vector<std::pair<unsigned, unsigned>>& edges,
                                unsigned t) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vertices); ++mask) {
    if (static_cast<unsigned>(__builtin_popcountll(mask)) != t) continue;
    bool ok = true;
    for (auto [a, b] : edges) {
      if ((mask >> a & 1u) && (mask >> b & 1u)) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

/// Exact cover by enumerating subfamilies of size |U|/3 (small instances only).
inline bool has_exact_cover(unsigned universe, const std::vector<std::vector<unsigned>>& sets) {
  const unsigned need = universe / 3;
  std::function<bool(std::size_t, unsigned, std::vector<char>&)> rec = [&](std::size_t i, unsigned taken,
                                                                             std::vector<char>& used) {
    if (taken == need) return std::all_of(used.begin(), used.end(), [](char u) { return u != 0; });
    if (i == sets.size()) return false;
    bool clash = false;
    for (unsigned x : sets[i]) clash = clash || used[x];
    if (!clash) {
      for (unsigned x : sets[i]) used[x] = 1;
      if (rec(i + 1, taken + 1, used)) return true;
      for (unsigned x : sets[i]) used[x] = 0;
    }
    return rec(i + 1, taken, used);
  };
  std::vector<char> used(universe, 0);
  return rec(0, 0, used);
}

}  // namespace oracle
