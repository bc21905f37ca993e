#include <doctest.h>

#include <functional>
#include <random>

#include "noshow/error.hpp"
#include "noshow/generators.hpp"
#include "noshow/participation.hpp"
#include "noshow/sequential.hpp"
#include "oracles.hpp"

using namespace noshow;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invariant;
}

Weight approval_score(const Profile& p, CandidateId c) {
  Weight s = 0;
  for (const auto& g : p.groups()) {
    if (std::binary_search(g.ballot.begin(), g.ballot.end(), c)) s += g.weight;
  }
  return s;
}

std::vector<unsigned> counts(const Outcome& o, const std::vector<CandidateId>& ballot) {
  std::vector<unsigned> out;
  for (const auto& w : o.committees()) out.push_back(overlap(w, ballot));
  return out;
}

// Six elements, each in three sets, no two sets disjoint: no exact cover.
const std::vector<std::array<unsigned, 3>> kNoCover6{{0, 1, 2}, {0, 1, 3}, {0, 4, 5},
                                                     {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};

// The non-coverable block on elements 0..5 next to a planted instance.
Rx3cInstance no_instance(unsigned t, std::uint64_t seed) {
  Rx3cInstance inst;
  inst.t = t;
  inst.sets = kNoCover6;
  for (auto s : planted_rx3c(t - 2, seed, 0u).sets) inst.sets.push_back({s[0] + 6, s[1] + 6, s[2] + 6});
  return inst;
}

// Random 3-regular 3-uniform family: three copies of U dealt into triples.
std::optional<Rx3cInstance> random_regular(unsigned t, std::mt19937_64& rng) {
  std::vector<unsigned> slots;
  for (unsigned x = 0; x < 3 * t; ++x) slots.insert(slots.end(), 3, x);
  std::shuffle(slots.begin(), slots.end(), rng);
  Rx3cInstance inst;
  inst.t = t;
  for (std::size_t i = 0; i < slots.size(); i += 3) {
    std::array<unsigned, 3> s{slots[i], slots[i + 1], slots[i + 2]};
    std::sort(s.begin(), s.end());
    if (s[0] == s[1] || s[1] == s[2]) return std::nullopt;
    inst.sets.push_back(s);
  }
  return inst;
}

std::vector<std::vector<unsigned>> as_lists(const Rx3cInstance& inst) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& s : inst.sets) out.push_back({s[0], s[1], s[2]});
  return out;
}

bool is_exact_cover(const Rx3cInstance& inst, const std::vector<std::size_t>& chosen) {
  std::vector<int> hit(3 * inst.t, 0);
  for (std::size_t j : chosen) {
    for (unsigned x : inst.sets.at(j)) ++hit[x];
  }
  return std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
}

}  // namespace

TEST_CASE("concurrence profile") {
  const ElectionInstance inst = concurrence_profile();
  const Profile& p = inst.profile;
  CHECK(p.num_groups() == 4);
  CHECK(p.num_candidates() == 3);
  CHECK(inst.k == 2);
  for (CandidateId c = 0; c < 3; ++c) CHECK(approval_score(p, c) == 2);
  const auto a = *p.find_label("a");
  const auto c = *p.find_label("c");
  CHECK(seq_thiele_query(p, 2, {c}, builtin_scoring("pav", 2)) == std::set<CandidateId>{a});
}

TEST_CASE("sequential family layout") {
  CHECK(code_of([] { theorem2_layout(2); }) == ErrorCode::bad_k);
  CHECK(code_of([] { theorem2_family(2, 5); }) == ErrorCode::bad_k);

  const Theorem2Layout l3 = theorem2_layout(3);
  CHECK(l3.a == std::vector<CandidateId>{0, 1});
  CHECK(l3.b == std::vector<CandidateId>{2, 3});
  CHECK(l3.d == CandidateId{4});
  CHECK(l3.via_a1 == Committee{0, 2, 3});
  CHECK(l3.via_br == Committee{0, 1, 3});
  CHECK_FALSE(theorem2_layout(4).d.has_value());

  const Profile base3 = theorem2_base(3);
  CHECK(base3.labels() == std::vector<std::string>{"a1", "a2", "b1", "b2", "d"});
}

TEST_CASE("base profile: equal approval scores and enough voters") {
  for (unsigned k : {3u, 4u, 5u, 6u}) {
    CAPTURE(k);
    const Profile base = theorem2_base(k);
    Theorem2Layout l = theorem2_layout(k);
    const Weight first = approval_score(base, 0);
    for (CandidateId c = 0; c < base.num_candidates(); ++c) CHECK(approval_score(base, c) == first);
    CHECK(base.total_weight() >= k * first);
    for (const auto& g : base.groups()) CHECK(g.ballot.size() <= 2);
    // the two excluded pairs carry no pair ballot
    const unsigned r = k - 1;
    CHECK_FALSE(base.find_group(std::vector<CandidateId>{l.a[0], l.b[0]}).has_value());
    CHECK_FALSE(base.find_group(std::vector<CandidateId>{l.a[r - 1], l.b[r - 1]}).has_value());
  }
  // recomputed by hand from the pair multiplicities
  CHECK(approval_score(theorem2_base(3), 0) == 12);
  CHECK(approval_score(theorem2_base(4), 0) == 11);
}

TEST_CASE("family is λ copies of the base plus four voters") {
  for (unsigned k : {3u, 4u}) {
    const Theorem2Layout l = theorem2_layout(k);
    for (Weight lambda : {1u, 2u, 7u}) {
      const ReducedInstance r = theorem2_family(k, lambda);
      const Profile extra = Profile::normalize(
          r.instance.profile.num_candidates(),
          {{l.a, 1}, {l.b, 1}, {{l.a.front()}, 1}, {{l.b.back()}, 1}});
      const Profile expected = theorem2_base(k).scaled(lambda).plus(extra);
      CHECK(r.instance.profile.groups().size() == expected.groups().size());
      for (std::size_t g = 0; g < expected.num_groups(); ++g) CHECK(r.instance.profile.group(g) == expected.group(g));
      CHECK(r.abstainer_ballot() == l.a);
      CHECK(r.instance.k == k);
    }
  }
}

TEST_CASE("λ-search finds the two-committee / one-committee structure") {
  const std::vector<Rule> rules{Rule::builtin_seq_thiele("pav"), Rule::builtin_seq_thiele("ccav"), Rule::phragmen(),
                                Rule::mes()};
  for (const auto& rule : rules) {
    for (unsigned k : {3u, 4u}) {
      CAPTURE(rule.name());
      CAPTURE(k);
      const auto res = theorem2_lambda_search(rule, k, 200);
      REQUIRE(res.lambda.has_value());
      const Theorem2Layout l = theorem2_layout(k);
      CHECK(res.before == Outcome(std::set<Committee>{l.via_a1, l.via_br}));
      CHECK(res.after == Outcome(std::set<Committee>{l.via_br}));
      // the abstainer ends up with k-1 approved members in place of a committee with one
      const auto before = counts(res.before, l.a);
      CHECK(*std::min_element(before.begin(), before.end()) == 1);
      CHECK(counts(res.after, l.a) == std::vector<unsigned>{k - 1});
      const ReducedInstance ri = theorem2_family(k, *res.lambda);
      const auto w = benefits_by_abstaining(rule, ri.instance, ri.abstainer);
      REQUIRE(w);
      CHECK(w->after == res.after);
      // smaller λ fail the structure check
      for (Weight lambda = 1; lambda < *res.lambda; ++lambda) {
        const ReducedInstance small = theorem2_family(k, lambda);
        const Outcome f = compute_outcome(rule, small.instance);
        const Outcome g = compute_outcome(rule, ElectionInstance(abstain(small.instance.profile, small.abstainer, 1), k));
        CHECK_FALSE((f == res.before && g == res.after));
      }
    }
  }
}

TEST_CASE("sequential family outcomes match the reference enumerator") {
  for (unsigned k : {3u, 4u}) {
    for (Weight lambda : {1u, 2u, 3u}) {
      const ReducedInstance r = theorem2_family(k, lambda);
      const Profile& p = r.instance.profile;
      CHECK(compute_outcome(Rule::phragmen(), r.instance).committees() ==
            oracle::sequential_outcome(p, k, oracle::Seq::phragmen).outcome);
      CHECK(compute_outcome(Rule::builtin_seq_thiele("pav"), r.instance).committees() ==
            oracle::sequential_outcome(p, k, oracle::Seq::thiele, oracle::pav()).outcome);
    }
  }
}

TEST_CASE("MES counterexample instance and its first prices") {
  const ReducedInstance r = mes_unrep_instance();
  CHECK(r.instance.profile.total_weight() == 51);
  CHECK(r.instance.profile.num_candidates() == 7);
  CHECK(r.instance.k == 5);
  std::vector<Rational> prices;
  EnumerationOptions opts;
  opts.on_transition = [&](const Transition& t) {
    if (t.prefix.empty() || prices.size() < 3) {
      if (t.prefix.size() == prices.size()) prices.push_back(t.value);
    }
  };
  enumerate_outcomes(Rule::mes(), r.instance, opts);
  REQUIRE(prices.size() == 3);
  CHECK(prices[0] == Rational(1, 20));
  CHECK(prices[1] == Rational(1, 20));
  CHECK(prices[2] == Rational(53, 918));
}

TEST_CASE("cubic graphs") {
  CHECK(CubicGraph::k4().edges.size() == 6);
  CHECK(CubicGraph::k33().edges.size() == 9);
  CHECK(CubicGraph::q3().edges.size() == 12);
  CHECK(code_of([] { CubicGraph::make(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }) == ErrorCode::not_cubic);
  CHECK(code_of([] { CubicGraph::make(4, {{0, 1}, {0, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }) == ErrorCode::not_cubic);
  const CubicGraph g = CubicGraph::parse("# K4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  CHECK(g.vertices == 4);
  CHECK(g.edges == CubicGraph::k4().edges);
  CHECK(code_of([] { CubicGraph::parse("0 1\n0 x\n"); }) == ErrorCode::parse);
}

TEST_CASE("independent-set oracle against plain enumeration") {
  for (const auto& g : {CubicGraph::k4(), CubicGraph::k33(), CubicGraph::q3()}) {
    for (unsigned t = 0; t <= g.vertices; ++t) {
      CAPTURE(g.vertices);
      CAPTURE(t);
      CHECK(independent_set_oracle(g, t) == oracle::has_independent_set(g.vertices, g.edges, t));
    }
  }
  CHECK_FALSE(independent_set_oracle(CubicGraph::k4(), 2));
  CHECK(independent_set_oracle(CubicGraph::k33(), 3));
  CHECK(independent_set_oracle(CubicGraph::q3(), 4));
  CHECK(code_of([] { independent_set_oracle(CubicGraph::q3(), 2, 6); }) == ErrorCode::too_large);
}

TEST_CASE("α and gadget block size") {
  const ScoringFunction pav = builtin_scoring("pav", 12);
  CHECK(indset_alpha(pav) == 8);
  CHECK(indset_alpha(builtin_scoring("ccav", 12)) == 4);
  CHECK(code_of([] { indset_alpha(builtin_scoring("av", 12)); }) == ErrorCode::bad_scoring);
  // minimality by direct search over both conditions
  for (const ScoringFunction& s : {pav, builtin_scoring("ccav", 12)}) {
    const Rational d1 = s.delta(1);
    const Rational d2 = s.delta(2);
    Weight alpha = 1;
    while (!((Rational(static_cast<long>(alpha), 4) * (d1 - d2) / d1).is_integer() &&
             Rational(static_cast<long>(alpha)) * (d1 - d2) >= d1)) {
      ++alpha;
    }
    CHECK(indset_alpha(s) == alpha);
  }
  // (8/2)(4^4 − (3/2)·4^3·(1/2)) = 4·(256 − 48)
  CHECK(indset_gadget_weight(pav, 4, 2) == 832);
  CHECK(indset_gadget_weight(pav, 6, 2) == 4 * (1296 - 162));
}

TEST_CASE("independent-set reduction: structure") {
  const ScoringFunction pav = builtin_scoring("pav", 12);
  for (const auto& g : {CubicGraph::k4(), CubicGraph::k33(), CubicGraph::q3()}) {
    const ReducedInstance r = indset_reduction(g, 2, pav);
    CHECK(r.instance.k == g.vertices + 4);
    CHECK(r.instance.profile.num_candidates() == g.vertices + 5);
    CHECK(r.abstainer_ballot() == std::vector<CandidateId>{r.candidate("g1"), r.candidate("g3")});
    for (const auto& row : indset_audit(g, 2, pav, r)) {
      CAPTURE(row.what);
      CHECK(row.ok());
    }
  }
  // |E| = 3t leaves the {g2} block empty
  const ReducedInstance k4 = indset_reduction(CubicGraph::k4(), 2, pav);
  CHECK_FALSE(k4.instance.profile.find_group(std::vector<CandidateId>{k4.candidate("g2")}).has_value());
  CHECK(code_of([&] { indset_reduction(CubicGraph::k4(), 3, pav); }) == ErrorCode::invariant);
  // δ = 1, 1/2, 0: the first decay step is not larger than the second
  const ScoringFunction flat = ScoringFunction::thiele("flat", {Rational(0), Rational(1), Rational(3, 2), Rational(3, 2)});
  CHECK(code_of([&] { indset_reduction(CubicGraph::k4(), 2, flat); }) == ErrorCode::bad_scoring);
}

TEST_CASE("indset audit notices a tampered profile") {
  const ScoringFunction pav = builtin_scoring("pav", 12);
  ReducedInstance r = indset_reduction(CubicGraph::k33(), 2, pav);
  r.instance.profile = abstain(r.instance.profile, r.abstainer, 1);
  const auto rows = indset_audit(CubicGraph::k33(), 2, pav, r);
  CHECK(std::count_if(rows.begin(), rows.end(), [](const AuditRow& row) { return !row.ok(); }) == 1);
}

TEST_CASE("independent-set reduction end to end under seqPAV") {
  const ScoringFunction pav = builtin_scoring("pav", 12);
  const Rule rule = Rule::builtin_seq_thiele("pav");
  for (const auto& g : {CubicGraph::k4(), CubicGraph::k33(), CubicGraph::q3()}) {
    CAPTURE(g.vertices);
    const ReducedInstance r = indset_reduction(g, 2, pav);
    const auto w = benefits_by_abstaining(rule, r.instance, r.abstainer);
    CHECK(w.has_value() == independent_set_oracle(g, 2));

    Committee common{r.candidate("g1"), r.candidate("g2"), r.candidate("b")};
    for (unsigned v = 0; v < g.vertices; ++v) common.push_back(r.candidate("v" + std::to_string(v)));
    auto with = [&](const char* label) {
      Committee w2 = common;
      w2.push_back(r.candidate(label));
      return make_committee(w2);
    };
    const Outcome before = compute_outcome(rule, r.instance);
    CHECK(before == Outcome(std::set<Committee>{with("g4")}));
    if (w) CHECK(w->after == Outcome(std::set<Committee>{with("g3"), with("g4")}));
  }
}

TEST_CASE("RX3C instances") {
  const Rx3cInstance one = planted_rx3c(1, 5);
  CHECK(one.sets.size() == 3);
  for (const auto& s : one.sets) CHECK(s == std::array<unsigned, 3>{0, 1, 2});
  for (unsigned t : {2u, 5u, 12u}) {
    for (std::optional<unsigned> mixed : {std::optional<unsigned>{}, std::optional<unsigned>{0u},
                                          std::optional<unsigned>{t / 3}}) {
      const Rx3cInstance inst = planted_rx3c(t, 17, mixed);
      CHECK_NOTHROW(inst.validate());
      CHECK(planted_rx3c(t, 17, mixed).sets == inst.sets);
      const auto cover = exact_cover_oracle(inst);
      REQUIRE(cover);
      CHECK(cover->size() == t);
      CHECK(is_exact_cover(inst, *cover));
    }
  }
  const Rx3cInstance p = planted_rx3c(4, 3);
  CHECK(Rx3cInstance::parse(p.format()).sets == p.sets);
  CHECK(code_of([] { Rx3cInstance::parse("0 1 2\n0 1 2\n"); }) == ErrorCode::not_regular);
  CHECK(code_of([] { Rx3cInstance::parse("0 1\n"); }) == ErrorCode::parse);
  CHECK(code_of([] { planted_rx3c(4, 1, 2u); }) == ErrorCode::invariant);
}

TEST_CASE("exact-cover oracle against subfamily enumeration") {
  Rx3cInstance none;
  none.t = 2;
  none.sets = kNoCover6;
  none.validate();
  CHECK_FALSE(exact_cover_oracle(none).has_value());
  CHECK_FALSE(oracle::has_exact_cover(6, as_lists(none)));

  std::mt19937_64 rng(77);
  int yes = 0;
  int no = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const unsigned t = 2 + static_cast<unsigned>(trial % 4);
    const auto inst = random_regular(t, rng);
    if (!inst) continue;
    const auto cover = exact_cover_oracle(*inst);
    CHECK(cover.has_value() == oracle::has_exact_cover(3 * t, as_lists(*inst)));
    if (cover) CHECK(is_exact_cover(*inst, *cover));
    (cover ? yes : no) += 1;
  }
  // both answers occur, so the agreement is not vacuous
  CHECK(yes > 0);
  CHECK(no > 0);
  CHECK(code_of([] { exact_cover_oracle(planted_rx3c(60, 1), 10); }) == ErrorCode::budget_exceeded);
}

TEST_CASE("RX3C bound and audit") {
  CHECK(rx3c_min_t() == 92);
  CHECK_FALSE(rx3c_t_bound(91));
  CHECK(rx3c_t_bound(92));
  // 92^3 = 778688 >= 90·92^2 + 120·92 + 60 = 772860; 91^3 = 753571 < 756330
  CHECK(code_of([] { rx3c_reduction(planted_rx3c(91, 1, 0u)); }) == ErrorCode::t_bound_violated);
  for (unsigned t : {92u, 100u}) {
    const Rx3cInstance inst = planted_rx3c(t, 3);
    const ReducedInstance r = rx3c_reduction(inst);
    const Weight t3 = static_cast<Weight>(t) * t * t;
    CHECK(r.instance.k == 4 * t + 5);
    CHECK(r.instance.profile.num_candidates() == 4 * t + 8);
    CHECK(r.instance.profile.total_weight() == 10 * t3 * (4 * t + 5));
    const auto g14 = r.instance.profile.find_group(std::vector<CandidateId>{r.candidate("g1"), r.candidate("g4")});
    REQUIRE(g14);
    CHECK(r.instance.profile.group(*g14).weight == 4 * t3 + 30 * t + 13);
    CHECK(r.abstainer_ballot() ==
          std::vector<CandidateId>{r.candidate("g1"), r.candidate("g2"), r.candidate("g3")});
    CHECK(r.instance.profile.group(r.abstainer).weight == 1);
    for (const auto& row : rx3c_audit(inst, r)) {
      CAPTURE(row.what);
      CHECK(row.ok());
    }
  }
}

TEST_CASE("RX3C reduction end to end on small-gadget instances") {
  // One planted cover everywhere: Yes; the non-coverable block: No.
  const ReducedInstance yes = rx3c_reduction(planted_rx3c(92, 7, 0u));
  const ReducedInstance no = rx3c_reduction(no_instance(92, 3));
  CHECK_FALSE(exact_cover_oracle(no_instance(92, 3)).has_value());
  const std::vector<CandidateId> b{yes.candidate("b1"), yes.candidate("b2")};
  for (const Rule& rule : {Rule::mes_phase1(), Rule::mes(), Rule::phragmen()}) {
    CAPTURE(rule.name());
    const auto w = benefits_by_abstaining(rule, yes.instance, yes.abstainer);
    REQUIRE(w);
    CHECK(w->after.any_contains(yes.candidate("g4")));
    CHECK_FALSE(w->before.any_contains(yes.candidate("g4")));
    CHECK_FALSE(benefits_by_abstaining(rule, no.instance, no.abstainer).has_value());
    if (rule.kind() != Rule::Kind::mes_phase1) {
      for (const auto& c : w->before.committees()) CHECK(overlap(c, b) == 2);
    }
  }
}
