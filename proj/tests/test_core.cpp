#include <doctest.h>

#include <random>

#include "noshow/error.hpp"
#include "noshow/profile.hpp"
#include "noshow/profile_io.hpp"
#include "noshow/rational.hpp"
#include "oracles.hpp"

using namespace noshow;

namespace {

Profile concurrence() {
  // a=0 b=1 c=2
  return Profile::normalize(3, {{{0, 1}, 1}, {{1, 2}, 1}, {{0}, 1}, {{2}, 1}});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invariant;
}

}  // namespace

TEST_CASE("rational stays canonical and exact") {
  Rational a(2, 4);
  CHECK(a.str() == "1/2");
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(1, -2).str() == "-1/2");
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK(Rational::parse("53/918") == Rational(53, 918));
  CHECK(Rational::parse("-7").str() == "-7");
  CHECK(code_of([] { Rational::parse("1/0"); }) == ErrorCode::parse);
  CHECK(code_of([] { Rational::parse("x"); }) == ErrorCode::parse);
  CHECK(code_of([] { Rational(1) / Rational(0); }) == ErrorCode::invariant);
  std::string k1, k2;
  Rational(6, 4).append_key(k1);
  Rational(3, 2).append_key(k2);
  CHECK(k1 == k2);
}

TEST_CASE("normalize_profile merges duplicates and orders groups") {
  auto p = normalize_profile(2, {{{0}, 1}, {{0}, 2}});
  REQUIRE(p.num_groups() == 1);
  CHECK(p.group(0).weight == 3);

  auto q = normalize_profile(3, {{{1, 2}, 1}, {{0, 1}, 1}});
  REQUIRE(q.num_groups() == 2);
  CHECK(q.group(0).ballot == std::vector<CandidateId>{0, 1});
  CHECK(q.group(1).ballot == std::vector<CandidateId>{1, 2});

  CHECK(code_of([] { normalize_profile(2, {{{}, 1}}); }) == ErrorCode::empty_ballot);
  CHECK(code_of([] { normalize_profile(2, {{{2}, 1}}); }) == ErrorCode::bad_candidate);

  auto unsorted = normalize_profile(3, {{{2, 0, 2}, 1}});
  CHECK(unsorted.group(0).ballot == std::vector<CandidateId>{0, 2});
}

TEST_CASE("abstain decrements and removes groups") {
  auto p = normalize_profile(2, {{{0}, 3}, {{1}, 1}});
  auto q = abstain(p, 0, 1);
  CHECK(q.group(0).weight == 2);
  auto r = abstain(p, 1, 1);
  CHECK(r.num_groups() == 1);
  CHECK(r.group(0).ballot == std::vector<CandidateId>{0});
  CHECK(code_of([&] { abstain(p, 1, 2); }) == ErrorCode::too_many_abstainers);
}

TEST_CASE("approval scores") {
  auto scores = approval_scores(concurrence());
  CHECK(scores == std::vector<Weight>{2, 2, 2});
  auto p = normalize_profile(3, {{{0, 1}, 5}});
  CHECK(approval_scores(p) == std::vector<Weight>{5, 5, 0});
}

TEST_CASE("core invariants on random profiles") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    const unsigned m = 2 + rng() % 5;
    auto p = oracle::random_profile(rng, m, 1 + rng() % 8);
    // normalize is idempotent
    std::vector<BallotGroup> raw(p.groups().begin(), p.groups().end());
    CHECK(Profile::normalize(m, raw) == p);
    // Σ scores = Σ weight·|ballot|
    Weight lhs = 0, rhs = 0;
    for (auto s : approval_scores(p)) lhs += s;
    for (const auto& g : p.groups()) rhs += g.weight * g.ballot.size();
    CHECK(lhs == rhs);
    // abstaining twice equals abstaining two at once
    for (std::size_t g = 0; g < p.num_groups(); ++g) {
      if (p.group(g).weight < 2) continue;
      auto once = abstain(p, g, 1);
      auto again = abstain(once, *once.find_group(p.group(g).ballot), 1);
      CHECK(again == abstain(p, g, 2));
    }
  }
}

TEST_CASE("election instance validates k") {
  CHECK(code_of([] { ElectionInstance(normalize_profile(2, {{{0}, 1}}), 2); }) == ErrorCode::invariant);
  CHECK(code_of([] { ElectionInstance(normalize_profile(2, {{{0}, 1}}), 0); }) == ErrorCode::invariant);
  CHECK_NOTHROW(ElectionInstance(normalize_profile(2, {{{0}, 1}}), 1));
}

TEST_CASE("modify_approval splits one voter off") {
  auto p = normalize_profile(3, {{{0}, 2}});
  auto q = modify_approval(p, 0, 1, true);
  REQUIRE(q.num_groups() == 2);
  CHECK(q.group(0).ballot == std::vector<CandidateId>{0});
  CHECK(q.group(0).weight == 1);
  CHECK(q.group(1).ballot == std::vector<CandidateId>{0, 1});
  CHECK(code_of([&] { modify_approval(p, 0, 0, false); }) == ErrorCode::empty_ballot);
}

TEST_CASE("text and JSON profile formats") {
  auto inst = parse_instance("3 2\n1: 0 1\n1: 1 2\n1: 0\n1: 2\n");
  CHECK(inst.k == 2);
  CHECK(inst.profile == concurrence());

  auto with_comments = parse_instance("# header\n3 2 # m k\n\n2: 0 # two voters\n1: 1 2\n");
  CHECK(with_comments.profile.group(0).weight == 2);

  CHECK(code_of([] { parse_instance("2 2\n1: 0\n"); }) == ErrorCode::invariant);
  try {
    parse_instance("3 1\n1: 0\nx: 1\n");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(code_of([] { parse_instance("3 1\n1: 5\n"); }) == ErrorCode::parse);

  const auto json = instance_to_json(inst);
  const auto back = parse_instance(json.dump());
  CHECK(back.profile == inst.profile);
  CHECK(back.k == inst.k);
  CHECK(parse_instance(format_instance_text(inst)).profile == inst.profile);
}

TEST_CASE("outcome helpers") {
  Outcome o;
  o.insert({0, 1});
  o.insert({0, 2});
  CHECK(o.all_contain(0));
  CHECK_FALSE(o.all_contain(1));
  CHECK(o.any_contains(2));
  CHECK(outcome_from_json(outcome_to_json(o)) == o);
}
