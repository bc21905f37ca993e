#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include <unistd.h>

#include "noshow/error.hpp"
#include "noshow/rule.hpp"
#include "noshow/scoring.hpp"
#include "oracles.hpp"

using namespace noshow;

namespace {

ElectionInstance concurrence(unsigned k = 2) {
  return ElectionInstance(Profile::normalize(3, {{{0, 1}, 1}, {{1, 2}, 1}, {{0}, 1}, {{2}, 1}}), k);
}

std::string temp_file(const std::string& content) {
  char name[] = "/tmp/noshow_testXXXXXX";
  const int fd = mkstemp(name);
  REQUIRE(fd >= 0);
  close(fd);
  std::ofstream(name) << content;
  return name;
}

}  // namespace

TEST_CASE("builtin score tables") {
  CHECK(builtin_scoring("pav", 5).thiele_value(3) == Rational(11, 6));
  CHECK(builtin_scoring("ccav", 5).thiele_value(5) == Rational(1));
  CHECK(builtin_scoring("av", 5).thiele_value(0) == Rational(0));
  CHECK(builtin_scoring("pav", 5).delta(2) == Rational(1, 2));
  CHECK(builtin_scoring("sav", 4).value(1, 4) == Rational(1, 4));
  CHECK_THROWS_AS(builtin_scoring("xyz", 3), Error);
}

TEST_CASE("score function validation") {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::invariant;
  };
  CHECK(code([] { ScoringFunction::thiele("t", {Rational(0), Rational(1), Rational(3)}); }) == ErrorCode::bad_scoring);
  CHECK(code([] { ScoringFunction::thiele("t", {Rational(1), Rational(2)}); }) == ErrorCode::bad_scoring);
  CHECK(code([] { ScoringFunction::thiele("t", {Rational(0), Rational(0)}); }) == ErrorCode::bad_scoring);
  CHECK(code([] { ScoringFunction::general("g", {{}, {Rational(0), Rational(-1)}}); }) == ErrorCode::bad_scoring);
  // missing table entries are an error, never extrapolated
  auto s = ScoringFunction::general("g", {{}, {Rational(0), Rational(1)}});
  CHECK(code([&] { s.value(1, 2); }) == ErrorCode::bad_scoring);
}

TEST_CASE("score files") {
  const auto thiele = temp_file("0 1 3/2 # truncated PAV\n");
  auto t = read_thiele_file(thiele);
  CHECK(t.thiele_value(2) == Rational(3, 2));
  const auto general = temp_file("1: 0 1\n2: 0 1/2 1\n");
  auto g = read_general_file(general);
  CHECK(g.value(1, 2) == Rational(1, 2));
  CHECK(Rule::parse("thiele:" + thiele).kind() == Rule::Kind::scoring);
  CHECK(Rule::parse("seqthiele:" + thiele).kind() == Rule::Kind::seq_thiele);
  std::remove(thiele.c_str());
  std::remove(general.c_str());
}

TEST_CASE("committee score on the concurrence profile") {
  const auto inst = concurrence();
  CHECK(committee_score(inst.profile, {0, 1}, builtin_scoring("av", 2)) == Rational(4));
  CHECK(committee_score(inst.profile, {0, 2}, builtin_scoring("ccav", 2)) == Rational(4));
  auto lone = Profile::normalize(3, {{{0}, 1}});
  CHECK(committee_score(lone, {1, 2}, builtin_scoring("pav", 2)) == Rational(0));
}

TEST_CASE("elect_scoring examples") {
  const auto inst = concurrence();
  CHECK(elect_scoring(inst, builtin_scoring("av", 2)).committees() == std::set<Committee>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(elect_scoring(inst, builtin_scoring("ccav", 2)).committees() == std::set<Committee>{{0, 2}});
  ElectionInstance tiny(Profile::normalize(2, {{{0}, 1}}), 1);
  CHECK(elect_scoring(tiny, builtin_scoring("av", 1)).committees() == std::set<Committee>{{0}});
}

TEST_CASE("elect_scoring matches brute force on random instances") {
  std::mt19937_64 rng(11);
  const std::vector<std::pair<std::string, oracle::ScoreFn>> rules = {
      {"av", oracle::av()}, {"pav", oracle::pav()}, {"ccav", oracle::ccav()}, {"sav", oracle::sav()}};
  for (int iter = 0; iter < 300; ++iter) {
    const unsigned m = 2 + rng() % 6;
    const unsigned k = 1 + rng() % (m - 1);
    ElectionInstance inst(oracle::random_profile(rng, m, 1 + rng() % 10), k);
    for (const auto& [name, fn] : rules) {
      const auto rule = Rule::builtin_scoring_rule(name);
      const auto got = compute_outcome(rule, inst);
      CHECK(got.committees() == oracle::scoring_outcome(inst.profile, k, fn));
      // scaling the electorate leaves the outcome unchanged
      ElectionInstance scaled(inst.profile.scaled(3), k);
      CHECK(compute_outcome(rule, scaled) == got);
    }
  }
}

TEST_CASE("elect_scoring is deterministic across thread counts") {
  std::mt19937_64 rng(5);
  ElectionInstance inst(oracle::random_profile(rng, 14, 40), 6);
  ScoringOptions one;
  ScoringOptions many;
  many.threads = 4;
  const auto s = builtin_scoring("pav", 6);
  CHECK(elect_scoring(inst, s, one) == elect_scoring(inst, s, many));
}

TEST_CASE("elect_scoring refuses oversized enumerations") {
  std::mt19937_64 rng(3);
  ElectionInstance inst(oracle::random_profile(rng, 12, 5), 6);
  ScoringOptions small;
  small.max_subsets = 100;
  try {
    elect_scoring(inst, builtin_scoring("av", 6), small);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::too_large);
  }
  CHECK(binomial_capped(20, 10, 1'000'000) == 184756);
  CHECK(binomial_capped(40, 20, 1000) == 1001);
}
