#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "noshow/profile.hpp"
#include "noshow/rational.hpp"

namespace noshow {

/// Exact score table. Thiele functions depend only on x = |ballot ∩ W|;
/// general functions are indexed by (x, y = |ballot|).
class ScoringFunction {
 public:
  enum class Kind { general, thiele };

  /// Thiele function from s(0..k_max); s(0) must be 0, s(1) > 0, nondecreasing, concave.
  static ScoringFunction thiele(std::string name, std::vector<Rational> values);
  /// General function from rows[y][x] for 0 <= x <= y; row 0 may be empty.
  static ScoringFunction general(std::string name, std::vector<std::vector<Rational>> rows);

  Kind kind() const { return kind_; }
  bool is_thiele() const { return kind_ == Kind::thiele; }
  const std::string& name() const { return name_; }

  /// s(x, y). Throws BadScoring if the entry is outside the table.
  const Rational& value(unsigned x, unsigned y) const;
  /// Thiele s(x).
  const Rational& thiele_value(unsigned x) const;
  /// Thiele δ(x) = s(x) − s(x−1) for x >= 1.
  Rational delta(unsigned x) const;

  /// Largest x covered (Thiele) or largest y covered (general).
  unsigned table_limit() const;

 private:
  Kind kind_ = Kind::thiele;
  std::string name_;
  std::vector<Rational> thiele_;
  std::vector<std::vector<Rational>> rows_;
};

/// av | pav | ccav (Thiele, table up to `limit`) or sav (general x/y, rows up to `limit`).
ScoringFunction builtin_scoring(const std::string& name, unsigned limit);

/// Whitespace-separated rationals s(0) s(1) ... .
ScoringFunction read_thiele_file(const std::string& path);
/// Lines "y: s(0,y) s(1,y) ... s(y,y)".
ScoringFunction read_general_file(const std::string& path);

Rational committee_score(const Profile& profile, const Committee& w, const ScoringFunction& s);

struct ScoringOptions {
  std::size_t max_subsets = 1'000'000;
  unsigned threads = 1;
};

/// Exact argmax over all k-subsets. Throws TooLarge beyond max_subsets.
Outcome elect_scoring(const ElectionInstance& instance, const ScoringFunction& s,
                      const ScoringOptions& options = {});

/// binomial(n, r), saturating at `cap + 1`.
std::size_t binomial_capped(unsigned n, unsigned r, std::size_t cap);

}  // namespace noshow
