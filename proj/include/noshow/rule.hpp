#pragma once

#include <optional>
#include <string>

#include "noshow/profile.hpp"
#include "noshow/scoring.hpp"

namespace noshow {

struct EnumerationOptions;

/// An ABC voting rule: a scoring rule, a sequential Thiele rule, seqPhragmén,
/// or the Method of Equal Shares (with or without the Phragmén completion).
class Rule {
 public:
  enum class Kind { scoring, seq_thiele, phragmen, mes, mes_phase1 };

  /// av | pav | ccav | sav | seqav | seqpav | seqccav | phragmen | mes | mes:phase1 |
  /// thiele:<file> | general:<file> | seqthiele:<file>
  static Rule parse(const std::string& spec);

  static Rule scoring(ScoringFunction s);
  static Rule seq_thiele(ScoringFunction s);
  static Rule builtin_scoring_rule(const std::string& name);
  static Rule builtin_seq_thiele(const std::string& name);
  static Rule phragmen();
  static Rule mes();
  static Rule mes_phase1();

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_sequential() const { return kind_ != Kind::scoring; }

  /// The scoring function sized for committees up to `k` and ballots up to
  /// `max_ballot` (builtins are generated on demand).
  ScoringFunction scoring_for(unsigned k, unsigned max_ballot) const;
  ScoringFunction scoring_for(const ElectionInstance& instance) const;

 private:
  Kind kind_ = Kind::scoring;
  std::string name_;
  std::string builtin_;                 // non-empty for builtin score functions
  std::optional<ScoringFunction> fixed_;  // loaded / user-supplied table
};

struct ComputeOptions {
  ScoringOptions scoring;
  const EnumerationOptions* enumeration = nullptr;  // defaults when null
};

/// f(A, k) for any rule.
Outcome compute_outcome(const Rule& rule, const ElectionInstance& instance, const ComputeOptions& options = {});

}  // namespace noshow
