#include "noshow/rule.hpp"

#include <algorithm>

#include "noshow/error.hpp"
#include "noshow/sequential.hpp"

namespace noshow {

namespace {

bool is_builtin_thiele(const std::string& name) { return name == "av" || name == "pav" || name == "ccav"; }

}  // namespace

Rule Rule::scoring(ScoringFunction s) {
  Rule r;
  r.kind_ = Kind::scoring;
  r.name_ = s.name();
  r.fixed_ = std::move(s);
  return r;
}

Rule Rule::seq_thiele(ScoringFunction s) {
  if (!s.is_thiele()) throw Error(ErrorCode::bad_scoring, "sequential Thiele rules need a Thiele function");
  Rule r;
  r.kind_ = Kind::seq_thiele;
  r.name_ = "seq" + s.name();
  r.fixed_ = std::move(s);
  return r;
}

Rule Rule::builtin_scoring_rule(const std::string& name) {
  if (!is_builtin_thiele(name) && name != "sav") throw Error(ErrorCode::bad_scoring, "unknown scoring rule " + name);
  Rule r;
  r.kind_ = Kind::scoring;
  r.name_ = name;
  r.builtin_ = name;
  return r;
}

Rule Rule::builtin_seq_thiele(const std::string& name) {
  if (!is_builtin_thiele(name)) throw Error(ErrorCode::bad_scoring, "unknown Thiele function " + name);
  Rule r;
  r.kind_ = Kind::seq_thiele;
  r.name_ = "seq" + name;
  r.builtin_ = name;
  return r;
}

Rule Rule::phragmen() {
  Rule r;
  r.kind_ = Kind::phragmen;
  r.name_ = "phragmen";
  return r;
}

Rule Rule::mes() {
  Rule r;
  r.kind_ = Kind::mes;
  r.name_ = "mes";
  return r;
}

Rule Rule::mes_phase1() {
  Rule r;
  r.kind_ = Kind::mes_phase1;
  r.name_ = "mes:phase1";
  return r;
}

Rule Rule::parse(const std::string& spec) {
  if (spec == "av" || spec == "pav" || spec == "ccav" || spec == "sav") return builtin_scoring_rule(spec);
  if (spec == "seqav" || spec == "seqpav" || spec == "seqccav") return builtin_seq_thiele(spec.substr(3));
  if (spec == "phragmen" || spec == "seqphragmen") return phragmen();
  if (spec == "mes") return mes();
  if (spec == "mes:phase1") return mes_phase1();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const std::string path = spec.substr(colon + 1);
    if (head == "thiele") return scoring(read_thiele_file(path));
    if (head == "general") return scoring(read_general_file(path));
    if (head == "seqthiele") return seq_thiele(read_thiele_file(path));
  }
  throw Error(ErrorCode::parse, "unknown rule '" + spec + "'");
}

ScoringFunction Rule::scoring_for(unsigned k, unsigned max_ballot) const {
  if (fixed_) return *fixed_;
  if (builtin_.empty()) throw Error(ErrorCode::invariant, name_ + " has no scoring function");
  if (builtin_ == "sav") return builtin_scoring("sav", std::max(1u, max_ballot));
  return builtin_scoring(builtin_, std::max(1u, k));
}

ScoringFunction Rule::scoring_for(const ElectionInstance& instance) const {
  unsigned max_ballot = 1;
  for (const auto& g : instance.profile.groups()) {
    max_ballot = std::max(max_ballot, static_cast<unsigned>(g.ballot.size()));
  }
  return scoring_for(instance.k, max_ballot);
}

Outcome compute_outcome(const Rule& rule, const ElectionInstance& instance, const ComputeOptions& options) {
  if (rule.kind() == Rule::Kind::scoring) {
    return elect_scoring(instance, rule.scoring_for(instance), options.scoring);
  }
  static const EnumerationOptions defaults;
  return enumerate_outcomes(rule, instance, options.enumeration ? *options.enumeration : defaults).outcome;
}

}  // namespace noshow
