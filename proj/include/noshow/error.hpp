#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace noshow {

enum class ErrorCode {
  empty_ballot,
  bad_candidate,
  too_many_abstainers,
  all_voters_abstain,
  invariant,
  parse,
  bad_scoring,
  too_large,
  branch_explosion,
  invalid_sequence,
  not_laminar,
  not_cubic,
  not_regular,
  t_bound_violated,
  bad_k,
  budget_exceeded,
  no_buyer,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the CLI
// maps all of them to exit status 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace noshow
