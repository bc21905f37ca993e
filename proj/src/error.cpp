#include "noshow/error.hpp"

namespace noshow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::empty_ballot: return "EmptyBallot";
    case ErrorCode::bad_candidate: return "BadCandidate";
    case ErrorCode::too_many_abstainers: return "TooManyAbstainers";
    case ErrorCode::all_voters_abstain: return "AllVotersAbstain";
    case ErrorCode::invariant: return "InvariantError";
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::bad_scoring: return "BadScoring";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::branch_explosion: return "BranchExplosion";
    case ErrorCode::invalid_sequence: return "InvalidSequence";
    case ErrorCode::not_laminar: return "NotLaminar";
    case ErrorCode::not_cubic: return "NotCubic";
    case ErrorCode::not_regular: return "NotRegular";
    case ErrorCode::t_bound_violated: return "TBoundViolated";
    case ErrorCode::bad_k: return "BadK";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::no_buyer: return "NoBuyer";
  }
  return "Error";
}

}  // namespace noshow
