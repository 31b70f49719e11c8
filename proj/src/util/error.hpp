#pragma once

#include <stdexcept>
#include <string>

namespace ghostsym {

enum class ErrorCode {
  syntax_error = 1,
  sort_error,
  step_budget_exceeded,
  runtime_fault,
  unknown_label,
  sort_mismatch,
  unsat_assignment,
  unbound_symbol,
  path_budget_exceeded,
  solver_failure,
  backend_error,
  cut_not_on_path,
  multiple_cut_occurrences,
  empty_write_set,
  provider_unavailable,
  unparsable_ghost,
  ghost_runtime_fault,
  not_a_pointer_call,
  contradictory_topology,
  config_error,
  internal_error,
};

const char* error_code_name(ErrorCode c);

// Single exception type for the whole engine; the code tag mirrors the
// C API status values.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::sort_error: return "SortError";
    case ErrorCode::step_budget_exceeded: return "StepBudgetExceeded";
    case ErrorCode::runtime_fault: return "RuntimeFault";
    case ErrorCode::unknown_label: return "UnknownLabel";
    case ErrorCode::sort_mismatch: return "SortMismatch";
    case ErrorCode::unsat_assignment: return "UnsatAssignment";
    case ErrorCode::unbound_symbol: return "UnboundSymbol";
    case ErrorCode::path_budget_exceeded: return "PathBudgetExceeded";
    case ErrorCode::solver_failure: return "SolverFailure";
    case ErrorCode::backend_error: return "BackendError";
    case ErrorCode::cut_not_on_path: return "CutNotOnPath";
    case ErrorCode::multiple_cut_occurrences: return "MultipleCutOccurrences";
    case ErrorCode::empty_write_set: return "EmptyWriteSet";
    case ErrorCode::provider_unavailable: return "ProviderUnavailable";
    case ErrorCode::unparsable_ghost: return "UnparsableGhost";
    case ErrorCode::ghost_runtime_fault: return "GhostRuntimeFault";
    case ErrorCode::not_a_pointer_call: return "NotAPointerCall";
    case ErrorCode::contradictory_topology: return "ContradictoryTopology";
    case ErrorCode::config_error: return "ConfigError";
    case ErrorCode::internal_error: return "InternalError";
  }
  return "Error";
}

}  // namespace ghostsym
