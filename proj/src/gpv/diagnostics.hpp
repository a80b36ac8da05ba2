#pragma once

#include <stdexcept>
#include <string>

namespace gpv {

// Error codes shared across the toolkit. The names are part of the tool's
// contract: the CLI prints them verbatim and tests match on them.
enum class Err {
  Syntax,
  NonSimpleLHS,
  UndeclaredVariable,
  RHSVariableNotInLHS,
  RecursiveProcedure,
  MissingMain,
  TypeMismatch,
  NotInjective,
  ResidualAuxTerm,
  NotLoopFree,
  NotIteration,
  NotControlProgram,
  BreakUnsupported,
  UnboundVariable,
  Internal,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::Syntax: return "SyntaxError";
    case Err::NonSimpleLHS: return "NonSimpleLHS";
    case Err::UndeclaredVariable: return "UndeclaredVariable";
    case Err::RHSVariableNotInLHS: return "RHSVariableNotInLHS";
    case Err::RecursiveProcedure: return "RecursiveProcedure";
    case Err::MissingMain: return "MissingMain";
    case Err::TypeMismatch: return "TypeMismatch";
    case Err::NotInjective: return "NotInjective";
    case Err::ResidualAuxTerm: return "ResidualAuxTerm";
    case Err::NotLoopFree: return "NotLoopFree";
    case Err::NotIteration: return "NotIteration";
    case Err::NotControlProgram: return "NotControlProgram";
    case Err::BreakUnsupported: return "BreakUnsupported";
    case Err::UnboundVariable: return "UnboundVariable";
    case Err::Internal: return "InternalError";
  }
  return "Error";
}

class GpvError : public std::runtime_error {
 public:
  GpvError(Err code, const std::string& detail)
      : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& detail) {
  throw GpvError(code, detail);
}

}  // namespace gpv
