#pragma once

#include <stdexcept>
#include <string>

namespace qceq {

enum class ErrorCode {
  ArityMismatch,
  InvalidCircuit,
  ShapeMismatch,
  DegenerateMatrix,
  NotUnitary,
  DomainError,
  UnknownTheory,
  UnknownRule,
  UnknownLemma,
  BadParams,
  BadArity,
  NoMatch,
  IllegalSite,
  SemanticDrift,
  UnsupportedGate,
  NoInterpretation,
  InconsistentClasses,
  ParseError,
  WireCapExceeded,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace qceq
