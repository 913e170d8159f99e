#pragma once

#include <stdexcept>
#include <string>

namespace dred {

enum class ErrorKind {
  EndpointMismatch,
  LabelClash,
  DanglingViolation,
  IdentificationViolation,
  UnsupportedMatch,
  NonCommuting,
  NonComposable,
  IllSorted,
  ModelDoesNotSatisfySpec,
  LeftSquareNotCommuting,
  WitnessNotPleo,
  CubeCheckFailed,
  DenominatorNotPleo,
  PleoVerificationFailed,
  PleoUnverified,
  HypothesisNotPresent,
  SortMismatch,
  Parse,
  Io,
  Internal,
};

const char *to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message);
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

} // namespace dred
