#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lci {

enum class ErrorKind {
  BadInput,
  NonPositiveMass,
  NotNormalized,
  TooShort,
  AlphabetMismatch,
  BadLetter,
  TooLarge,
  BadComposition,
  NotOnto,
  TooManyBlocks,
  InadmissiblePair,
  GridTooLarge,
  LpFailure,
  InconsistentSpan,
  WrongCase,
  EmptyGrid,
  NoValidCut,
  BadPerturbation,
  BoxEscape,
  PointNotInJ,
  PointNotInK,
  Empty,
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; kind() identifies the
// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lci
