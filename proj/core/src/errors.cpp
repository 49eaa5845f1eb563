#include "lci/errors.hpp"

namespace lci {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::NonPositiveMass: return "NonPositiveMass";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::BadLetter: return "BadLetter";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadComposition: return "BadComposition";
    case ErrorKind::NotOnto: return "NotOnto";
    case ErrorKind::TooManyBlocks: return "TooManyBlocks";
    case ErrorKind::InadmissiblePair: return "InadmissiblePair";
    case ErrorKind::GridTooLarge: return "GridTooLarge";
    case ErrorKind::LpFailure: return "LpFailure";
    case ErrorKind::InconsistentSpan: return "InconsistentSpan";
    case ErrorKind::WrongCase: return "WrongCase";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::NoValidCut: return "NoValidCut";
    case ErrorKind::BadPerturbation: return "BadPerturbation";
    case ErrorKind::BoxEscape: return "BoxEscape";
    case ErrorKind::PointNotInJ: return "PointNotInJ";
    case ErrorKind::PointNotInK: return "PointNotInK";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind) {}

}  // namespace lci
