#pragma once

#include <stdexcept>
#include <string>

namespace pv {

enum class ErrorKind {
  UnsupportedType,
  UnsupportedRep,
  NotARoot,
  DependentRoots,
  DimMismatch,
  SpanFailure,
  NonDiagonalCartan,
  MissingAssignment,
  NotClosedFormInvertible,
  NotInLieAlgebra,
  StructureViolation,
  RankFailure,
  NoRationalSolution,
  VerificationFailure,
  IdentityFailure,
  NotUnimodular,
  CellDegeneration,
  NonUnitScaling,
  ParseError,
};

const char* error_kind_name(ErrorKind k);

// Every failure raised by the library carries a kind so the CLI can map it
// to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::UnsupportedRep: return "UnsupportedRep";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::DependentRoots: return "DependentRoots";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::SpanFailure: return "SpanFailure";
    case ErrorKind::NonDiagonalCartan: return "NonDiagonalCartan";
    case ErrorKind::MissingAssignment: return "MissingAssignment";
    case ErrorKind::NotClosedFormInvertible: return "NotClosedFormInvertible";
    case ErrorKind::NotInLieAlgebra: return "NotInLieAlgebra";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::RankFailure: return "RankFailure";
    case ErrorKind::NoRationalSolution: return "NoRationalSolution";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::IdentityFailure: return "IdentityFailure";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::CellDegeneration: return "CellDegeneration";
    case ErrorKind::NonUnitScaling: return "NonUnitScaling";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

}  // namespace pv
