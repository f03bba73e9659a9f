#pragma once

#include <stdexcept>
#include <string>

namespace primage {

// Failure categories carried by every library exception. The CLI maps them to
// process exit codes: ParseError -> 2; DomainViolation, DegenerateInput,
// DegenerateConstant -> 3; WrongDimension, WrongArity, Unsupported,
// NotAPolynomialImage, GenericityFailure -> 4; everything else -> 5.
enum class ErrorKind {
  ParseError,
  DegenerateInput,
  DomainViolation,
  WrongDimension,
  WrongArity,
  NotAPolynomialImage,
  NotOnCurve,
  NotSingleRealBranchAtInfinity,
  NotInSubfield,
  DegenerateConstant,
  GenericityFailure,
  Unsupported,
  InternalContradiction,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::NotAPolynomialImage: return "NotAPolynomialImage";
    case ErrorKind::NotOnCurve: return "NotOnCurve";
    case ErrorKind::NotSingleRealBranchAtInfinity: return "NotSingleRealBranchAtInfinity";
    case ErrorKind::NotInSubfield: return "NotInSubfield";
    case ErrorKind::DegenerateConstant: return "DegenerateConstant";
    case ErrorKind::GenericityFailure: return "GenericityFailure";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InternalContradiction: return "InternalContradiction";
  }
  return "UnknownError";
}

}  // namespace primage
