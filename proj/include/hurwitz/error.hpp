#ifndef HURWITZ_ERROR_HPP
#define HURWITZ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurwitz {

enum class Errc {
  // parsing / input
  SyntaxError,
  RepeatedPoint,
  PointOutOfRange,
  NotABijection,
  DegreeMismatch,
  IndexOutOfRange,
  NotInGroup,
  NotASubgroup,
  DomainSizeMismatch,
  DisconnectedCover,
  ParityViolation,
  SchemaError,
  IntransitiveGroup,
  TypeMultiplicityMismatch,
  // resource caps
  OrderCapExceeded,
  DegreeTooLargeForSymSearch,
  WorkCapExceeded,
  OrbitCapExceeded,
  // internal invariants
  FreeActionViolated,
  InvariantViolated,
};

enum class ErrorCategory { input, cap, internal };

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::RepeatedPoint: return "RepeatedPoint";
    case Errc::PointOutOfRange: return "PointOutOfRange";
    case Errc::NotABijection: return "NotABijection";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotInGroup: return "NotInGroup";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::DomainSizeMismatch: return "DomainSizeMismatch";
    case Errc::DisconnectedCover: return "DisconnectedCover";
    case Errc::ParityViolation: return "ParityViolation";
    case Errc::SchemaError: return "SchemaError";
    case Errc::IntransitiveGroup: return "IntransitiveGroup";
    case Errc::TypeMultiplicityMismatch: return "TypeMultiplicityMismatch";
    case Errc::OrderCapExceeded: return "OrderCapExceeded";
    case Errc::DegreeTooLargeForSymSearch: return "DegreeTooLargeForSymSearch";
    case Errc::WorkCapExceeded: return "WorkCapExceeded";
    case Errc::OrbitCapExceeded: return "OrbitCapExceeded";
    case Errc::FreeActionViolated: return "FreeActionViolated";
    case Errc::InvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

constexpr ErrorCategory category_of(Errc e) noexcept {
  switch (e) {
    case Errc::OrderCapExceeded:
    case Errc::DegreeTooLargeForSymSearch:
    case Errc::WorkCapExceeded:
    case Errc::OrbitCapExceeded:
      return ErrorCategory::cap;
    case Errc::FreeActionViolated:
    case Errc::InvariantViolated:
      return ErrorCategory::internal;
    default:
      return ErrorCategory::input;
  }
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  Errc code_;
};

}  // namespace hurwitz

#endif  // HURWITZ_ERROR_HPP
