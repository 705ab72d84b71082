#pragma once

#include <stdexcept>
#include <string>

namespace multcert {

// Failure classes surfaced across the C boundary. Keep in sync with
// mcert_status in include/multcert.h.
enum class ErrorKind {
  Usage,
  WrongLength,
  Overflow,
  IndexExcluded,
  IndexOutOfRange,
  InfinityPoint,
  ResultantZero,
  SingularMobius,
  NotACycle,
  MultiplierOne,
  DegenerateFixedPoints,
  NoConvergence,
  DerivativeSingular,
  ConditionsNotMet,
  Exhausted,
  VerificationFailed,
  Parse,
  UnsupportedPrecision,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string detail_json = {})
      : std::runtime_error(std::move(message)),
        kind_(kind),
        detail_json_(std::move(detail_json)) {}

  ErrorKind kind() const { return kind_; }

  // Optional machine-readable payload (a JSON object body), empty if none.
  // Used by Exhausted to carry the deepest-slot report.
  const std::string& detail_json() const { return detail_json_; }

 private:
  ErrorKind kind_;
  std::string detail_json_;
};

[[noreturn]] inline void raise(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::WrongLength: return "WrongLength";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::IndexExcluded: return "IndexExcluded";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InfinityPoint: return "InfinityPoint";
    case ErrorKind::ResultantZero: return "ResultantZero";
    case ErrorKind::SingularMobius: return "SingularMobius";
    case ErrorKind::NotACycle: return "NotACycle";
    case ErrorKind::MultiplierOne: return "MultiplierOne";
    case ErrorKind::DegenerateFixedPoints: return "DegenerateFixedPoints";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DerivativeSingular: return "DerivativeSingular";
    case ErrorKind::ConditionsNotMet: return "ConditionsNotMet";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::UnsupportedPrecision: return "UnsupportedPrecision";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace multcert
