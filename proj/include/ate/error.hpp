#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ate {

enum class ErrorKind {
  // validation
  InvalidConfig,
  InvalidArgument,
  MissingAnnotation,
  DuplicateDocumentId,
  EncodingError,
  UnknownDomain,
  OverlappingSplit,
  WrongDomainCount,
  LanguageMismatch,
  EmptyTraining,
  EmptyTerm,
  LengthMismatch,
  EmptyGold,
  SplitMismatch,
  InsufficientRuns,
  DuplicateRun,
  EmptyLedger,
  // runtime
  BackendUnavailable,
  BackendFailure,
  NotFitted,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingAnnotation: return "MissingAnnotation";
    case ErrorKind::DuplicateDocumentId: return "DuplicateDocumentId";
    case ErrorKind::EncodingError: return "EncodingError";
    case ErrorKind::UnknownDomain: return "UnknownDomain";
    case ErrorKind::OverlappingSplit: return "OverlappingSplit";
    case ErrorKind::WrongDomainCount: return "WrongDomainCount";
    case ErrorKind::LanguageMismatch: return "LanguageMismatch";
    case ErrorKind::EmptyTraining: return "EmptyTraining";
    case ErrorKind::EmptyTerm: return "EmptyTerm";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyGold: return "EmptyGold";
    case ErrorKind::SplitMismatch: return "SplitMismatch";
    case ErrorKind::InsufficientRuns: return "InsufficientRuns";
    case ErrorKind::DuplicateRun: return "DuplicateRun";
    case ErrorKind::EmptyLedger: return "EmptyLedger";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::BackendFailure: return "BackendFailure";
    case ErrorKind::NotFitted: return "NotFitted";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Validation errors are caused by bad input or configuration; everything
/// else is a runtime failure. The CLI maps these to exit codes 1 and 2.
inline bool is_validation_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BackendUnavailable:
    case ErrorKind::BackendFailure:
    case ErrorKind::NotFitted:
    case ErrorKind::Io:
      return false;
    default:
      return true;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ate
