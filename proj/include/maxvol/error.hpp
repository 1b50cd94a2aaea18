#pragma once

#include <stdexcept>
#include <string>

namespace maxvol {

/// Failure categories. The first group are caller/domain problems, the
/// second group signal a broken invariant inside the library.
enum class ErrorKind {
  Dimension,
  DegenerateDirection,
  Rank,
  Domain,
  IterationLimit,
  TooLarge,
  CertificateUnavailable,
  Generation,
  Parse,
  // bug-class
  InternalConsistency,
  TightnessViolation,
  CorrespondenceViolation,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::DegenerateDirection: return "degenerate-direction";
    case ErrorKind::Rank: return "rank";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::IterationLimit: return "iteration-limit";
    case ErrorKind::TooLarge: return "instance-too-large";
    case ErrorKind::CertificateUnavailable: return "certificate-unavailable";
    case ErrorKind::Generation: return "generation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::TightnessViolation: return "tightness-violation";
    case ErrorKind::CorrespondenceViolation: return "correspondence-violation";
  }
  return "unknown";
}

inline bool is_bug_class(ErrorKind kind) {
  return kind == ErrorKind::InternalConsistency || kind == ErrorKind::TightnessViolation ||
         kind == ErrorKind::CorrespondenceViolation;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the rounding solver when the iteration cap is hit.
class IterationLimitError : public Error {
 public:
  IterationLimitError(const std::string& what, double bestMaxLeverage)
      : Error(ErrorKind::IterationLimit, what), bestMaxLeverage_(bestMaxLeverage) {}

  double best_max_leverage() const noexcept { return bestMaxLeverage_; }

 private:
  double bestMaxLeverage_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace maxvol
