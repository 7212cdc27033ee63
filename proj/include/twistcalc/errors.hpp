#pragma once

#include <stdexcept>
#include <string>

namespace twistcalc {

// Stable error codes. The CLI maps DomainError subclasses to exit status 2
// and UsageError subclasses to exit status 1.
enum class ErrorCode {
  kNonPrime = 10,
  kZeroDenominator = 11,
  kNormBoundViolation = 12,
  kIndivisible = 20,
  kIdentityTwist = 21,
  kInvalidTwist = 22,
  kRootOfUnity = 30,
  kReconstruction = 31,
  kDimensionMismatch = 32,
  kNonIntegrable = 33,
  kBasisNormMismatch = 40,
  kSyntax = 50,
  kConfig = 51,
};

class TwistError : public std::runtime_error {
 public:
  TwistError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A mathematically invalid request: bad prime, root-of-unity q, failed
/// divisibility, insufficient reconstruction bounds and the like.
class DomainError : public TwistError {
 public:
  using TwistError::TwistError;
};

/// Malformed input text or configuration.
class UsageError : public TwistError {
 public:
  using TwistError::TwistError;
};

#define TWISTCALC_DOMAIN_ERROR(Name, Code)                                  \
  class Name : public DomainError {                                         \
   public:                                                                  \
    explicit Name(const std::string& what) : DomainError(Code, what) {}     \
  }

TWISTCALC_DOMAIN_ERROR(NonPrimeError, ErrorCode::kNonPrime);
TWISTCALC_DOMAIN_ERROR(ZeroDenominatorError, ErrorCode::kZeroDenominator);
TWISTCALC_DOMAIN_ERROR(NormBoundViolation, ErrorCode::kNormBoundViolation);
TWISTCALC_DOMAIN_ERROR(IndivisibleError, ErrorCode::kIndivisible);
TWISTCALC_DOMAIN_ERROR(IdentityTwistError, ErrorCode::kIdentityTwist);
TWISTCALC_DOMAIN_ERROR(InvalidTwistError, ErrorCode::kInvalidTwist);
TWISTCALC_DOMAIN_ERROR(RootOfUnityError, ErrorCode::kRootOfUnity);
TWISTCALC_DOMAIN_ERROR(ReconstructionError, ErrorCode::kReconstruction);
TWISTCALC_DOMAIN_ERROR(DimensionMismatchError, ErrorCode::kDimensionMismatch);
TWISTCALC_DOMAIN_ERROR(NonIntegrableError, ErrorCode::kNonIntegrable);
TWISTCALC_DOMAIN_ERROR(BasisNormMismatch, ErrorCode::kBasisNormMismatch);

#undef TWISTCALC_DOMAIN_ERROR

/// Syntax error in polynomial/operator text. Positions are 1-based.
class ParseError : public UsageError {
 public:
  ParseError(const std::string& message, int line, int column,
             std::string expected)
      : UsageError(ErrorCode::kSyntax,
                   "syntax error at " + std::to_string(line) + ":" +
                       std::to_string(column) + ": " + message +
                       (expected.empty() ? "" : " (expected " + expected + ")")),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

class ConfigError : public UsageError {
 public:
  explicit ConfigError(const std::string& what)
      : UsageError(ErrorCode::kConfig, what) {}
};

}  // namespace twistcalc
