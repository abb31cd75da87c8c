#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dser {

enum class ErrorKind {
  DescriptorMismatch,
  NotAUnit,
  NotDivisible,
  Parse,
  NotDiagonal,
  OrderingMismatch,
  PreconditionViolated,
  NotHyperbolicForm,
  SamePlane,
  IsotropicVector,
  NotOrthogonal,
  NotLocalRing,
  UnsupportedConjugator,
  NonIntegralConjugator,
  NotComaximal,
  OutOfRange,
  Unsupported,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported as an Error carrying a machine
/// readable kind. `witness` holds the offending value when there is one
/// (the gcd for a non-unit residue, the determinant for a non-local split, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace dser
