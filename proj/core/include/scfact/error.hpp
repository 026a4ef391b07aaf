#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scf {

enum class Errc {
  RingMismatch,
  ParseError,
  NotFinite,
  DimensionMismatch,
  NoncommutativeRing,
  NotARoot,
  NotAField,
  SyntaxError,
  UnknownIdentifier,
  DivisionByNonUnit,
  TanhUnsupported,
  EvaluationBreakdown,
  BadParams,
  NotFoldable,
  NotCommonUnitRoot,
  NotIntegralDomain,
  Irreducible,
  CertificateFailure,
  NotPeriodic,
  NotAlspFamily,
  ConfigError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

// Single exception type for the library. `index()` carries the step index
// for evaluation failures and the byte offset for syntax errors.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<long> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }
  std::optional<long> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<long> index_;
};

}  // namespace scf
