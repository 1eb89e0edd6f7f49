#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace conegrad {

enum class ErrorCode {
  // cone_order
  EmptyGeneratorList,
  ZeroGenerator,
  NotFullDimensionalDual,
  DualNotPointed,
  EmptyList,
  // shared
  DimensionMismatch,
  InvalidArgument,
  // feasible_set
  InvalidSet,
  InfeasibleBasePoint,
  // vector_function
  SyntaxError,
  UnknownIdentifier,
  ArityError,
  EvalDomainError,
  NonFiniteResult,
  NotFound,
  // direction_oracle
  InfeasibleDirection,
  InvalidWeights,
  ScaleTooLarge,
  InternalInconsistency,
  // line_search / solver
  BacktrackExhausted,
  InvalidConfig,
  InfeasibleStart,
  NotInT,
  // reference_oracles
  UnsupportedSampling,
  // cli_io
  ProblemFormat,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `index()` carries the offending position where one
/// exists: parser character offset, trace record index for NotInT, backtrack
/// budget for BacktrackExhausted.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace conegrad
