#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wmc {

enum class ErrorCode {
  InvalidParameter,
  IncompatibleMethod,
  SubtractionWithoutBackground,
  UnsupportedPair,
  UnsupportedFamily,
  UnsupportedLambda,
  DegenerateDistribution,
  RootNotBracketed,
  SingularPrecision,
  InsufficientRows,
  EmptySampleSet,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; `code()` identifies the failed rule.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wmc
