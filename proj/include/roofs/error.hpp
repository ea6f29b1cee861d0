#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace roofs {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  TraceNotOne,
  NotPSD,
  NotNormalized,
  NotIsometry,
  BadRank,
  OutsideBall,
  NotSymmetric,
  ShapeMismatch,
  UnsupportedOrder,
  ZeroState,
  EmptyInterval,
  NotStandardForm,
  NotTracePreserving,
  NotPositive,
  InvalidAxial,
  PureInput,
  OutOfRange,
  DimMismatch,
  ConfigError,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries the violated invariant and,
/// where one exists, the measured deviation in its message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace roofs
