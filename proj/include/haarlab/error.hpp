#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace haarlab {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  TooLarge,
  InvalidTopology,
  InvalidGroup,
  NotRegular,
  NotDisjoint,
  NotClosed,
  NotOpen,
  NotCovered,
  NotNested,
  NotStronglyLocallyCompact,
  NotContinuousMultiplication,
  NotContinuousInversion,
  MeasureSpaceMismatch,
  NotMeasurable,
  NotContinuous,
  NotRadon,
  NotHaar,
  EmptyInterior,
  NotNeighborhoodOfIdentity,
  NegativeMass,
  InternalInconsistency,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

/// Raised when an invariant the library itself guarantees turns out false.
[[noreturn]] inline void inconsistency(const std::string& message) {
  throw Error(ErrorKind::InternalInconsistency, message);
}

}  // namespace haarlab
