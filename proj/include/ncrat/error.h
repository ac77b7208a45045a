#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncrat {

/// Failure categories shared by every module. The CLI maps these onto exit
/// codes and report fields, so the set is closed.
enum class ErrorKind {
  kParse,
  kInvalidArgument,
  kDegreeOutOfRange,
  kAlphabetMismatch,
  kNotDecaying,
  kNotInvertible,
  kNotProper,
  kInsufficientData,
  kInsufficientDepth,
  kNotMinimal,
  kWordTooLong,
  kDegreeTooHigh,
  kMarginTooSmall,
  kNotConverging,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ncrat
