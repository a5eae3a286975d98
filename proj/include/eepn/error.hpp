#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eepn {

enum class ErrorKind {
  validation,
  non_convergence,
  below_floor,
};

/// Error raised by every module; the kind maps onto the CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation:
      return "validation";
    case ErrorKind::non_convergence:
      return "non_convergence";
    case ErrorKind::below_floor:
      return "below_floor";
  }
  return "unknown";
}

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation:
      return 2;
    case ErrorKind::non_convergence:
      return 3;
    case ErrorKind::below_floor:
      return 4;
  }
  return 1;
}

[[noreturn]] inline void fail_validation(const std::string& message) {
  throw Error(ErrorKind::validation, message);
}

}  // namespace eepn
