#pragma once

#include <stdexcept>
#include <string>

namespace fn3 {

// Error taxonomy mirrored by the CLI exit codes:
//   InputError -> 2, MathPrecondition -> 3, Convergence -> 4.
enum class ErrorKind { InputError, MathPrecondition, Convergence };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail),
        kind_(kind),
        name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::InputError: return 2;
      case ErrorKind::MathPrecondition: return 3;
      case ErrorKind::Convergence: return 4;
    }
    return 1;
  }

 private:
  ErrorKind kind_;
  std::string name_;
};

[[noreturn]] inline void throw_input(const std::string& name, const std::string& detail) {
  throw Error(ErrorKind::InputError, name, detail);
}
[[noreturn]] inline void throw_precondition(const std::string& name, const std::string& detail) {
  throw Error(ErrorKind::MathPrecondition, name, detail);
}
[[noreturn]] inline void throw_convergence(const std::string& name, const std::string& detail) {
  throw Error(ErrorKind::Convergence, name, detail);
}

}  // namespace fn3
