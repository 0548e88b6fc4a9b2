#pragma once

#include <stdexcept>
#include <string>

namespace cskge {

enum class ErrorCategory { Config, Parse, Io, Domain, Coverage, Numeric, Incompatible };

inline const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Config: return "config";
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Io: return "io";
    case ErrorCategory::Domain: return "domain";
    case ErrorCategory::Coverage: return "coverage";
    case ErrorCategory::Numeric: return "numeric";
    case ErrorCategory::Incompatible: return "incompatible";
  }
  return "error";
}

// Process exit code per category, used by the CLI.
inline int category_exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::Parse: return 3;
    case ErrorCategory::Io: return 4;
    case ErrorCategory::Domain: return 5;
    case ErrorCategory::Coverage: return 6;
    case ErrorCategory::Numeric: return 7;
    case ErrorCategory::Incompatible: return 8;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void throw_error(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

[[noreturn]] inline void throw_parse(const std::string& path, std::size_t line,
                                     const std::string& message) {
  throw Error(ErrorCategory::Parse, path + ":" + std::to_string(line) + ": " + message);
}

}  // namespace cskge
