#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drillvol {

/// Base of every error raised by the library. The category is a short
/// stable token, used by the CLI as the `error:<category>:` prefix.
class Error : public std::runtime_error {
 public:
  Error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

 private:
  std::string category_;
};

// Invalid scalar input (non-positive radius, length, ...).
struct ParameterError : Error {
  explicit ParameterError(const std::string& what) : Error("parameter", what) {}
};

// Radius outside a function's declared domain, or no root in a bracket.
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

// Evaluation at a point where a warping function vanishes.
struct SingularAxisError : Error {
  explicit SingularAxisError(const std::string& what)
      : Error("singular-axis", what) {}
};

// Non-convergent quadrature or other numerical failure.
struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error("numeric", what) {}
};

// Hypothesis of a construction not satisfied.
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what)
      : Error("precondition", what) {}
};

// Smoothing collar wider than the available domain.
struct WidthError : Error {
  explicit WidthError(const std::string& what) : Error("width", what) {}
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("parse", "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what)
      : Error("validation", what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace drillvol
