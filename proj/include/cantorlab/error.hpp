#pragma once

#include <stdexcept>
#include <string>

namespace cantorlab {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// A precondition on an argument was violated (inadmissible word, alpha out
/// of range, truncation too small, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// A rigorous comparison could not be decided within the precision budget.
class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what) : Error("precision", what) {}
};

/// An integer walk state or jump left the representable range.
class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error("overflow", what) {}
};

/// An iterative solver failed (no bracket, no convergence).
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error("solver", what) {}
};

}  // namespace cantorlab
