#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndsl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation outside an expression's domain (sqrt of a negative, division by zero, overflow).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The problem data violates a structural hypothesis.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  explicit ValidationError(const std::string& issue) : ValidationError(std::vector<std::string>{issue}) {}
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& i : v) {
      if (!s.empty()) s += "; ";
      s += i;
    }
    return s;
  }
  std::vector<std::string> issues_;
};

/// A numerical stage failed (step underflow, evaluation budget, non-convergence).
class NumericalError : public Error {
 public:
  NumericalError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// A zero of the characteristic function sits on a contour.
class ZeroOnContourError : public NumericalError {
 public:
  explicit ZeroOnContourError(const std::string& what) : NumericalError("winding", what) {}
};

/// An operation was requested outside the regime where it is defined.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ndsl
