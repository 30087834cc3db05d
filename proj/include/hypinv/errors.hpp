#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypinv {

/// Malformed expression text. `offset` is the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A free symbol has no entry in the Binding.
class UnboundSymbolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, log of a non-positive value or a non-finite result.
/// Callers sampling many points skip the point and move on.
class SingularEvaluation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A probabilistic zero test could not collect enough regular samples.
class IndeterminateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation called outside its precondition (wrong subclass, bad argument).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hypinv
