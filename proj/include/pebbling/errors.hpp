#pragma once

#include <stdexcept>
#include <string>

namespace pebbling {

// Every library error carries a short machine-readable code (e.g.
// "disconnected", "diameter-too-small") next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// A documented precondition of a domain operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: bad ids, unparsable text, unknown generator names.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A search ran out of its state or time allowance before deciding.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A state that a proven lemma rules out was reached. Indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pebbling
