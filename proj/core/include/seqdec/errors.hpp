#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqdec {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad notation, bad JSON, broken invariants at construction.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public InvalidArgument {
 public:
  AlphabetMismatch() : InvalidArgument("alphabet mismatch") {}
  using InvalidArgument::InvalidArgument;
};

/// Resource or assumption failures. These indict the input or the caller's
/// horizon, never the rule's axioms.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class Diverges : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

class BudgetExhausted : public ResourceError {
 public:
  BudgetExhausted(std::size_t steps)
      : ResourceError("budget exhausted after " + std::to_string(steps) + " steps"),
        steps_(steps) {}
  std::size_t steps() const { return steps_; }

 private:
  std::size_t steps_;
};

class HorizonViolation : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

class NotAChoiceRule : public InvalidArgument {
 public:
  NotAChoiceRule() : InvalidArgument("rule is not a choice rule: decisions are not alternatives") {}
};

/// Identification failed: the recovered parameters disagree with the rule.
class IdentificationError : public Error {
 public:
  using Error::Error;
};

class NotCsr : public IdentificationError {
 public:
  using IdentificationError::IdentificationError;
};

class NotOsr : public IdentificationError {
 public:
  using IdentificationError::IdentificationError;
};

}  // namespace seqdec
