#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace propmet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a precondition (mismatched scenario, empty set, bad input).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search grew past its configured cardinality cap.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::size_t cap)
      : Error(what + " (budget " + std::to_string(cap) + " exceeded)"), cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

/// The requested operation is not decidable/exact for this family or scenario.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A construction was rejected because one of its verifiers failed.
class VerificationError : public Error {
 public:
  VerificationError(const std::string& what, std::string witness)
      : Error(what + ": " + witness), witness_(std::move(witness)) {}

  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

}  // namespace propmet
