#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqplan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed library text. Carries the 1-based line and column of the fault.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error("syntax error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A library, plan or hypothesis that violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Plans (or a plan and an oracle) built against different libraries.
class LibraryMismatch : public Error {
 public:
  LibraryMismatch() : Error("plans belong to different plan libraries") {}
};

/// Precondition of a plan-editing operation does not hold.
class PlanError : public Error {
 public:
  using Error::Error;
};

/// No hypothesis in the current set can account for an observation.
class UnexplainableObservation : public Error {
 public:
  explicit UnexplainableObservation(std::size_t index, const std::string& action)
      : Error("unexplainable observation at index " + std::to_string(index) + " (" +
              action + ")"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// An update emptied the hypothesis set: the oracle contradicts every hypothesis.
class InconsistentOracle : public Error {
 public:
  InconsistentOracle()
      : Error("inconsistent oracle: update removed every hypothesis") {}
};

/// A policy returned a plan that is closed or absent from the candidate pool.
class PolicyContractViolation : public Error {
 public:
  using Error::Error;
};

/// A selector was invoked with an empty candidate pool.
class NoCandidates : public Error {
 public:
  NoCandidates() : Error("no candidate plans left to query") {}
};

}  // namespace seqplan
