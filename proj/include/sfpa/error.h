#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sfpa {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or structurally invalid input (CLI exit status 1).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ValidationError : public InputError {
 public:
  enum class Kind {
    kUnknownReference,
    kDuplicateDefinition,
    kDuplicateChild,
    kProbabilityOutOfRange,
    kCycle,
    kNoRoot,
    kMultipleRoots,
    kEmptyGate,
  };

  ValidationError(Kind kind, const std::string& node, const std::string& message);

  Kind kind() const { return kind_; }
  /// Name of the offending node (may be empty for tree-wide errors).
  const std::string& node() const { return node_; }

 private:
  Kind kind_;
  std::string node_;
};

/// A well-formed input that violates an operation's precondition
/// (CLI exit status 2).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotATreeError : public PreconditionError {
 public:
  explicit NotATreeError(const std::string& node);
  const std::string& node() const { return node_; }

 private:
  std::string node_;
};

class CapExceededError : public PreconditionError {
 public:
  CapExceededError(std::size_t basic_events, std::size_t cap);
  std::size_t basic_events() const { return basic_events_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t basic_events_;
  std::size_t cap_;
};

class AlgebraError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class CompositionError : public PreconditionError {
 public:
  enum class Kind { kNotControllable, kNameClash, kSharedBasicEvent, kInconsistentSharedNode };

  CompositionError(Kind kind, const std::string& node, const std::string& message);
  Kind kind() const { return kind_; }
  const std::string& node() const { return node_; }

 private:
  Kind kind_;
  std::string node_;
};

class InfeasibleConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// The structure function is identically false, so no cut set exists.
class NoCutSetError : public PreconditionError {
 public:
  NoCutSetError();
};

}  // namespace sfpa
