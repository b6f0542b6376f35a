#pragma once

#include <stdexcept>
#include <string>

namespace looplab {

/// Caller passed arguments outside an operation's contract.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal consistency condition failed (e.g. a differential that does not
/// square to zero). Signals a bug in a table or formula, never bad input.
class StructuralError : public std::logic_error {
 public:
  explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

/// A configured size cutoff was exceeded; the computation was abandoned.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace looplab
