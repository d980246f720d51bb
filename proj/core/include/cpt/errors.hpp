#pragma once

#include <stdexcept>
#include <string>

namespace cpt {

// Base for every error this library throws on bad input or broken contracts.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input errors: the caller handed us something malformed.
struct CycleError : Error {
  using Error::Error;
};
struct UnknownElementError : Error {
  using Error::Error;
};
struct GroundSetMismatchError : Error {
  using Error::Error;
};
struct ElementSetMismatchError : Error {
  using Error::Error;
};
struct NameCollisionError : Error {
  using Error::Error;
};
struct TooSmallError : Error {
  using Error::Error;
};
struct NotAModuleError : Error {
  using Error::Error;
};
struct NotAPartitionOfModulesError : Error {
  using Error::Error;
};
struct VertexNotInTreeError : Error {
  using Error::Error;
};
struct EdgeNotInTreeError : Error {
  using Error::Error;
};
struct MalformedCiModelError : Error {
  using Error::Error;
};
struct NoCommonCoreError : Error {
  using Error::Error;
};
struct TrivialPathError : Error {
  using Error::Error;
};
struct PathTooShortError : Error {
  using Error::Error;
};
struct EndsOnTrivialPathError : Error {
  using Error::Error;
};
struct BlockedCliqueError : Error {
  using Error::Error;
};
struct NotFlaggedError : Error {
  using Error::Error;
};
struct NotAssociatedError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};

// A search or enumeration ran past its resource budget. Distinct from a
// definitive negative answer.
struct BudgetExceededError : Error {
  using Error::Error;
};

// A rewrite's postcondition check failed. On inputs that satisfy the
// documented preconditions this indicates the model's poset is not actually
// representable the way the caller claimed, hence the name.
struct SuspicionError : Error {
  using Error::Error;
};

// A bug on our side: an internal invariant did not hold.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

struct ParseError : Error {
  int line;
  int column;
  ParseError(int line_, int col_, const std::string& what)
      : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + what),
        line(line_),
        column(col_) {}
};

}  // namespace cpt
