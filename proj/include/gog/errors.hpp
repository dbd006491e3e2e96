#pragma once

#include <stdexcept>
#include <string>

namespace gog {

/* Common base so callers can catch everything from this library at once. */
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotAGroup : Error {
  explicit NotAGroup(const std::string& what) : Error("not a group: " + what) {}
};

struct BoundExceeded : Error {
  long long bound;
  explicit BoundExceeded(const std::string& what, long long bound_)
      : Error("bound exceeded: " + what), bound(bound_) {}
};

struct ParentMismatch : Error {
  explicit ParentMismatch(const std::string& what) : Error("parent mismatch: " + what) {}
};

struct ParseError : Error {
  int line;
  ParseError(const std::string& what, int line_)
      : Error("parse error at line " + std::to_string(line_) + ": " + what), line(line_) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& what) : Error("schema error: " + what) {}
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& what) : Error("invalid input: " + what) {}
};

struct EndpointMismatch : Error {
  explicit EndpointMismatch(const std::string& what) : Error("endpoint mismatch: " + what) {}
};

/* Ill-typed path word; position is the first offending syllable. */
struct TypeError : Error {
  int position;
  TypeError(const std::string& what, int position_)
      : Error("type error at syllable " + std::to_string(position_) + ": " + what),
        position(position_) {}
};

struct BudgetExceeded : Error {
  long long spent;
  BudgetExceeded(const std::string& what, long long spent_)
      : Error("budget exceeded: " + what), spent(spent_) {}
};

struct FiniteGroupInput : Error {
  explicit FiniteGroupInput(const std::string& what) : Error("finite subgroup input: " + what) {}
};

struct NotVertexFaithful : Error {
  explicit NotVertexFaithful(const std::string& what) : Error("not vertex-faithful: " + what) {}
};

struct MissingMorphism : Error {
  explicit MissingMorphism(const std::string& what) : Error("missing morphism: " + what) {}
};

struct PreconditionFailed : Error {
  explicit PreconditionFailed(const std::string& what) : Error("precondition failed: " + what) {}
};

}  // namespace gog
