#pragma once

#include <stdexcept>
#include <string>

namespace gqe {

/// Position inside a query text, 1-based.
struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Syntax or clause-structure error produced by the parser.
/// what() carries the full diagnostic: "error: <msg> at line L, column C".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, SourcePos pos)
      : std::runtime_error("error: " + msg + " at line " + std::to_string(pos.line) +
                           ", column " + std::to_string(pos.column)),
        message_(std::move(msg)),
        pos_(pos) {}

  const std::string& message() const { return message_; }
  SourcePos pos() const { return pos_; }

 private:
  std::string message_;
  SourcePos pos_;
};

/// Name resolution, aggregation placement, schema mismatch and similar
/// compile-time errors.
class SemanticError : public std::runtime_error {
 public:
  explicit SemanticError(const std::string& msg) : std::runtime_error("error: " + msg) {}
};

/// Raised when a plan violates the operator schema rules (duplicate
/// attribute, union of incompatible schemas, ...).
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& msg) : std::runtime_error("error: " + msg) {}
};

/// Runtime type error during plan evaluation.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& msg) : std::runtime_error("error: " + msg) {}
};

/// Malformed Graph-JSON input.
class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& msg) : std::runtime_error("error: " + msg) {}
};

}  // namespace gqe
