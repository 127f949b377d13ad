#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lambdad {

// Malformed text. Positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string origin, int line, int col, std::string message,
             std::vector<std::string> expected = {});

  const std::string& origin() const { return origin_; }
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::string origin_;
  int line_;
  int col_;
  std::string message_;
  std::vector<std::string> expected_;
};

enum class TypeErrorKind : std::uint8_t {
  UnboundVariable,
  RuleMismatch,
  ConstraintUnsatisfied,
  OccursCheck,
  UnificationMismatch,
  AmbiguousType,
  SearchExhausted,
};

std::string to_string(TypeErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorKind kind, std::string rule, std::string detail);

  TypeErrorKind kind() const { return kind_; }
  const std::string& rule() const { return rule_; }
  const std::string& detail() const { return detail_; }

 private:
  TypeErrorKind kind_;
  std::string rule_;
  std::string detail_;
};

enum class EvalErrorKind : std::uint8_t { OutOfFuel, DynamicTypeError, EmptyMetaOnShift0 };

class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, std::string detail);
  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

enum class OracleErrorKind : std::uint8_t { Stuck, OutOfFuel };

class OracleError : public std::runtime_error {
 public:
  OracleError(OracleErrorKind kind, std::string detail);
  OracleErrorKind kind() const { return kind_; }

 private:
  OracleErrorKind kind_;
};

enum class BridgeErrorKind : std::uint8_t { NotInImage, NonEmptyTrail, FragmentViolation };

class BridgeError : public std::runtime_error {
 public:
  BridgeError(BridgeErrorKind kind, std::string detail);
  BridgeErrorKind kind() const { return kind_; }

 private:
  BridgeErrorKind kind_;
};

// Ill-typed λC, or a CPS request on a term that has not been checked.
class CpsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lambdad
