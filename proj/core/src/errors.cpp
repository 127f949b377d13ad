#include "lambdad/errors.hpp"

namespace lambdad {

namespace {

std::string parse_what(const std::string& origin, int line, int col, const std::string& message,
                       const std::vector<std::string>& expected) {
  std::string s = origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + message;
  if (!expected.empty()) {
    s += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) s += i + 1 == expected.size() ? " or " : ", ";
      s += expected[i];
    }
    s += ")";
  }
  return s;
}

}  // namespace

ParseError::ParseError(std::string origin, int line, int col, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error(parse_what(origin, line, col, message, expected)),
      origin_(std::move(origin)),
      line_(line),
      col_(col),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::string to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundVariable: return "UnboundVariable";
    case TypeErrorKind::RuleMismatch: return "RuleMismatch";
    case TypeErrorKind::ConstraintUnsatisfied: return "ConstraintUnsatisfied";
    case TypeErrorKind::OccursCheck: return "OccursCheck";
    case TypeErrorKind::UnificationMismatch: return "UnificationMismatch";
    case TypeErrorKind::AmbiguousType: return "AmbiguousType";
    case TypeErrorKind::SearchExhausted: return "SearchExhausted";
  }
  return "TypeError";
}

TypeError::TypeError(TypeErrorKind kind, std::string rule, std::string detail)
    : std::runtime_error(to_string(kind) + (rule.empty() ? "" : " in " + rule) + ": " + detail),
      kind_(kind),
      rule_(std::move(rule)),
      detail_(std::move(detail)) {}

EvalError::EvalError(EvalErrorKind kind, std::string detail)
    : std::runtime_error(std::move(detail)), kind_(kind) {}

OracleError::OracleError(OracleErrorKind kind, std::string detail)
    : std::runtime_error(std::move(detail)), kind_(kind) {}

BridgeError::BridgeError(BridgeErrorKind kind, std::string detail)
    : std::runtime_error(std::move(detail)), kind_(kind) {}

}  // namespace lambdad
