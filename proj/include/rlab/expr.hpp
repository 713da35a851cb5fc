#pragma once

// Expression language for metric coefficient functions a_ij(x), b_i(x).
// Grammar (precedence encoded by the descent):
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := base ('^' uint)?
//   base   := number | ident | '(' expr ')' | func '(' expr ')'
//   func   := sqrt | exp | log | sin | cos
//   ident  := 'x' uint (1-based coordinate) | bound parameter name
// Exponents are literal non-negative integers; fractional powers are
// rejected with a hint to use sqrt.  Evaluation is templated on the scalar
// so the same AST runs on double and on jets.

#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rlab/scalar.hpp"

namespace rlab {

enum class FuncKind { kSqrt, kExp, kLog, kSin, kCos };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { kNumber, kCoord, kParam, kAdd, kSub, kMul, kDiv, kNeg, kPow, kCall };
  Kind kind;
  double number = 0.0;   // kNumber
  int index = 0;         // kCoord: 0-based coordinate; kParam: parameter slot
  std::string name;      // kParam: the bound name (for printing)
  unsigned exponent = 0; // kPow
  FuncKind func = FuncKind::kSqrt;  // kCall
  ExprPtr a, b;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t offset)
      : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

class EvalDomainError : public std::runtime_error {
 public:
  EvalDomainError(const std::string& what, const std::string& subexpr)
      : std::runtime_error(what + " in subexpression: " + subexpr),
        subexpr_(subexpr) {}
  const std::string& subexpr() const { return subexpr_; }

 private:
  std::string subexpr_;
};

// Parses `text` against a fixed coordinate dimension and bound parameter
// names (parameter slot = position in `params`).
ExprPtr parse_expression(std::string_view text, int dim,
                         std::span<const std::string> params);

// Minimal-parenthesis rendering; parse(pretty_print(e)) evaluates
// identically to e.
std::string pretty_print(const ExprPtr& e);

// AST constructors used by builtin generators and conformal scaling.
ExprPtr expr_number(double v);
ExprPtr expr_binary(ExprNode::Kind op, ExprPtr a, ExprPtr b);
ExprPtr expr_call(FuncKind f, ExprPtr a);

namespace detail {
template <class T>
T ipow(T base, unsigned e) {
  if (e == 0) return T(1);
  T r = base;
  --e;
  while (e > 0) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return r;
}
}  // namespace detail

template <class T>
T eval(const ExprNode& e, std::span<const T> coords,
       std::span<const double> params) {
  using std::cos;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sqrt;
  switch (e.kind) {
    case ExprNode::Kind::kNumber:
      return T(e.number);
    case ExprNode::Kind::kCoord:
      return coords[static_cast<size_t>(e.index)];
    case ExprNode::Kind::kParam:
      return T(params[static_cast<size_t>(e.index)]);
    case ExprNode::Kind::kAdd:
      return eval(*e.a, coords, params) + eval(*e.b, coords, params);
    case ExprNode::Kind::kSub:
      return eval(*e.a, coords, params) - eval(*e.b, coords, params);
    case ExprNode::Kind::kMul:
      return eval(*e.a, coords, params) * eval(*e.b, coords, params);
    case ExprNode::Kind::kDiv: {
      T num = eval(*e.a, coords, params);
      T den = eval(*e.b, coords, params);
      if (scalar_value(den) == 0.0)
        throw EvalDomainError("division by zero", pretty_print(e.b));
      return num / den;
    }
    case ExprNode::Kind::kNeg:
      return -eval(*e.a, coords, params);
    case ExprNode::Kind::kPow:
      return detail::ipow(eval(*e.a, coords, params), e.exponent);
    case ExprNode::Kind::kCall: {
      T arg = eval(*e.a, coords, params);
      const double v = scalar_value(arg);
      switch (e.func) {
        case FuncKind::kSqrt:
          if (v <= 0.0)
            throw EvalDomainError("sqrt of non-positive value",
                                  pretty_print(e.a));
          return sqrt(arg);
        case FuncKind::kExp:
          return exp(arg);
        case FuncKind::kLog:
          if (v <= 0.0)
            throw EvalDomainError("log of non-positive value",
                                  pretty_print(e.a));
          return log(arg);
        case FuncKind::kSin:
          return sin(arg);
        case FuncKind::kCos:
          return cos(arg);
      }
      break;
    }
  }
  throw std::logic_error("corrupt expression node");
}

}  // namespace rlab
