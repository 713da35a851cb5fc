#include "rlab/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace rlab {
namespace {

const std::array<std::pair<std::string_view, FuncKind>, 5> kFuncs = {{
    {"sqrt", FuncKind::kSqrt},
    {"exp", FuncKind::kExp},
    {"log", FuncKind::kLog},
    {"sin", FuncKind::kSin},
    {"cos", FuncKind::kCos},
}};

struct Parser {
  std::string_view text;
  size_t pos = 0;
  int dim;
  std::span<const std::string> params;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  ExprPtr make(ExprNode&& n) { return std::make_shared<const ExprNode>(std::move(n)); }

  ExprPtr parse_expr() {
    ExprPtr lhs;
    if (eat('-')) {
      ExprNode neg;
      neg.kind = ExprNode::Kind::kNeg;
      neg.a = parse_term();
      lhs = make(std::move(neg));
    } else {
      lhs = parse_term();
    }
    for (;;) {
      if (eat('+')) {
        lhs = expr_binary(ExprNode::Kind::kAdd, lhs, parse_term());
      } else if (eat('-')) {
        lhs = expr_binary(ExprNode::Kind::kSub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    for (;;) {
      if (eat('*')) {
        lhs = expr_binary(ExprNode::Kind::kMul, lhs, parse_factor());
      } else if (eat('/')) {
        lhs = expr_binary(ExprNode::Kind::kDiv, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_factor() {
    ExprPtr base = parse_base();
    if (!eat('^')) return base;
    skip_ws();
    const size_t start = pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("exponent must be a non-negative integer literal");
    unsigned e = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      e = e * 10 + static_cast<unsigned>(text[pos] - '0');
      if (e > 64) fail("exponent too large (max 64)");
      ++pos;
    }
    if (pos < text.size() && (text[pos] == '.' || text[pos] == 'e' || text[pos] == 'E')) {
      pos = start;
      fail("fractional exponents are not supported; use sqrt(...) for half powers");
    }
    ExprNode n;
    n.kind = ExprNode::Kind::kPow;
    n.exponent = e;
    n.a = base;
    return make(std::move(n));
  }

  ExprPtr parse_base() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression");
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos;
      ExprPtr inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    const size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      size_t mark = pos;
      ++pos;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      } else {
        pos = mark;  // 'e' belongs to a following identifier, not the number
      }
    }
    const std::string token(text.substr(start, pos - start));
    if (token == "." || token.empty()) {
      pos = start;
      fail("malformed number");
    }
    ExprNode n;
    n.kind = ExprNode::Kind::kNumber;
    n.number = std::stod(token);
    return make(std::move(n));
  }

  ExprPtr parse_ident() {
    const size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    const std::string_view name = text.substr(start, pos - start);

    for (const auto& [fname, fkind] : kFuncs) {
      if (name == fname) {
        if (!eat('(')) fail("expected '(' after function name");
        ExprNode n;
        n.kind = ExprNode::Kind::kCall;
        n.func = fkind;
        n.a = parse_expr();
        if (!eat(')')) fail("expected ')'");
        return make(std::move(n));
      }
    }

    // Coordinate: 'x' followed by digits only.
    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const int idx = std::stoi(std::string(name.substr(1)));
      if (idx < 1 || idx > dim) {
        pos = start;
        fail("coordinate " + std::string(name) + " out of range for dimension " +
             std::to_string(dim));
      }
      ExprNode n;
      n.kind = ExprNode::Kind::kCoord;
      n.index = idx - 1;
      return make(std::move(n));
    }

    for (size_t i = 0; i < params.size(); ++i) {
      if (params[i] == name) {
        ExprNode n;
        n.kind = ExprNode::Kind::kParam;
        n.index = static_cast<int>(i);
        n.name = std::string(name);
        return make(std::move(n));
      }
    }
    pos = start;
    fail("unknown identifier '" + std::string(name) + "'");
  }
};

int precedence(const ExprNode& e) {
  switch (e.kind) {
    case ExprNode::Kind::kNumber:
      // A negative literal prints with a leading '-', so it binds like one.
      return e.number < 0 ? 1 : 4;
    case ExprNode::Kind::kAdd:
    case ExprNode::Kind::kSub:
    case ExprNode::Kind::kNeg:
      return 1;
    case ExprNode::Kind::kMul:
    case ExprNode::Kind::kDiv:
      return 2;
    case ExprNode::Kind::kPow:
      return 3;
    default:
      return 4;
  }
}

void print(const ExprNode& e, std::string& out) {
  auto child = [&](const ExprPtr& c, bool need_parens) {
    if (need_parens) out += '(';
    print(*c, out);
    if (need_parens) out += ')';
  };
  switch (e.kind) {
    case ExprNode::Kind::kNumber: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", e.number);
      out += buf;
      return;
    }
    case ExprNode::Kind::kCoord:
      out += "x" + std::to_string(e.index + 1);
      return;
    case ExprNode::Kind::kParam:
      out += e.name;
      return;
    case ExprNode::Kind::kAdd:
      child(e.a, precedence(*e.a) < 1);
      out += " + ";
      child(e.b, precedence(*e.b) < 1);
      return;
    case ExprNode::Kind::kSub:
      child(e.a, precedence(*e.a) < 1);
      out += " - ";
      child(e.b, precedence(*e.b) <= 1);
      return;
    case ExprNode::Kind::kMul:
      child(e.a, precedence(*e.a) < 2);
      out += "*";
      child(e.b, precedence(*e.b) < 2);
      return;
    case ExprNode::Kind::kDiv:
      child(e.a, precedence(*e.a) < 2);
      out += "/";
      child(e.b, precedence(*e.b) <= 2);
      return;
    case ExprNode::Kind::kNeg:
      out += "-";
      child(e.a, precedence(*e.a) <= 1);
      return;
    case ExprNode::Kind::kPow:
      child(e.a, precedence(*e.a) <= 3);
      out += "^" + std::to_string(e.exponent);
      return;
    case ExprNode::Kind::kCall: {
      switch (e.func) {
        case FuncKind::kSqrt: out += "sqrt"; break;
        case FuncKind::kExp: out += "exp"; break;
        case FuncKind::kLog: out += "log"; break;
        case FuncKind::kSin: out += "sin"; break;
        case FuncKind::kCos: out += "cos"; break;
      }
      out += '(';
      print(*e.a, out);
      out += ')';
      return;
    }
  }
}

}  // namespace

ExprPtr parse_expression(std::string_view text, int dim,
                         std::span<const std::string> params) {
  Parser p{text, 0, dim, params};
  ExprPtr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing characters after expression");
  return e;
}

std::string pretty_print(const ExprPtr& e) {
  std::string out;
  print(*e, out);
  return out;
}

ExprPtr expr_number(double v) {
  ExprNode n;
  n.kind = ExprNode::Kind::kNumber;
  n.number = v;
  return std::make_shared<const ExprNode>(std::move(n));
}

ExprPtr expr_binary(ExprNode::Kind op, ExprPtr a, ExprPtr b) {
  ExprNode n;
  n.kind = op;
  n.a = std::move(a);
  n.b = std::move(b);
  return std::make_shared<const ExprNode>(std::move(n));
}

ExprPtr expr_call(FuncKind f, ExprPtr a) {
  ExprNode n;
  n.kind = ExprNode::Kind::kCall;
  n.func = f;
  n.a = std::move(a);
  return std::make_shared<const ExprNode>(std::move(n));
}

}  // namespace rlab
