// Recursive-descent parser for the expression grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative, integer exponent
//   primary := INT ('/' INT)? | IDENT | FUNC '(' expr ')' | '(' expr ')'
//
// An integer literal immediately followed by '/' and another integer literal
// is read as one rational constant, except where that would change the
// meaning (right operand of '/', exponent position, or a following '^').

#include <cctype>
#include <climits>

#include "nhg/error.hpp"
#include "nhg/expr/expression.hpp"

namespace nhg {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VariableContext& ctx) : text_(text), ctx_(ctx) {}

  Expression parse_all() {
    Expression e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    if (pos_ >= text_.size()) {
      throw Error(ErrorCode::kParse, "syntax error at end of input: " + what, pos_);
    }
    throw Error(ErrorCode::kParse,
                "syntax error at position " + std::to_string(pos_) + ": " + what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  mpz_class read_integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer literal");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Expression parse_expr() {
    Expression lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expression::add(lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expression::sub(lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expression parse_term() {
    Expression lhs = parse_unary(true);
    for (;;) {
      if (accept('*')) {
        lhs = Expression::mul(lhs, parse_unary(true));
      } else if (peek('/')) {
        const std::size_t at = pos_;
        ++pos_;
        Expression rhs = parse_unary(false);
        if (rhs.is_constant_node() && rhs.value() == 0) {
          pos_ = at;
          fail("division by zero");
        }
        lhs = Expression::div(lhs, rhs);
      } else {
        return lhs;
      }
    }
  }

  Expression parse_unary(bool allow_rational) {
    if (accept('-')) {
      Expression operand = parse_unary(allow_rational);
      if (operand.is_constant_node()) return Expression::constant(Rational(-operand.value()));
      return Expression::neg(operand);
    }
    if (accept('+')) return parse_unary(allow_rational);
    return parse_power(allow_rational);
  }

  Expression parse_power(bool allow_rational) {
    Expression base = parse_primary(allow_rational);
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t exp_pos = pos_;
    Expression exponent = parse_unary(false);
    const RationalFunction& rf = exponent.rational_form();
    if (!rf.is_constant() || rf.constant_value().get_den() != 1) {
      pos_ = exp_pos;
      fail("exponent must be an integer constant");
    }
    const mpz_class k = rf.constant_value().get_num();
    if (k > 100000 || k < -100000) {
      pos_ = exp_pos;
      fail("exponent out of range");
    }
    return Expression::pow(base, static_cast<int>(k.get_si()));
  }

  Expression parse_primary(bool allow_rational) {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected an operand");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = read_integer();
      if (allow_rational) {
        const std::size_t save = pos_;
        if (accept('/') && at_digit()) {
          mpz_class den = read_integer();
          if (!peek('^')) {
            if (den == 0) {
              pos_ = save;
              fail("division by zero");
            }
            return Expression::constant(Rational(num, den));
          }
        }
        pos_ = save;
      }
      return Expression::constant(Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string ident(text_.substr(start, pos_ - start));
      if (is_reserved_name(ident)) {
        if (!accept('(')) fail("expected '(' after function name '" + ident + "'");
        Expression arg = parse_expr();
        if (!accept(')')) fail("expected ')'");
        FuncHead head = FuncHead::kExp;
        if (ident == "log") head = FuncHead::kLog;
        if (ident == "sin") head = FuncHead::kSin;
        if (ident == "cos") head = FuncHead::kCos;
        return Expression::func(head, arg);
      }
      if (!ctx_.contains(ident)) {
        throw Error(ErrorCode::kUnknownVariable,
                    "unknown variable '" + ident + "' at position " + std::to_string(start), start);
      }
      return Expression::variable(ident);
    }
    if (c == '(') {
      ++pos_;
      Expression inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const VariableContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse(std::string_view text, const VariableContext& ctx) {
  return Parser(text, ctx).parse_all();
}

}  // namespace nhg
