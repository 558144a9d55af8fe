#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nhg/expr/polynomial.hpp"

namespace nhg {

using Complex = std::complex<double>;

/// Ordered list of distinct variable names.
class VariableContext {
 public:
  VariableContext() = default;
  /// Throws kInvalidArgument on duplicate, malformed, or reserved names.
  explicit VariableContext(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t dimension() const { return names_.size(); }
  bool contains(std::string_view name) const;
  /// Position of `name`; throws kUnknownVariable when absent.
  std::size_t index_of(std::string_view name) const;
  const std::string& operator[](std::size_t i) const { return names_[i]; }

  bool operator==(const VariableContext& other) const { return names_ == other.names_; }
  bool operator!=(const VariableContext& other) const { return names_ != other.names_; }

 private:
  std::vector<std::string> names_;
};

bool is_valid_identifier(std::string_view name);
bool is_reserved_name(std::string_view name);

enum class NodeKind { kVariable, kConstant, kAdd, kSub, kMul, kDiv, kPow, kNeg, kFunc };

struct Node;

/// Immutable expression tree. Copies share structure; all operations are
/// pure and the type is safe to share across threads.
class Expression {
 public:
  /// The constant zero.
  Expression();

  static Expression variable(const std::string& name);
  static Expression constant(const Rational& value);
  static Expression integer(long value) { return constant(Rational(value)); }
  static Expression add(const Expression& a, const Expression& b);
  static Expression sub(const Expression& a, const Expression& b);
  static Expression mul(const Expression& a, const Expression& b);
  /// Throws kDivisionByZero when `b` is the literal constant zero.
  static Expression div(const Expression& a, const Expression& b);
  static Expression pow(const Expression& base, int exponent);
  static Expression neg(const Expression& a);
  static Expression func(FuncHead head, const Expression& arg);

  NodeKind kind() const;
  const std::string& name() const;
  const Rational& value() const;
  int exponent() const;
  FuncHead head() const;
  /// Children: one for kNeg/kPow/kFunc, two for binary operators.
  const std::vector<Expression>& children() const;

  bool is_constant_node() const { return kind() == NodeKind::kConstant; }
  bool structurally_equal(const Expression& other) const;
  std::string to_string() const;

  /// Canonical form, computed once per node and cached.
  const RationalFunction& rational_form() const;

  const Node* node_ptr() const { return node_.get(); }

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Expression from_rational(const RationalFunction& rf);

  std::shared_ptr<const Node> node_;
};

inline Expression operator+(const Expression& a, const Expression& b) { return Expression::add(a, b); }
inline Expression operator-(const Expression& a, const Expression& b) { return Expression::sub(a, b); }
inline Expression operator*(const Expression& a, const Expression& b) { return Expression::mul(a, b); }
inline Expression operator/(const Expression& a, const Expression& b) { return Expression::div(a, b); }
inline Expression operator-(const Expression& a) { return Expression::neg(a); }

/// Tree for a canonical form: numerator terms in descending grlex order,
/// optionally over the denominator.
Expression from_rational(const RationalFunction& rf);

/// Kernel atom head(arg) with the trivial values exp(0), log(1), sin(0),
/// cos(0) folded.
RationalFunction make_kernel(FuncHead head, const RationalFunction& arg);

Expression parse(std::string_view text, const VariableContext& ctx);

Expression normalize(const Expression& e);

/// Canonical form plus the side conditions under which it equals `e`:
/// every non-constant divisor (and negative-power base, and log argument)
/// met in the original tree must be nonzero.
struct NormalizedWithConditions {
  Expression value;
  std::vector<Expression> nonzero_conditions;
};
NormalizedWithConditions normalize_with_conditions(const Expression& e);
Expression differentiate(const Expression& e, const std::string& var);
Expression substitute(const Expression& e, const std::map<std::string, Expression>& bindings);

RationalFunction differentiate(const RationalFunction& rf, const std::string& var);
RationalFunction substitute(const RationalFunction& rf,
                            const std::map<std::string, RationalFunction>& bindings);

/// Names of all variables occurring in `e`, including inside kernels.
std::vector<std::string> free_variables(const Expression& e);

/// Normalized difference is the zero constant.
bool equivalent(const Expression& a, const Expression& b);

/// Throws kUnknownVariable when `e` mentions a name outside `ctx`.
void require_in_context(const Expression& e, const VariableContext& ctx);

}  // namespace nhg
