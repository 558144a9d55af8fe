#include "nhg/expr/expression.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "nhg/error.hpp"

namespace nhg {

struct Node {
  NodeKind kind = NodeKind::kConstant;
  std::string name;
  Rational value;
  int exponent = 0;
  FuncHead head = FuncHead::kExp;
  std::vector<Expression> children;

  mutable std::once_flag normal_once;
  mutable std::shared_ptr<const RationalFunction> normal;
};

namespace {

std::shared_ptr<Node> make_node(NodeKind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

const std::vector<Expression>& empty_children() {
  static const std::vector<Expression> none;
  return none;
}

}  // namespace

// --------------------------------------------------------- VariableContext

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  return std::all_of(name.begin(), name.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

bool is_reserved_name(std::string_view name) {
  return name == "exp" || name == "log" || name == "sin" || name == "cos";
}

VariableContext::VariableContext(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_valid_identifier(n)) {
      throw Error(ErrorCode::kInvalidArgument, "invalid variable name '" + n + "'");
    }
    if (is_reserved_name(n)) {
      throw Error(ErrorCode::kInvalidArgument, "reserved function name used as variable: '" + n + "'");
    }
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate variable name '" + n + "'");
    }
  }
}

bool VariableContext::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t VariableContext::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw Error(ErrorCode::kUnknownVariable, "unknown variable '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - names_.begin());
}

// -------------------------------------------------------------- Expression

Expression::Expression() : Expression(constant(Rational(0))) {}

Expression Expression::variable(const std::string& name) {
  auto n = make_node(NodeKind::kVariable);
  n->name = name;
  return Expression(std::move(n));
}

Expression Expression::constant(const Rational& value) {
  auto n = make_node(NodeKind::kConstant);
  n->value = value;
  n->value.canonicalize();
  return Expression(std::move(n));
}

Expression Expression::add(const Expression& a, const Expression& b) {
  auto n = make_node(NodeKind::kAdd);
  n->children = {a, b};
  return Expression(std::move(n));
}

Expression Expression::sub(const Expression& a, const Expression& b) {
  auto n = make_node(NodeKind::kSub);
  n->children = {a, b};
  return Expression(std::move(n));
}

Expression Expression::mul(const Expression& a, const Expression& b) {
  auto n = make_node(NodeKind::kMul);
  n->children = {a, b};
  return Expression(std::move(n));
}

Expression Expression::div(const Expression& a, const Expression& b) {
  if (b.kind() == NodeKind::kConstant && b.value() == 0) {
    throw Error(ErrorCode::kDivisionByZero, "division by the constant zero");
  }
  auto n = make_node(NodeKind::kDiv);
  n->children = {a, b};
  return Expression(std::move(n));
}

Expression Expression::pow(const Expression& base, int exponent) {
  auto n = make_node(NodeKind::kPow);
  n->children = {base};
  n->exponent = exponent;
  return Expression(std::move(n));
}

Expression Expression::neg(const Expression& a) {
  auto n = make_node(NodeKind::kNeg);
  n->children = {a};
  return Expression(std::move(n));
}

Expression Expression::func(FuncHead head, const Expression& arg) {
  auto n = make_node(NodeKind::kFunc);
  n->children = {arg};
  n->head = head;
  return Expression(std::move(n));
}

NodeKind Expression::kind() const { return node_->kind; }
const std::string& Expression::name() const { return node_->name; }
const Rational& Expression::value() const { return node_->value; }
int Expression::exponent() const { return node_->exponent; }
FuncHead Expression::head() const { return node_->head; }
const std::vector<Expression>& Expression::children() const {
  return node_ ? node_->children : empty_children();
}

bool Expression::structurally_equal(const Expression& other) const {
  if (node_ == other.node_) return true;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::kVariable: return a.name == b.name;
    case NodeKind::kConstant: return a.value == b.value;
    case NodeKind::kPow:
      if (a.exponent != b.exponent) return false;
      break;
    case NodeKind::kFunc:
      if (a.head != b.head) return false;
      break;
    default: break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!a.children[i].structurally_equal(b.children[i])) return false;
  }
  return true;
}

// ----------------------------------------------------------------- printer

namespace {

int precedence(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::kAdd:
    case NodeKind::kSub: return 1;
    case NodeKind::kMul:
    case NodeKind::kDiv: return 2;
    case NodeKind::kNeg: return 3;
    case NodeKind::kPow: return 4;
    case NodeKind::kConstant:
      if (e.value() < 0) return 3;
      if (e.value().get_den() != 1) return 2;
      return 5;
    default: return 5;
  }
}

void print(const Expression& e, std::string& out);

void print_wrapped(const Expression& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print(e, out);
  if (parens) out += ')';
}

void print(const Expression& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::kVariable: out += e.name(); return;
    case NodeKind::kConstant: out += e.value().get_str(); return;
    case NodeKind::kFunc:
      out += func_head_name(e.head());
      out += '(';
      print(e.children()[0], out);
      out += ')';
      return;
    case NodeKind::kNeg:
      out += '-';
      print_wrapped(e.children()[0], precedence(e.children()[0]) < 3, out);
      return;
    case NodeKind::kPow:
      print_wrapped(e.children()[0], precedence(e.children()[0]) <= 4, out);
      out += '^';
      if (e.exponent() < 0) {
        out += "(" + std::to_string(e.exponent()) + ")";
      } else {
        out += std::to_string(e.exponent());
      }
      return;
    default: break;
  }
  const int p = precedence(e);
  const char* op = "";
  switch (e.kind()) {
    case NodeKind::kAdd: op = " + "; break;
    case NodeKind::kSub: op = " - "; break;
    case NodeKind::kMul: op = "*"; break;
    case NodeKind::kDiv: op = "/"; break;
    default: break;
  }
  print_wrapped(e.children()[0], precedence(e.children()[0]) < p, out);
  out += op;
  print_wrapped(e.children()[1], precedence(e.children()[1]) <= p, out);
}

}  // namespace

std::string Expression::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

// ----------------------------------------------------------- normal forms

RationalFunction make_kernel(FuncHead head, const RationalFunction& arg) {
  if (arg.is_constant()) {
    const Rational v = arg.constant_value();
    if (v == 0) {
      if (head == FuncHead::kExp || head == FuncHead::kCos) return RationalFunction::constant(1);
      if (head == FuncHead::kSin) return RationalFunction{};
      throw Error(ErrorCode::kDomain, "log(0) is undefined");
    }
    if (v == 1 && head == FuncHead::kLog) return RationalFunction{};
  }
  auto data = std::make_shared<AtomData>();
  data->is_variable = false;
  data->head = head;
  data->argument = std::make_shared<const RationalFunction>(arg);
  data->key = std::string(func_head_name(head)) + "(" + from_rational(arg).to_string() + ")";
  return RationalFunction(Polynomial::atom(data));
}

namespace {

RationalFunction compute_rational_form(const Node& n) {
  switch (n.kind) {
    case NodeKind::kVariable: return RationalFunction(Polynomial::atom(make_variable_atom(n.name)));
    case NodeKind::kConstant: return RationalFunction::constant(n.value);
    case NodeKind::kAdd: return n.children[0].rational_form() + n.children[1].rational_form();
    case NodeKind::kSub: return n.children[0].rational_form() - n.children[1].rational_form();
    case NodeKind::kMul: return n.children[0].rational_form() * n.children[1].rational_form();
    case NodeKind::kDiv: return n.children[0].rational_form() / n.children[1].rational_form();
    case NodeKind::kNeg: return -n.children[0].rational_form();
    case NodeKind::kPow: return n.children[0].rational_form().pow(n.exponent);
    case NodeKind::kFunc: return make_kernel(n.head, n.children[0].rational_form());
  }
  throw Error(ErrorCode::kInternal, "unknown node kind");
}

Expression atom_tree(const Atom& atom) {
  if (atom->is_variable) return Expression::variable(atom->key);
  return Expression::func(atom->head, from_rational(*atom->argument));
}

Expression factor_tree(const Factor& f) {
  Expression base = atom_tree(f.atom);
  return f.exponent == 1 ? base : Expression::pow(base, f.exponent);
}

// Product of the monomial's factors, left-associated; the first factor is
// wrapped in a negation when `negate_first`.
Expression monomial_tree(const Monomial& m, bool negate_first) {
  Expression acc;
  bool first = true;
  for (const auto& f : m.factors()) {
    Expression t = factor_tree(f);
    if (first) {
      acc = negate_first ? Expression::neg(t) : t;
      first = false;
    } else {
      acc = Expression::mul(acc, t);
    }
  }
  return acc;
}

Expression term_tree(const Monomial& m, const Rational& c) {
  if (m.empty()) return Expression::constant(c);
  if (c == 1) return monomial_tree(m, false);
  if (c == -1) return monomial_tree(m, true);
  return Expression::mul(Expression::constant(c), monomial_tree(m, false));
}

Expression polynomial_tree(const Polynomial& p) {
  if (p.is_zero()) return Expression::constant(0);
  Expression acc;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (first) {
      acc = term_tree(m, c);
      first = false;
    } else if (c < 0) {
      acc = Expression::sub(acc, term_tree(m, Rational(-c)));
    } else {
      acc = Expression::add(acc, term_tree(m, c));
    }
  }
  return acc;
}

}  // namespace

const RationalFunction& Expression::rational_form() const {
  const Node& n = *node_;
  std::call_once(n.normal_once, [&n] {
    if (!n.normal) n.normal = std::make_shared<const RationalFunction>(compute_rational_form(n));
  });
  return *n.normal;
}

Expression from_rational(const RationalFunction& rf) {
  Expression out = polynomial_tree(rf.numerator());
  if (!rf.is_polynomial()) out = Expression::div(out, polynomial_tree(rf.denominator()));
  // A fresh tree is not yet shared, so seeding its cache is race-free.
  const_cast<Node*>(out.node_.get())->normal = std::make_shared<const RationalFunction>(rf);
  return out;
}

Expression normalize(const Expression& e) { return from_rational(e.rational_form()); }

namespace {

void collect_conditions(const Expression& e, std::vector<Expression>& out) {
  for (const auto& c : e.children()) collect_conditions(c, out);
  const Expression* guarded = nullptr;
  if (e.kind() == NodeKind::kDiv) guarded = &e.children()[1];
  if (e.kind() == NodeKind::kPow && e.exponent() < 0) guarded = &e.children()[0];
  if (e.kind() == NodeKind::kFunc && e.head() == FuncHead::kLog) guarded = &e.children()[0];
  if (guarded == nullptr || guarded->rational_form().is_constant()) return;
  Expression cond = normalize(*guarded);
  for (const auto& seen : out) {
    if (seen.structurally_equal(cond)) return;
  }
  out.push_back(cond);
}

}  // namespace

NormalizedWithConditions normalize_with_conditions(const Expression& e) {
  NormalizedWithConditions out{normalize(e), {}};
  collect_conditions(e, out.nonzero_conditions);
  return out;
}

// --------------------------------------------------------- differentiation

namespace {

RationalFunction atom_derivative(const Atom& atom, const std::string& var) {
  if (atom->is_variable) {
    return atom->key == var ? RationalFunction::constant(1) : RationalFunction{};
  }
  const RationalFunction& u = *atom->argument;
  RationalFunction du = differentiate(u, var);
  if (du.is_zero()) return du;
  switch (atom->head) {
    case FuncHead::kExp: return RationalFunction(Polynomial::atom(atom)) * du;
    case FuncHead::kLog: return du / u;
    case FuncHead::kSin: return make_kernel(FuncHead::kCos, u) * du;
    case FuncHead::kCos: return -(make_kernel(FuncHead::kSin, u) * du);
  }
  throw Error(ErrorCode::kInternal, "unknown function head");
}

RationalFunction polynomial_derivative(const Polynomial& p, const std::string& var) {
  Polynomial poly_part;
  RationalFunction rest;
  for (const auto& atom : p.atoms()) {
    if (atom->is_variable) {
      if (atom->key == var) poly_part = poly_part + p.formal_derivative(atom->key);
      continue;
    }
    RationalFunction da = atom_derivative(atom, var);
    if (da.is_zero()) continue;
    rest = rest + RationalFunction(p.formal_derivative(atom->key)) * da;
  }
  return RationalFunction(std::move(poly_part)) + rest;
}

}  // namespace

RationalFunction differentiate(const RationalFunction& rf, const std::string& var) {
  RationalFunction dn = polynomial_derivative(rf.numerator(), var);
  if (rf.is_polynomial()) return dn;
  RationalFunction dd = polynomial_derivative(rf.denominator(), var);
  const RationalFunction num(rf.numerator());
  const RationalFunction den(rf.denominator());
  return (dn * den - num * dd) / (den * den);
}

Expression differentiate(const Expression& e, const std::string& var) {
  return from_rational(differentiate(e.rational_form(), var));
}

// ------------------------------------------------------------ substitution

namespace {

RationalFunction substitute_polynomial(const Polynomial& p,
                                       const std::map<std::string, RationalFunction>& repl) {
  bool all_polynomial = std::all_of(repl.begin(), repl.end(),
                                    [](const auto& kv) { return kv.second.is_polynomial(); });
  std::map<std::pair<std::string, int>, RationalFunction> powers;
  auto power = [&](const Atom& a, int e) -> const RationalFunction& {
    auto key = std::make_pair(a->key, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, repl.at(a->key).pow(e)).first->second;
  };
  if (all_polynomial) {
    Polynomial out;
    for (const auto& [m, c] : p.terms()) {
      Polynomial term = Polynomial::constant(c);
      for (const auto& f : m.factors()) term = term * power(f.atom, f.exponent).numerator();
      out = out + term;
    }
    return RationalFunction(std::move(out));
  }
  RationalFunction out;
  for (const auto& [m, c] : p.terms()) {
    RationalFunction term = RationalFunction::constant(c);
    for (const auto& f : m.factors()) term = term * power(f.atom, f.exponent);
    out = out + term;
  }
  return out;
}

}  // namespace

RationalFunction substitute(const RationalFunction& rf,
                            const std::map<std::string, RationalFunction>& bindings) {
  std::map<std::string, RationalFunction> repl;
  bool any_change = false;
  for (const auto& atom : rf.atoms()) {
    if (atom->is_variable) {
      auto it = bindings.find(atom->key);
      if (it != bindings.end()) {
        repl.emplace(atom->key, it->second);
        any_change = true;
      } else {
        repl.emplace(atom->key, RationalFunction(Polynomial::atom(atom)));
      }
    } else {
      RationalFunction arg = substitute(*atom->argument, bindings);
      any_change = any_change || !(arg == *atom->argument);
      repl.emplace(atom->key, make_kernel(atom->head, arg));
    }
  }
  if (!any_change) return rf;
  RationalFunction num = substitute_polynomial(rf.numerator(), repl);
  if (rf.is_polynomial()) return num;
  RationalFunction den = substitute_polynomial(rf.denominator(), repl);
  if (den.is_zero()) throw Error(ErrorCode::kDivisionByZero, "substitution makes a denominator vanish");
  return num / den;
}

Expression substitute(const Expression& e, const std::map<std::string, Expression>& bindings) {
  std::map<std::string, RationalFunction> rb;
  for (const auto& [k, v] : bindings) rb.emplace(k, v.rational_form());
  return from_rational(substitute(e.rational_form(), rb));
}

// ------------------------------------------------------------------ misc

namespace {

void collect_variables(const Expression& e, std::set<std::string>& out) {
  if (e.kind() == NodeKind::kVariable) {
    out.insert(e.name());
    return;
  }
  for (const auto& c : e.children()) collect_variables(c, out);
}

}  // namespace

std::vector<std::string> free_variables(const Expression& e) {
  std::set<std::string> vars;
  collect_variables(e, vars);
  return {vars.begin(), vars.end()};
}

bool equivalent(const Expression& a, const Expression& b) {
  return (a.rational_form() - b.rational_form()).is_zero();
}

void require_in_context(const Expression& e, const VariableContext& ctx) {
  for (const auto& v : free_variables(e)) {
    if (!ctx.contains(v)) throw Error(ErrorCode::kUnknownVariable, "unknown variable '" + v + "'");
  }
}

}  // namespace nhg
