#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "nhg/error.hpp"
#include "nhg/expr/evaluate.hpp"
#include "nhg/expr/expression.hpp"
#include "nhg/expr/zero_test.hpp"
#include "support/random_poly.hpp"

using namespace nhg;

namespace {

VariableContext ctx3() { return VariableContext({"z1", "z2", "z3", "p1", "t"}); }

Expression P(const std::string& text) { return parse(text, ctx3()); }

bool same_normal(const Expression& a, const Expression& b) {
  return normalize(a).structurally_equal(normalize(b));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("variable context validation") {
  CHECK_THROWS_AS(VariableContext({"z1", "z1"}), Error);
  CHECK_THROWS_AS(VariableContext({"1z"}), Error);
  CHECK_THROWS_AS(VariableContext({"exp"}), Error);
  VariableContext c({"a", "b_2"});
  CHECK(c.dimension() == 2);
  CHECK(c.index_of("b_2") == 1);
  CHECK(code_of([&] { (void)c.index_of("q"); }) == ErrorCode::kUnknownVariable);
}

TEST_CASE("parse basics") {
  Expression zero = P("0");
  CHECK(zero.is_constant_node());
  CHECK(zero.value() == 0);

  Expression e = P("z1^2*p1 - 3/2");
  REQUIRE(e.kind() == NodeKind::kSub);
  CHECK(e.children()[1].is_constant_node());
  CHECK(e.children()[1].value() == Rational(3, 2));
  const Expression& lhs = e.children()[0];
  REQUIRE(lhs.kind() == NodeKind::kMul);
  CHECK(lhs.children()[0].kind() == NodeKind::kPow);
  CHECK(lhs.children()[0].exponent() == 2);
  CHECK(lhs.children()[1].name() == "p1");

  CHECK(P("2/4").value() == Rational(1, 2));
  CHECK(P("  z1 +\tz2 ").kind() == NodeKind::kAdd);
}

TEST_CASE("parse precedence and associativity") {
  std::map<std::string, Complex> pt{{"z1", 2.0}, {"z2", 3.0}, {"z3", 5.0}};
  CHECK(evaluate(P("2^3^2"), pt).real() == doctest::Approx(512.0));
  CHECK(evaluate(P("-z1^2"), pt).real() == doctest::Approx(-4.0));
  CHECK(evaluate(P("z3/z1/z2"), pt).real() == doctest::Approx(5.0 / 6.0));
  CHECK(evaluate(P("z3 - z1 - z2"), pt).real() == doctest::Approx(0.0));
  CHECK(evaluate(P("z1*3/2"), pt).real() == doctest::Approx(3.0));
  CHECK(evaluate(P("z1^3/2"), pt).real() == doctest::Approx(4.0));
  CHECK(evaluate(P("z1^-1"), pt).real() == doctest::Approx(0.5));
  CHECK(evaluate(P("exp(0)*sin(z1)^2+cos(z1)^2"), pt).real() == doctest::Approx(1.0));
}

TEST_CASE("parse errors") {
  try {
    (void)P("(z1");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("end of input") != std::string::npos);
  }
  try {
    (void)P("z1 + * z2");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    REQUIRE(e.position().has_value());
    CHECK(*e.position() == 5);
  }
  try {
    (void)P("z1 + q7");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownVariable);
    CHECK(std::string(e.what()).find("q7") != std::string::npos);
  }
  CHECK(code_of([] { (void)P("z1/0"); }) == ErrorCode::kParse);
  CHECK(code_of([] { (void)P("3/0"); }) == ErrorCode::kParse);
  CHECK(code_of([] { (void)(P("z1") / Expression::integer(0)); }) == ErrorCode::kDivisionByZero);
  CHECK(code_of([] { (void)P("z1^z2"); }) == ErrorCode::kParse);
  CHECK(code_of([] { (void)P("z1^(1/2)"); }) == ErrorCode::kParse);
  CHECK(code_of([] { (void)P("tan(z1)"); }) == ErrorCode::kUnknownVariable);
  CHECK(code_of([] { (void)P(""); }) == ErrorCode::kParse);
  CHECK(code_of([] { (void)P("z1 z2"); }) == ErrorCode::kParse);
}

TEST_CASE("differentiate") {
  CHECK(differentiate(P("5"), "z1").structurally_equal(P("0")));
  CHECK(differentiate(P("z1^2"), "z1").structurally_equal(normalize(P("2*z1"))));
  CHECK(same_normal(differentiate(P("exp(z1*z2)"), "z1"), P("z2*exp(z1*z2)")));
  CHECK(same_normal(differentiate(P("log(z1)"), "z1"), P("1/z1")));
  CHECK(same_normal(differentiate(P("sin(z1^2)"), "z1"), P("2*z1*cos(z1^2)")));
  CHECK(same_normal(differentiate(P("cos(z1)"), "z1"), P("-sin(z1)")));
  CHECK(same_normal(differentiate(P("1/z1"), "z1"), P("-1/z1^2")));
  CHECK(same_normal(differentiate(P("z2/(z1+z2)"), "z1"), P("-z2/(z1+z2)^2")));
}

TEST_CASE("substitute") {
  std::map<std::string, Expression> b1{{"z1", Expression::variable("t")}};
  CHECK(same_normal(substitute(P("z1^2"), b1), P("t^2")));
  std::map<std::string, Expression> b2{{"z1", Expression::integer(0)}};
  CHECK(same_normal(substitute(P("z1*z2 + z2"), b2), P("z2")));
  std::map<std::string, Expression> b3{{"z1", P("-1/t")}, {"z2", P("-1/t")}};
  CHECK(same_normal(substitute(P("z1*z2"), b3), P("1/t^2")));
  std::map<std::string, Expression> swap{{"z1", P("z2")}, {"z2", P("z1")}};
  CHECK(same_normal(substitute(P("z1 - 2*z2"), swap), P("z2 - 2*z1")));
  std::map<std::string, Expression> inner{{"z1", P("t+1")}};
  CHECK(same_normal(substitute(P("exp(z1)"), inner), P("exp(t+1)")));
}

TEST_CASE("evaluate") {
  Complex v = evaluate(P("z1^2"), {{"z1", Complex(2, 0)}});
  CHECK(v.real() == doctest::Approx(4.0));
  CHECK(v.imag() == doctest::Approx(0.0));
  CHECK(code_of([] { (void)evaluate(P("1/z1"), {{"z1", 0.0}}); }) == ErrorCode::kPole);
  CHECK(code_of([] { (void)evaluate(P("log(z1)"), {{"z1", 0.0}}); }) == ErrorCode::kDomain);
  CHECK(evaluate(P("exp(z1)"), {{"z1", 0.0}}) == Complex(1.0));
  CHECK(code_of([] { (void)evaluate(P("z1+z2"), {{"z1", 0.0}}); }) == ErrorCode::kInvalidArgument);

  Complex i(0, 1);
  Complex w = evaluate(P("z1^2 + 1"), {{"z1", i}});
  CHECK(std::abs(w) < 1e-15);

  Expression e = P("(z1 + 2*z2)/(z1 - z2) + exp(z1)");
  CompiledScalar prog(e, {"z1", "z2"});
  std::vector<Complex> pt{Complex(0.3, 0.1), Complex(-1.2, 0.7)};
  Complex direct = evaluate(e, {{"z1", pt[0]}, {"z2", pt[1]}});
  CHECK(std::abs(prog(pt) - direct) < 1e-14);
}

TEST_CASE("normalize") {
  CHECK(normalize(P("(z1 + z2)^2 - z1^2 - 2*z1*z2 - z2^2")).structurally_equal(P("0")));
  CHECK(normalize(P("2/4")).value() == Rational(1, 2));

  auto r = normalize_with_conditions(P("z1/z1"));
  CHECK(r.value.structurally_equal(P("1")));
  REQUIRE(r.nonzero_conditions.size() == 1);
  CHECK(r.nonzero_conditions[0].structurally_equal(P("z1")));

  CHECK(normalize(P("(z1^2 - z2^2)/(z1 - z2)")).structurally_equal(normalize(P("z1 + z2"))));
  CHECK(normalize(P("exp(z1 + z1)")).structurally_equal(normalize(P("exp(2*z1)"))));
  CHECK(normalize(P("(z1^2-1)/(z1-1)")).structurally_equal(normalize(P("z1+1"))));

  Expression n = normalize(P("(z1+1)^3/(z2*z1) - sin(z3)/(2*z1)"));
  CHECK(normalize(n).structurally_equal(n));
  CHECK(normalize(n).to_string() == n.to_string());
}

TEST_CASE("is_zero") {
  CHECK(is_zero(P("z1 - z1")) == ZeroVerdict::kExactZero);
  CHECK(is_zero(P("sin(z1)^2 + cos(z1)^2 - 1")) == ZeroVerdict::kProbablyZero);
  CHECK(is_zero(P("z1")) == ZeroVerdict::kNonzero);
  CHECK(is_zero(P("exp(z1)*exp(z2) - exp(z1+z2)")) == ZeroVerdict::kProbablyZero);
  CHECK(is_zero(P("exp(log(z1)) - z1")) == ZeroVerdict::kProbablyZero);
  CHECK(is_zero(P("sin(z1)*1/1000000")) == ZeroVerdict::kNonzero);
  CHECK(is_zero(P("3")) == ZeroVerdict::kNonzero);
  CHECK(weakest(ZeroVerdict::kExactZero, ZeroVerdict::kProbablyZero) == ZeroVerdict::kProbablyZero);
}

TEST_CASE("printing") {
  CHECK(P("z1^2*p1 - 3/2").to_string() == "z1^2*p1 - 3/2");
  CHECK(normalize(P("z2 + z1")).to_string() == "z1 + z2");
  CHECK(normalize(P("-z1")).to_string() == "-z1");
  CHECK(P("z1 - (z2 - z3)").to_string() == "z1 - (z2 - z3)");
  CHECK(P("(z1*z2)^2").to_string() == "(z1*z2)^2");
  CHECK(P("(-z1)^2").to_string() == "(-z1)^2");
  CHECK(P("z1^(-2)").to_string() == "z1^(-2)");
}

TEST_CASE("property: linearity of differentiation") {
  std::mt19937_64 rng(11);
  const auto vars = testing::base_names(3);
  for (int trial = 0; trial < 100; ++trial) {
    Expression e1 = testing::random_polynomial(rng, vars, 3);
    Expression e2 = testing::random_polynomial(rng, vars, 3);
    Expression a = Expression::constant(testing::random_rational(rng));
    Expression b = Expression::constant(testing::random_rational(rng));
    const std::string& v = vars[trial % vars.size()];
    Expression lhs = differentiate(a * e1 + b * e2, v);
    Expression rhs = a * differentiate(e1, v) + b * differentiate(e2, v);
    CHECK(is_zero(lhs - rhs) == ZeroVerdict::kExactZero);
  }
}

TEST_CASE("property: product rule") {
  std::mt19937_64 rng(12);
  const auto vars = testing::base_names(3);
  for (int trial = 0; trial < 100; ++trial) {
    Expression e1 = testing::random_polynomial(rng, vars, 3);
    Expression e2 = testing::random_polynomial(rng, vars, 3);
    const std::string& v = vars[trial % vars.size()];
    Expression d = differentiate(e1 * e2, v) - e1 * differentiate(e2, v) - e2 * differentiate(e1, v);
    CHECK(is_zero(d) == ZeroVerdict::kExactZero);
  }
}

TEST_CASE("property: mixed partials commute") {
  std::mt19937_64 rng(13);
  const auto vars = testing::base_names(3);
  for (int trial = 0; trial < 100; ++trial) {
    Expression e = testing::random_polynomial(rng, vars, 4);
    if (trial % 3 == 0) e = e / (testing::random_polynomial(rng, vars, 1) + Expression::integer(7));
    const std::string& u = vars[trial % 3];
    const std::string& w = vars[(trial + 1) % 3];
    Expression d = differentiate(differentiate(e, u), w) - differentiate(differentiate(e, w), u);
    CHECK(is_zero(d) == ZeroVerdict::kExactZero);
  }
}

TEST_CASE("property: evaluate after substitute") {
  std::mt19937_64 rng(14);
  const auto vars = testing::base_names(3);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Expression e = testing::random_polynomial(rng, vars, 3);
    if (trial % 2 == 0) e = e + Expression::func(FuncHead::kSin, Expression::variable("z2"));
    Expression g = testing::random_polynomial(rng, vars, 2);
    const std::string& v = vars[trial % 3];
    std::map<std::string, Complex> pt;
    for (const auto& name : vars) pt[name] = random_sample_coordinate(rng);
    Complex via_sub = evaluate(substitute(e, {{v, g}}), pt);
    auto extended = pt;
    extended[v] = evaluate(g, pt);
    Complex direct = evaluate(e, extended);
    CHECK(std::abs(via_sub - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("property: print then parse round trip") {
  std::mt19937_64 rng(15);
  const auto vars = testing::base_names(3);
  VariableContext ctx(vars);
  for (int trial = 0; trial < 100; ++trial) {
    Expression e = testing::random_polynomial(rng, vars, 3);
    if (trial % 3 == 1) e = e / (testing::random_polynomial(rng, vars, 2) + Expression::integer(5));
    if (trial % 4 == 2) e = e * Expression::func(FuncHead::kExp, testing::random_polynomial(rng, vars, 1));
    if (trial % 5 == 3) e = -Expression::pow(e, -2);
    Expression back = parse(e.to_string(), ctx);
    CHECK(normalize(back).structurally_equal(normalize(e)));
    Expression n = normalize(e);
    CHECK(parse(n.to_string(), ctx).structurally_equal(n) == true);
    CHECK(normalize(n).structurally_equal(n));
  }
}
