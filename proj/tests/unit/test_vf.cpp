#include <doctest.h>

#include <random>

#include "nhg/error.hpp"
#include "nhg/expr/zero_test.hpp"
#include "nhg/vf/vector_field.hpp"
#include "support/random_poly.hpp"

using namespace nhg;

namespace {

// Sign s with {h_X, h_Y} = s * h_[X,Y] under the conventions in use.
constexpr int kBracketSign = -1;

VectorField random_field(std::mt19937_64& rng, const VariableContext& ctx, int degree) {
  return VectorField(ctx, testing::random_components(rng, ctx.names(), degree));
}

bool field_exact_zero(const VectorField& v) {
  for (const auto& c : v.components()) {
    if (is_zero(c) != ZeroVerdict::kExactZero) return false;
  }
  return true;
}

Expression E(const std::string& t, const VariableContext& c) { return parse(t, c); }

}  // namespace

TEST_CASE("dual names") {
  CotangentContext cc(VariableContext({"z1", "z2", "x", "p_y", "y"}));
  CHECK(cc.extended().names() ==
        std::vector<std::string>{"z1", "z2", "x", "p_y", "y", "p1", "p2", "p_x", "p_p_y", "p_y_"});
  CotangentContext cc2(VariableContext({"z1", "p1"}));
  CHECK(cc2.dual_name(0) == "p1_");
  CHECK(cc2.dual_name(1) == "p_p1");
}

TEST_CASE("apply_field examples") {
  VariableContext c({"z1", "z2"});
  VectorField X = VectorField::parse(c, {"z2", "-z1"});
  CHECK(is_zero(apply_field(X, ScalarField(c, E("z1^2 + z2^2", c))).value()) == ZeroVerdict::kExactZero);
  CHECK(is_zero(apply_field(X, ScalarField(c, E("7/3", c))).value()) == ZeroVerdict::kExactZero);
  VariableContext c1({"z1"});
  CHECK(apply_field(VectorField::parse(c1, {"1"}), ScalarField(c1, E("z1", c1))).value().structurally_equal(
      Expression::integer(1)));
  CHECK_THROWS_AS(apply_field(X, ScalarField(c1, E("z1", c1))), Error);
}

TEST_CASE("lie_bracket examples") {
  VariableContext c({"z1", "z2"});
  VectorField X = VectorField::parse(c, {"1", "0"});
  VectorField Y = VectorField::parse(c, {"0", "z1"});
  CHECK(lie_bracket(X, Y).equals(VectorField::parse(c, {"0", "1"})));
  CHECK(lie_bracket(Y, Y).is_zero_field());
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    VectorField A = random_field(rng, c, 2);
    VectorField B = random_field(rng, c, 2);
    CHECK(field_exact_zero(add(lie_bracket(A, B), lie_bracket(B, A))));
  }
}

TEST_CASE("jacobian examples") {
  VariableContext c({"z1", "z2"});
  ExprMatrix j = jacobian(VectorField::parse(c, {"z2", "-z1"}));
  CHECK(j[0][0].structurally_equal(Expression::integer(0)));
  CHECK(j[0][1].structurally_equal(Expression::integer(1)));
  CHECK(j[1][0].structurally_equal(Expression::integer(-1)));
  CHECK(j[1][1].structurally_equal(Expression::integer(0)));
  ExprMatrix z = jacobian(VectorField::zero(c));
  for (auto& row : z)
    for (auto& e : row) CHECK(e.structurally_equal(Expression::integer(0)));
  ExprMatrix id = jacobian(VectorField::parse(c, {"z1", "z2"}));
  CHECK(id[0][0].structurally_equal(Expression::integer(1)));
  CHECK(id[1][1].structurally_equal(Expression::integer(1)));
  CHECK(id[0][1].structurally_equal(Expression::integer(0)));
  ExprMatrix j2 = jacobian(VectorField::parse(c, {"z1^2*z2", "0"}));
  CHECK(j2[0][1].structurally_equal(normalize(E("z1^2", c))));
}

TEST_CASE("fiber_hamiltonian examples") {
  VariableContext c({"z1", "z2", "z3"});
  CotangentContext cc(c);
  CHECK(is_zero(fiber_hamiltonian(VectorField::zero(c), cc).value()) == ZeroVerdict::kExactZero);
  ScalarField h = fiber_hamiltonian(VectorField::parse(c, {"z2*z3", "z3*z1", "z1*z2"}), cc);
  CHECK(equivalent(h.value(), E("z2*z3*p1 + z3*z1*p2 + z1*z2*p3", cc.extended())));
  VariableContext c1({"z1"});
  CotangentContext cc1(c1);
  CHECK(fiber_hamiltonian(VectorField::parse(c1, {"1"}), cc1).value().structurally_equal(
      Expression::variable("p1")));
}

TEST_CASE("cotangent_lift_field examples") {
  VariableContext c1({"z1"});
  CotangentContext cc1(c1);
  CHECK(cotangent_lift_field(VectorField::zero(c1), cc1).is_zero_field());
  CHECK(cotangent_lift_field(VectorField::parse(c1, {"z1"}), cc1)
            .equals(VectorField::parse(cc1.extended(), {"z1", "-p1"})));
  CHECK(cotangent_lift_field(VectorField::parse(c1, {"z1^2"}), cc1)
            .equals(VectorField::parse(cc1.extended(), {"z1^2", "-2*z1*p1"})));
  CHECK_THROWS_AS(cotangent_lift_field(VectorField::parse(cc1.extended(), {"z1", "p1"}), cc1), Error);
}

TEST_CASE("hamiltonian_vector_field examples") {
  CotangentContext cc(VariableContext({"z1"}));
  const auto& ext = cc.extended();
  CHECK(hamiltonian_vector_field(ScalarField(ext, E("p1", ext)), cc).equals(VectorField::parse(ext, {"1", "0"})));
  CHECK(hamiltonian_vector_field(ScalarField(ext, E("z1", ext)), cc).equals(VectorField::parse(ext, {"0", "-1"})));
}

TEST_CASE("poisson_bracket examples") {
  CotangentContext cc(VariableContext({"z1", "z2"}));
  const auto& ext = cc.extended();
  auto S = [&](const char* t) { return ScalarField(ext, E(t, ext)); };
  CHECK(poisson_bracket(S("z1"), S("p1"), cc).value().structurally_equal(Expression::integer(1)));
  CHECK(poisson_bracket(S("p1"), S("z1"), cc).value().structurally_equal(Expression::integer(-1)));
  CHECK(is_zero(poisson_bracket(S("z1"), S("z2"), cc).value()) == ZeroVerdict::kExactZero);
  CHECK(is_zero(poisson_bracket(S("p1"), S("p2"), cc).value()) == ZeroVerdict::kExactZero);

  std::mt19937_64 rng(22);
  for (int i = 0; i < 30; ++i) {
    ScalarField f(cc.base(), testing::random_polynomial(rng, cc.base().names(), 3));
    ScalarField g(cc.base(), testing::random_polynomial(rng, cc.base().names(), 3));
    ScalarField b = poisson_bracket(pull_to_extended(f, cc), pull_to_extended(g, cc), cc);
    CHECK(is_zero(b.value()) == ZeroVerdict::kExactZero);
  }
}

TEST_CASE("cotangent_lift_map examples") {
  VariableContext c({"z1", "z2"});
  CotangentContext cc(c);
  const auto& ext = cc.extended();
  auto id = cotangent_lift_map(MapGerm::identity(c), cc);
  for (std::size_t i = 0; i < 4; ++i) CHECK(id[i].structurally_equal(Expression::variable(ext[i])));

  // A = [[2,1],[1,1]], A^{-T} = [[1,-1],[-1,2]]
  auto lin = cotangent_lift_map(MapGerm(c, {E("2*z1 + z2", c), E("z1 + z2", c)}), cc);
  CHECK(equivalent(lin[2], E("p1 - p2", ext)));
  CHECK(equivalent(lin[3], E("-p1 + 2*p2", ext)));

  VariableContext c1({"z1"});
  CotangentContext cc1(c1);
  auto sq = cotangent_lift_map(MapGerm(c1, {E("z1^2", c1)}), cc1);
  CHECK(equivalent(sq[0], E("z1^2", cc1.extended())));
  CHECK(equivalent(sq[1], E("p1/(2*z1)", cc1.extended())));

  CHECK_THROWS_AS(cotangent_lift_map(MapGerm(c, {E("z1+z2", c), E("2*z1+2*z2", c)}), cc), Error);
}

TEST_CASE("determinant and adjugate") {
  VariableContext c({"z1", "z2"});
  ExprMatrix m{{E("z1", c), E("z2", c)}, {E("1", c), E("z1", c)}};
  CHECK(equivalent(determinant(m), E("z1^2 - z2", c)));
  ExprMatrix adj = adjugate(m);
  CHECK(equivalent(adj[0][0], E("z1", c)));
  CHECK(equivalent(adj[0][1], E("-z2", c)));
  CHECK(equivalent(adj[1][0], E("-1", c)));
}

TEST_CASE("property: Jacobi identity for the Lie bracket") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    VariableContext c(testing::base_names(1 + trial % 3));
    VectorField X = random_field(rng, c, 2);
    VectorField Y = random_field(rng, c, 2);
    VectorField Z = random_field(rng, c, 2);
    VectorField j = add(add(lie_bracket(lie_bracket(X, Y), Z), lie_bracket(lie_bracket(Y, Z), X)),
                        lie_bracket(lie_bracket(Z, X), Y));
    CHECK(field_exact_zero(j));
    CHECK(field_exact_zero(add(lie_bracket(X, Y), lie_bracket(Y, X))));
  }
}

TEST_CASE("property: Leibniz rule for the Lie bracket") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    VariableContext c(testing::base_names(1 + trial % 3));
    VectorField X = random_field(rng, c, 2);
    VectorField Y = random_field(rng, c, 2);
    Expression f = testing::random_polynomial(rng, c.names(), 2);
    VectorField lhs = lie_bracket(X, scale(f, Y));
    VectorField rhs = add(scale(apply_field(X, ScalarField(c, f)).value(), Y), scale(f, lie_bracket(X, Y)));
    CHECK(field_exact_zero(add(lhs, scale(Expression::integer(-1), rhs))));
  }
}

TEST_CASE("property: lift equals Hamiltonian field of the fiber-linear function") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    VariableContext c(testing::base_names(1 + trial % 3));
    CotangentContext cc(c);
    VectorField X = random_field(rng, c, 3);
    VectorField lift = cotangent_lift_field(X, cc);
    VectorField ham = hamiltonian_vector_field(fiber_hamiltonian(X, cc), cc);
    CHECK(lift.equals(ham));
    for (std::size_t i = 0; i < lift.dimension(); ++i) CHECK(lift[i].structurally_equal(ham[i]));
  }
}

TEST_CASE("property: bracket homomorphism sign") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    VariableContext c(testing::base_names(1 + trial % 3));
    CotangentContext cc(c);
    VectorField X = random_field(rng, c, 2);
    VectorField Y = random_field(rng, c, 2);
    Expression lhs = poisson_bracket(fiber_hamiltonian(X, cc), fiber_hamiltonian(Y, cc), cc).value();
    Expression hb = fiber_hamiltonian(lie_bracket(X, Y), cc).value();
    CHECK(is_zero(lhs - Expression::integer(kBracketSign) * hb) == ZeroVerdict::kExactZero);
  }
}

TEST_CASE("property: Poisson Jacobi and Leibniz") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    VariableContext c(testing::base_names(1 + trial % 2));
    CotangentContext cc(c);
    const auto& names = cc.extended().names();
    ScalarField F(cc.extended(), testing::random_polynomial(rng, names, 2));
    ScalarField G(cc.extended(), testing::random_polynomial(rng, names, 2));
    ScalarField H(cc.extended(), testing::random_polynomial(rng, names, 2));
    auto pb = [&](const ScalarField& a, const ScalarField& b) { return poisson_bracket(a, b, cc); };
    Expression jac = pb(pb(F, G), H).value() + pb(pb(G, H), F).value() + pb(pb(H, F), G).value();
    CHECK(is_zero(jac) == ZeroVerdict::kExactZero);
    ScalarField GH(cc.extended(), G.value() * H.value());
    Expression leib = pb(F, GH).value() - pb(F, G).value() * H.value() - G.value() * pb(F, H).value();
    CHECK(is_zero(leib) == ZeroVerdict::kExactZero);
    CHECK(is_zero(pb(F, G).value() + pb(G, F).value()) == ZeroVerdict::kExactZero);
  }
}

TEST_CASE("property: cotangent lift of maps is symplectic") {
  std::mt19937_64 rng(36);
  int tested = 0;
  for (int trial = 0; tested < 100; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 3);
    VariableContext c(testing::base_names(m));
    CotangentContext cc(c);
    // Identity plus a random perturbation keeps the Jacobian generically invertible.
    std::vector<Expression> comps;
    for (std::size_t i = 0; i < m; ++i) {
      comps.push_back(Expression::variable(c[i]) + testing::random_polynomial(rng, c.names(), 2, 2));
    }
    std::vector<Expression> lifted;
    try {
      lifted = cotangent_lift_map(MapGerm(c, comps), cc);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::kSingularJacobian);
      continue;
    }
    ++tested;
    const std::size_t n = 2 * m;
    ExprMatrix D = jacobian(cc.extended(), lifted);
    auto S = [&](std::size_t i, std::size_t j) -> int {
      if (i < m && j == i + m) return 1;
      if (i >= m && j + m == i) return -1;
      return 0;
    };
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        RationalFunction sum;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            const int s = S(i, j);
            if (s == 0) continue;
            sum = sum + D[i][a].rational_form() * D[j][b].rational_form() * RationalFunction::constant(s);
          }
        }
        sum = sum - RationalFunction::constant(S(a, b));
        CHECK(sum.is_zero());
      }
    }
  }
}

TEST_CASE("property: lift of a composition is the composition of lifts") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> coef(-3, 3);
  int tested = 0;
  for (int trial = 0; tested < 100; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 3);
    VariableContext c(testing::base_names(m));
    CotangentContext cc(c);
    auto random_linear = [&]() {
      std::vector<Expression> comps;
      for (std::size_t i = 0; i < m; ++i) {
        Expression e = Expression::integer(0);
        for (std::size_t j = 0; j < m; ++j) {
          e = e + Expression::integer(coef(rng)) * Expression::variable(c[j]);
        }
        comps.push_back(e);
      }
      return comps;
    };
    auto phi = random_linear();
    auto psi = random_linear();
    std::vector<Expression> lift_phi, lift_psi, lift_comp;
    try {
      lift_phi = cotangent_lift_map(MapGerm(c, phi), cc);
      lift_psi = cotangent_lift_map(MapGerm(c, psi), cc);
      lift_comp = cotangent_lift_map(MapGerm(c, compose(c, phi, psi)), cc);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::kSingularJacobian);
      continue;
    }
    ++tested;
    auto composed = compose(cc.extended(), lift_phi, lift_psi);
    for (std::size_t i = 0; i < composed.size(); ++i) {
      CHECK(is_zero(composed[i] - lift_comp[i]) == ZeroVerdict::kExactZero);
    }
  }
}
