#include <doctest.h>

#include <random>

#include "nhg/integrability/certificate.hpp"
#include "support/random_poly.hpp"

using namespace nhg;

namespace {

struct Corpus {
  std::string name;
  IntegrabilityCertificate cert;
};

IntegrabilityCertificate make_cert(const std::vector<std::string>& vars, const std::vector<std::string>& x,
                                   const std::vector<std::vector<std::string>>& extra_fields,
                                   const std::vector<std::string>& integrals) {
  VariableContext c(vars);
  VectorField X = VectorField::parse(c, x);
  std::vector<VectorField> fields{X};
  for (const auto& f : extra_fields) fields.push_back(VectorField::parse(c, f));
  std::vector<ScalarField> fs;
  for (const auto& f : integrals) fs.emplace_back(c, parse(f, c));
  return IntegrabilityCertificate{X, fields, fs};
}

std::vector<Corpus> corpus() {
  return {
      {"symmetric cubic",
       make_cert({"z1", "z2", "z3"}, {"z2*z3", "z3*z1", "z1*z2"}, {}, {"z1^2 - z2^2", "z2^2 - z3^2"})},
      {"euler top", make_cert({"z1", "z2", "z3"}, {"4*z2*z3", "z3*z1", "z1*z2"}, {},
                              {"z1^2 - 4*z2^2", "z2^2 - z3^2"})},
      {"planar", make_cert({"z1", "z2"}, {"z1^2", "z1*z2"}, {{"0", "z2"}}, {})},
      {"harmonic", make_cert({"z1", "z2"}, {"z2", "-z1"}, {}, {"z1^2 + z2^2"})},
      {"riccati", make_cert({"z1"}, {"z1^2"}, {}, {})},
  };
}

// X = A z with commuting fields p_i(A) z, where p_i(A) = A^i.
IntegrabilityCertificate random_linear_certificate(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<std::vector<long>> a(m, std::vector<long>(m));
  for (auto& row : a)
    for (auto& v : row) v = coef(rng);
  VariableContext c(testing::base_names(m));
  auto field_of = [&](const std::vector<std::vector<long>>& mat) {
    std::vector<Expression> comps;
    for (std::size_t i = 0; i < m; ++i) {
      Expression e = Expression::integer(0);
      for (std::size_t j = 0; j < m; ++j) e = e + Expression::integer(mat[i][j]) * Expression::variable(c[j]);
      comps.push_back(e);
    }
    return VectorField(c, comps);
  };
  auto mul = [&](const std::vector<std::vector<long>>& x, const std::vector<std::vector<long>>& y) {
    std::vector<std::vector<long>> r(m, std::vector<long>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t q = 0; q < m; ++q) r[i][j] += x[i][q] * y[q][j];
    return r;
  };
  std::vector<VectorField> fields{field_of(a)};
  auto power = a;
  for (std::size_t i = 1; i < m; ++i) {
    power = mul(power, a);
    fields.push_back(field_of(power));
  }
  return IntegrabilityCertificate{fields[0], fields, {}};
}

}  // namespace

TEST_CASE("symmetric cubic certificate passes exactly") {
  auto cert = corpus()[0].cert;
  CertificateReport r = verify_certificate(cert);
  CHECK(r.structural_ok);
  CHECK(r.overall == Verdict::kPass);
  CHECK(r.all_exact());
  CHECK(r.identities.size() == 2);
  REQUIRE(r.independence.size() == 2);
  CHECK(r.independence[0].best_rank == 1);
  CHECK(r.independence[1].best_rank == 2);
  CHECK(r.independence[1].ranks.size() == 5);
}

TEST_CASE("count violation is a structural failure") {
  auto cert = make_cert({"z1", "z2", "z3"}, {"z2*z3", "z3*z1", "z1*z2"}, {}, {"z1^2 - z2^2"});
  CertificateReport r;
  CHECK_NOTHROW(r = verify_certificate(cert));
  CHECK_FALSE(r.structural_ok);
  CHECK(r.overall == Verdict::kFail);
  CHECK(r.all_exact());
}

TEST_CASE("first field must be the system") {
  auto cert = make_cert({"z1"}, {"z1^2"}, {}, {});
  cert.commuting_fields[0] = VectorField::parse(cert.system.ctx(), {"z1"});
  CertificateReport r = verify_certificate(cert);
  CHECK_FALSE(r.structural_ok);
  CHECK(r.overall == Verdict::kFail);
}

TEST_CASE("non-commuting pair fails on the bracket") {
  auto cert = make_cert({"z1", "z2"}, {"1", "0"}, {{"0", "z1"}}, {});
  CertificateReport r = verify_certificate(cert);
  CHECK(r.structural_ok);
  REQUIRE(r.identities.size() == 1);
  CHECK(r.identities[0].kind == "bracket");
  CHECK(*r.identities[0].verdict == ZeroVerdict::kNonzero);
  CHECK(r.overall == Verdict::kFail);
}

TEST_CASE("dependent fields fail the rank check") {
  auto cert = make_cert({"z1", "z2"}, {"z1", "z2"}, {{"2*z1", "2*z2"}}, {});
  CertificateReport r = verify_certificate(cert);
  CHECK(r.all_exact());
  CHECK_FALSE(r.independence[0].holds);
  CHECK(r.overall == Verdict::kFail);
}

TEST_CASE("lift_certificate recipe") {
  auto cert = corpus()[0].cert;
  LiouvilleCertificate lc = lift_certificate(cert);
  const auto& ext = lc.cc.extended();
  REQUIRE(lc.hamiltonians.size() == 3);
  CHECK(equivalent(lc.hamiltonians[0].value(), parse("z2*z3*p1 + z3*z1*p2 + z1*z2*p3", ext)));
  CHECK(equivalent(lc.hamiltonians[1].value(), parse("z1^2 - z2^2", ext)));
  CHECK(equivalent(lc.hamiltonians[2].value(), parse("z2^2 - z3^2", ext)));

  auto planar = lift_certificate(corpus()[2].cert);
  CHECK(equivalent(planar.hamiltonians[1].value(), parse("z2*p2", planar.cc.extended())));
}

TEST_CASE("verify_liouville on lifted certificates") {
  for (const auto& entry : corpus()) {
    CAPTURE(entry.name);
    CertificateReport base = verify_certificate(entry.cert);
    CHECK(base.overall == Verdict::kPass);
    CHECK(base.all_exact());
    CertificateReport lifted = verify_liouville(lift_certificate(entry.cert));
    CHECK(lifted.overall == Verdict::kPass);
    CHECK(lifted.all_exact());
    const std::size_t m = entry.cert.system.dimension();
    CHECK(lifted.identities.size() == m * (m - 1) / 2 + 1);
    CHECK(lifted.identities.back().kind == "lift_hamiltonian");
  }
}

TEST_CASE("canonical pair is not in involution") {
  CotangentContext cc(VariableContext({"z1"}));
  const auto& ext = cc.extended();
  LiouvilleCertificate lc{cc, {ScalarField(ext, parse("z1", ext)), ScalarField(ext, parse("p1", ext))}, {}};
  CertificateReport r = verify_liouville(lc);
  CHECK_FALSE(r.structural_ok);  // two functions for one degree of freedom
  REQUIRE(r.identities.size() == 1);
  CHECK(*r.identities[0].verdict == ZeroVerdict::kNonzero);
  CHECK(r.identities[0].residual == "1");
  CHECK(r.overall == Verdict::kFail);
  LiouvilleCertificate pair{CotangentContext(VariableContext({"z1", "z2"})), {}, {}};
  const auto& ext2 = pair.cc.extended();
  pair.hamiltonians = {ScalarField(ext2, parse("z1", ext2)), ScalarField(ext2, parse("p1", ext2))};
  CertificateReport r2 = verify_liouville(pair);
  CHECK(r2.structural_ok);
  REQUIRE(r2.identities.size() == 1);
  CHECK(*r2.identities[0].verdict == ZeroVerdict::kNonzero);
  CHECK(r2.overall == Verdict::kFail);
}

TEST_CASE("independent Hamiltonians pass the rank check") {
  CotangentContext cc(VariableContext({"z1", "z2", "z3"}));
  const auto& ext = cc.extended();
  LiouvilleCertificate lc{cc,
                          {ScalarField(ext, parse("p1", ext)), ScalarField(ext, parse("z2", ext)),
                           ScalarField(ext, parse("z3^2", ext))},
                          {}};
  CertificateReport r = verify_liouville(lc);
  CHECK(r.independence[0].holds);
  CHECK(r.independence[0].best_rank == 3);
  CHECK(r.overall == Verdict::kPass);
}

TEST_CASE("poles during sampling are resampled") {
  auto cert = make_cert({"z1", "z2"}, {"1/z1", "0"}, {{"0", "1/(z1*z2)"}}, {});
  CertificateReport r = verify_certificate(cert);
  CHECK(r.independence[0].failed_points == 0);
  CHECK(r.independence[0].ranks.size() == 5);
}

TEST_CASE("property: lifting preserves exact identities") {
  std::mt19937_64 rng(41);
  int passing = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto cert = random_linear_certificate(rng, 1 + static_cast<std::size_t>(trial % 3));
    CertificateReport base = verify_certificate(cert);
    CHECK(base.all_exact());
    if (base.all_exact()) {
      CertificateReport lifted = verify_liouville(lift_certificate(cert));
      CHECK(lifted.all_exact());
      if (base.overall == Verdict::kPass) {
        CHECK(lifted.overall == Verdict::kPass);
        ++passing;
      }
    }
  }
  CHECK(passing > 50);
}

TEST_CASE("property: bracket and first-integral implications") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    VariableContext c(testing::base_names(1 + trial % 3));
    CotangentContext cc(c);
    VectorField X(c, testing::random_components(rng, c.names(), 2));
    VectorField Y = trial % 2 == 0 ? X : VectorField(c, testing::random_components(rng, c.names(), 2));
    if (trial % 4 == 1) Y = scale(Expression::integer(3), X);
    ScalarField f(c, trial % 3 == 0 ? Expression::integer(5) : testing::random_polynomial(rng, c.names(), 2));
    const bool commute = lie_bracket(X, Y).is_zero_field();
    const bool inv = poisson_bracket(fiber_hamiltonian(X, cc), fiber_hamiltonian(Y, cc), cc).value()
                         .rational_form().is_zero();
    if (commute) CHECK(inv);
    const bool annihilates = apply_field(X, f).value().rational_form().is_zero();
    const bool inv_f = poisson_bracket(fiber_hamiltonian(X, cc), pull_to_extended(f, cc), cc).value()
                           .rational_form().is_zero();
    if (annihilates) CHECK(inv_f);
  }
}

TEST_CASE("rank verdict is monotone in the sample count") {
  for (const auto& entry : corpus()) {
    bool previous = false;
    for (int n = 1; n <= 8; ++n) {
      CheckOptions opt;
      opt.samples = n;
      CertificateReport r = verify_certificate(entry.cert, opt);
      bool holds = r.independence[0].holds && r.independence[1].holds;
      if (previous) CHECK(holds);
      previous = holds;
    }
    CHECK(previous);
  }
}
