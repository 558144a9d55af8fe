#pragma once

// Linear systems with poles shared by the monodromy and acceptance suites.

#include <string>
#include <vector>

#include "nhg/monodromy/monodromy.hpp"
#include "support/curve_corpus.hpp"

namespace nhg::testing {

inline LinearVariationalSystem matrix_system(const std::vector<std::vector<std::string>>& rows) {
  const VariableContext ctx({"t"});
  LinearVariationalSystem sys;
  sys.kind = SystemKind::kDirectVe1;
  sys.index_set = MultiIndexSet(rows.size(), 1);
  for (const auto& r : rows) {
    std::vector<Expression> row;
    for (const auto& e : r) row.push_back(parse(e, ctx));
    sys.coefficients.push_back(row);
  }
  return sys;
}

inline MatrixC identity(std::size_t d) {
  return MatrixC::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

/// Integrator settings for the 1e-8 path identities. Loops around poles of
/// the higher-order systems pass through entries of size |t|^-k, and the
/// default rtol loses about 1e-7 to cancellation there.
inline TransportOptions precise() {
  TransportOptions o;
  o.integrator.rtol = 1e-12;
  o.integrator.atol = 1e-12;
  return o;
}

inline SingularitySet poles(const LinearVariationalSystem& sys) {
  return find_singularities(sys, SearchBox::centered(0.0, 10.0));
}

struct Bundled {
  std::string name;
  LinearVariationalSystem sys;
  Complex base_point;
};

/// Scalar Euler equations, a two-pole triangular system, and VE_1 / dual
/// VE_2 of the curve corpus systems with poles.
inline std::vector<Bundled> bundled() {
  std::vector<Bundled> out{
      {"a=1/2", matrix_system({{"(1/2)/t"}}), 1.0},
      {"a=1/3", matrix_system({{"(1/3)/t"}}), 1.0},
      {"two_poles", matrix_system({{"1/(3*t)", "1/(t - 2)"}, {"0", "1/(2*t - 4)"}}), {1.0, 0.5}},
  };
  for (const auto& cs : {riccati(), symmetric_cubic(), planar_riccati()}) {
    out.push_back({cs.name + "/ve1", build_ve1(cs.field, cs.curve), cs.base_point});
    out.push_back({cs.name + "/dual2", build_dual_ve(cs.field, cs.curve, 2), cs.base_point});
  }
  return out;
}

}  // namespace nhg::testing
