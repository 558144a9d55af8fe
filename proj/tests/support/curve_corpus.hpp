#pragma once

// Systems with explicit solution curves shared by the variational,
// monodromy and acceptance suites.

#include <complex>
#include <string>
#include <vector>

#include "nhg/variational/system.hpp"

namespace nhg::testing {

struct CurveSystem {
  std::string name;
  VectorField field;
  SolutionCurve curve;
  std::complex<double> base_point;
};

inline CurveSystem make_curve_system(const std::string& name, const std::vector<std::string>& vars,
                                     const std::vector<std::string>& comps, const std::vector<std::string>& curve,
                                     std::vector<std::complex<double>> excluded = {},
                                     std::complex<double> t0 = {1.0, 0.0}) {
  VariableContext ctx(vars);
  return {name, VectorField::parse(ctx, comps), SolutionCurve::parse("t", curve, std::move(excluded)), t0};
}

inline CurveSystem riccati() { return make_curve_system("riccati", {"z1"}, {"z1^2"}, {"-1/t"}, {{0.0, 0.0}}); }

inline CurveSystem symmetric_cubic() {
  return make_curve_system("symmetric_cubic", {"z1", "z2", "z3"}, {"z2*z3", "z3*z1", "z1*z2"},
                           {"-1/t", "-1/t", "-1/t"}, {{0.0, 0.0}});
}

inline CurveSystem harmonic() {
  return make_curve_system("harmonic", {"z1", "z2"}, {"z2", "-z1"}, {"sin(t)", "cos(t)"});
}

inline CurveSystem linear_upper() {
  return make_curve_system("linear_upper", {"z1", "z2"}, {"z1 + 2*z2", "3*z2"}, {"exp(3*t)", "exp(3*t)"});
}

inline CurveSystem planar_riccati() {
  return make_curve_system("planar_riccati", {"z1", "z2"}, {"z1^2", "z1*z2"}, {"-1/t", "1/t"}, {{0.0, 0.0}});
}

inline std::vector<CurveSystem> curve_corpus() {
  return {riccati(), symmetric_cubic(), harmonic(), linear_upper(), planar_riccati()};
}

}  // namespace nhg::testing
