#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nhg/monodromy/path.hpp"
#include "nhg/numeric/dop853.hpp"
#include "nhg/numeric/linalg.hpp"
#include "nhg/variational/system.hpp"
#include "nhg/verdict.hpp"

namespace nhg {

struct SearchBox {
  Complex lower;
  Complex upper;
  bool contains(Complex z) const;
  static SearchBox centered(Complex c, double half_width);
};

struct SingularitySet {
  std::vector<Complex> points;
  std::vector<int> multiplicity;
  double tolerance = 1e-8;
};

/// Poles of A(t) inside `box`: roots of the squarefree parts of the entry
/// denominators (companion eigenvalues, Newton-polished), clustered at
/// 1e-8. Entries with log kernels, kernels in a denominator, or kernels of
/// non-polynomial arguments need `candidates`; without them kUnsupported
/// is thrown. Candidates inside the box are always included.
SingularitySet find_singularities(const LinearVariationalSystem& sys, const SearchBox& box,
                                  const std::vector<Complex>& candidates = {});

struct TransportOptions {
  IntegratorOptions integrator{};
  double min_distance = 1e-6;
};

/// Continues Y' = A(t) Y along `path` from Y0. When `sing` is given the
/// path must keep min_distance from every point (kProximity otherwise).
MatrixC integrate_path(const CompiledMatrix& a, const Path& path, const MatrixC& y0,
                       const TransportOptions& options = {}, const SingularitySet* sing = nullptr,
                       IntegrationStats* stats = nullptr);
MatrixC integrate_path(const LinearVariationalSystem& sys, const Polyline& path, const MatrixC& y0,
                       const TransportOptions& options = {}, const SingularitySet* sing = nullptr);

/// Values at every waypoint of `path` (the first is Y0).
std::vector<MatrixC> integrate_waypoints(const CompiledMatrix& a, const Polyline& path, const MatrixC& y0,
                                         const TransportOptions& options = {}, const SingularitySet* sing = nullptr);

/// Segment from t0 to the circle of radius r about sigma, one full
/// counterclockwise turn, and back.
Path standard_loop(Complex t0, Complex sigma, double r);

struct MonodromySample {
  Complex base_point;
  std::vector<Complex> singularities;
  std::vector<double> radii;
  std::vector<MatrixC> generators;
  std::vector<double> condition_numbers;
  double rtol = 1e-10;
};

/// Throws kInvalidArgument if t0 coincides with a singularity.
MonodromySample monodromy_generators(const LinearVariationalSystem& sys, Complex t0, const SingularitySet& sing,
                                     const TransportOptions& options = {});

struct AbelianityVerdict {
  Verdict verdict = Verdict::kInconclusive;
  double worst_deviation = 0.0;
  int word_length = 3;
  std::size_t words = 0;
  bool commutators_vanish = false;
  bool monomial_structure = false;
  std::vector<std::string> diagnostics;
};

/// ||A B A^-1 B^-1 - I||_F / (||A||_F ||B||_F)
double commutator_deviation(const MatrixC& a, const MatrixC& b);

/// Heuristic: pass when all bounded words commute, or when one eigenbasis
/// puts every word in monomial (permutation times diagonal) form.
AbelianityVerdict virtual_abelianity_test(const std::vector<MatrixC>& generators, int word_length = 3,
                                          double tol = 1e-6, std::uint64_t seed = 0);

}  // namespace nhg
