#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nhg/monodromy/monodromy.hpp"
#include "nhg/variational/system.hpp"

namespace nhg {

struct LiftCompareOptions {
  TransportOptions transport{};
  /// Total degree of the candidate monomials; 0 means n + 1.
  int degree_bound = 0;
  int oversampling = 3;
  double block_tolerance = 1e-8;
  double span_tolerance = 1e-6;
  /// Relative residual below which a base entry counts as dependent on the
  /// entries already selected.
  double basis_threshold = 1e-9;
  /// Singular values below this fraction of the largest are discarded.
  double rank_threshold = 1e-12;
};

struct LiftCompareReport {
  int order = 1;
  std::size_t base_dimension = 0;
  std::size_t lifted_dimension = 0;
  /// "block" for n = 1, "span" otherwise.
  std::string mode;
  /// Lifted jet position k corresponds to position permutation[k] of
  /// blockdiag(N, N^-T) (n = 1 only).
  std::vector<std::size_t> permutation;
  double block_residual = 0.0;
  int degree_bound = 0;
  std::size_t basis_size = 0;
  std::size_t monomials = 0;
  std::size_t samples = 0;
  std::size_t required_samples = 0;
  double span_residual = 0.0;
  bool pass = false;
  std::string message;
};

/// Integrates the dual VE_n of X and of its cotangent lift (along gamma
/// embedded in the zero section) over `path` and compares the fundamental
/// matrices at every waypoint after the first. Throws kSolutionCheck when
/// gamma does not solve X and kProximity when the path runs into a pole of
/// either system.
LiftCompareReport lift_ve_compare(const VectorField& X, const SolutionCurve& gamma, int n, const Polyline& path,
                                  const LiftCompareOptions& options = {});

/// Same comparison on a seeded random polyline around t0 inside half the
/// distance to the nearest pole, with enough waypoints for the span test.
LiftCompareReport lift_ve_compare_auto(const VectorField& X, const SolutionCurve& gamma, int n, Complex t0,
                                       std::uint64_t seed = 0, const LiftCompareOptions& options = {});

/// The curve (gamma, 0, ..., 0) in the cotangent bundle.
SolutionCurve zero_section_curve(const SolutionCurve& gamma, std::size_t m);

}  // namespace nhg
