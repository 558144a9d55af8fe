#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace nhg {

using Complex = std::complex<double>;

struct IntegratorOptions {
  /// Relative and absolute local error per step (mixed test).
  double rtol = 1e-10;
  double atol = 1e-10;
  /// Smallest step as a fraction of the interval before giving up.
  double min_step_fraction = 1e-14;
  long max_steps = 2'000'000;
  /// Abort when the state norm exceeds this (0 disables).
  double blowup_norm = 0.0;
};

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
  long evaluations = 0;
};

/// dy/ds = f(s, y) with complex state. `f` writes dy into its third argument.
using ComplexRhs = std::function<void(double, const Complex*, Complex*)>;

/// Explicit 8(5,3) Dormand-Prince pair with Hairer's step control. Advances
/// `y` from s0 to s1 (s1 >= s0). Throws kStepUnderflow, kNonFinite or
/// kBlowUp.
void dop853(const ComplexRhs& f, double s0, double s1, std::vector<Complex>& y,
            const IntegratorOptions& options = {}, IntegrationStats* stats = nullptr);

}  // namespace nhg
