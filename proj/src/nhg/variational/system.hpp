#pragma once

#include <string>
#include <vector>

#include "nhg/expr/evaluate.hpp"
#include "nhg/expr/zero_test.hpp"
#include "nhg/numeric/linalg.hpp"
#include "nhg/variational/multi_index.hpp"
#include "nhg/vf/vector_field.hpp"

namespace nhg {

/// t -> gamma(t) with components written in the single parameter.
struct SolutionCurve {
  std::string parameter = "t";
  std::vector<Expression> components;
  std::vector<Complex> excluded_points;

  VariableContext parameter_context() const { return VariableContext({parameter}); }
  static SolutionCurve parse(const std::string& parameter, const std::vector<std::string>& texts,
                             std::vector<Complex> excluded = {});
};

struct SolutionCheck {
  /// Weakest verdict over the residuals gamma_i' - a_i(gamma).
  ZeroVerdict verdict = ZeroVerdict::kNonzero;
  std::vector<ZeroVerdict> components;
  bool stationary = false;
  std::string message;
  bool ok() const { return verdict != ZeroVerdict::kNonzero && !stationary; }
};

/// Throws kInvalidArgument on a dimension mismatch or when the parameter
/// name collides with a variable.
SolutionCheck verify_solution(const VectorField& X, const SolutionCurve& gamma,
                              const ZeroTestOptions& options = {});

enum class SystemKind { kDirectVe1, kDualVe };
const char* system_kind_name(SystemKind k);

/// y' = A(t) y with A given by Expressions in the curve parameter.
struct LinearVariationalSystem {
  SystemKind kind = SystemKind::kDualVe;
  int order = 1;
  MultiIndexSet index_set;
  std::string parameter = "t";
  ExprMatrix coefficients;
  std::string provenance;

  std::size_t dimension() const { return coefficients.size(); }
};

/// A(t) = J(gamma(t)). Throws kSolutionCheck if gamma does not solve X.
LinearVariationalSystem build_ve1(const VectorField& X, const SolutionCurve& gamma);

/// Transport of the Taylor coefficients c_a (1 <= |a| <= n) of a function
/// germ centred at the moving point gamma(t):
///   c_a' = - sum_j sum_{0 < b <= a} A_{j,b}(t) ((a - b)_j + 1) c_{a - b + e_j}
/// with a_j(gamma(t) + w) = sum_b A_{j,b}(t) w^b.
LinearVariationalSystem build_dual_ve(const VectorField& X, const SolutionCurve& gamma, int n);

/// Same construction without the solution check, for callers that have
/// already certified the curve.
LinearVariationalSystem build_dual_ve_unchecked(const VectorField& X, const SolutionCurve& gamma, int n);

/// Numeric evaluator of A(t). Entries that are rational in t use Horner
/// evaluation of numerator and denominator.
class CompiledMatrix {
 public:
  CompiledMatrix() = default;
  explicit CompiledMatrix(const LinearVariationalSystem& sys);
  CompiledMatrix(const ExprMatrix& m, const std::string& parameter);

  std::size_t dimension() const { return dim_; }
  /// Throws kPole when t hits a denominator zero.
  void evaluate(Complex t, MatrixC& out) const;
  MatrixC operator()(Complex t) const;

 private:
  struct Entry {
    std::size_t row;
    std::size_t col;
    bool rational = false;
    std::vector<Complex> num;  // ascending powers
    std::vector<Complex> den;
    CompiledScalar program;
  };
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace nhg
