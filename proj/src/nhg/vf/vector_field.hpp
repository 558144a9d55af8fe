#pragma once

#include <string>
#include <vector>

#include "nhg/expr/expression.hpp"

namespace nhg {

using ExprMatrix = std::vector<std::vector<Expression>>;

/// Components a_i of X = sum a_i d/dz_i over an ordered context.
class VectorField {
 public:
  /// Throws kInvalidArgument on a count mismatch and kUnknownVariable when
  /// a component leaves the context. Components are stored as given.
  VectorField(VariableContext ctx, std::vector<Expression> components);
  static VectorField zero(const VariableContext& ctx);
  static VectorField parse(const VariableContext& ctx, const std::vector<std::string>& texts);

  const VariableContext& ctx() const { return ctx_; }
  const std::vector<Expression>& components() const { return components_; }
  const Expression& operator[](std::size_t i) const { return components_[i]; }
  std::size_t dimension() const { return components_.size(); }

  VectorField normalized() const;
  /// Componentwise canonical-form equality.
  bool equals(const VectorField& other) const;
  bool is_zero_field() const;

 private:
  VariableContext ctx_;
  std::vector<Expression> components_;
};

class ScalarField {
 public:
  ScalarField(VariableContext ctx, Expression value);
  const VariableContext& ctx() const { return ctx_; }
  const Expression& value() const { return value_; }

 private:
  VariableContext ctx_;
  Expression value_;
};

/// Base coordinates z_1..z_m followed by their duals p_1..p_m.
class CotangentContext {
 public:
  explicit CotangentContext(VariableContext base);

  const VariableContext& base() const { return base_; }
  const VariableContext& extended() const { return extended_; }
  std::size_t base_dimension() const { return base_.dimension(); }
  const std::string& dual_name(std::size_t i) const { return extended_[base_.dimension() + i]; }

 private:
  VariableContext base_;
  VariableContext extended_;
};

/// `z1` -> `p1`, any other `x` -> `p_x`; underscores are appended until
/// the name clashes with nothing in `taken`.
std::string dual_variable_name(const std::string& base, const std::vector<std::string>& taken);

/// Components of a local map z -> Phi(z).
class MapGerm {
 public:
  MapGerm(VariableContext ctx, std::vector<Expression> components);
  static MapGerm identity(const VariableContext& ctx);

  const VariableContext& ctx() const { return ctx_; }
  const std::vector<Expression>& components() const { return components_; }
  std::size_t dimension() const { return components_.size(); }

 private:
  VariableContext ctx_;
  std::vector<Expression> components_;
};

ScalarField apply_field(const VectorField& X, const ScalarField& f);
VectorField lie_bracket(const VectorField& X, const VectorField& Y);
/// Entry (i, j) is d a_i / d z_j.
ExprMatrix jacobian(const VectorField& X);
ExprMatrix jacobian(const VariableContext& ctx, const std::vector<Expression>& components);

ScalarField fiber_hamiltonian(const VectorField& X, const CotangentContext& cc);
VectorField cotangent_lift_field(const VectorField& X, const CotangentContext& cc);
/// z-components dH/dp, p-components -dH/dz.
VectorField hamiltonian_vector_field(const ScalarField& H, const CotangentContext& cc);
ScalarField poisson_bracket(const ScalarField& F, const ScalarField& G, const CotangentContext& cc);
/// A base function viewed on the cotangent bundle.
ScalarField pull_to_extended(const ScalarField& f, const CotangentContext& cc);

/// (Phi(z), (DPhi)^{-T} p) over the extended context, computed by exact
/// adjugate / determinant. Throws kSingularJacobian when det DPhi vanishes
/// identically.
std::vector<Expression> cotangent_lift_map(const MapGerm& phi, const CotangentContext& cc);

/// outer(inner(z)): substitutes `inner` for the variables of `ctx` in each
/// outer component.
std::vector<Expression> compose(const VariableContext& ctx, const std::vector<Expression>& outer,
                                const std::vector<Expression>& inner);

/// Exact determinant over canonical forms.
Expression determinant(const ExprMatrix& m);
ExprMatrix adjugate(const ExprMatrix& m);

VectorField scale(const Expression& f, const VectorField& Y);
VectorField add(const VectorField& X, const VectorField& Y);

}  // namespace nhg
