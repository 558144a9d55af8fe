#include "nhg/vf/vector_field.hpp"

#include <algorithm>

#include "nhg/error.hpp"

namespace nhg {

namespace {

using RF = RationalFunction;
using RFMatrix = std::vector<std::vector<RF>>;

void require_same(const VariableContext& a, const VariableContext& b, const char* what) {
  if (a != b) throw Error(ErrorCode::kContextMismatch, std::string("context mismatch in ") + what);
}

RF rf_apply(const VectorField& X, const RF& f) {
  RF sum;
  for (std::size_t i = 0; i < X.dimension(); ++i) {
    const RF& a = X[i].rational_form();
    if (a.is_zero()) continue;
    const RF d = differentiate(f, X.ctx()[i]);
    if (d.is_zero()) continue;
    sum = sum + a * d;
  }
  return sum;
}

RF rf_determinant(RFMatrix a) {
  const std::size_t n = a.size();
  RF det = RF::constant(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) return RF();
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det = det * a[col][col];
    const RF inv = a[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const RF factor = a[r][col] * inv;
      for (std::size_t c = col + 1; c < n; ++c) {
        if (!a[col][c].is_zero()) a[r][c] = a[r][c] - factor * a[col][c];
      }
      a[r][col] = RF();
    }
  }
  return det;
}

RFMatrix to_rf(const ExprMatrix& m) {
  RFMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) throw Error(ErrorCode::kInvalidArgument, "matrix is not square");
    for (const auto& e : m[i]) out[i].push_back(e.rational_form());
  }
  return out;
}

RFMatrix rf_adjugate(const RFMatrix& a) {
  const std::size_t n = a.size();
  RFMatrix adj(n, std::vector<RF>(n));
  if (n == 1) {
    adj[0][0] = RF::constant(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RFMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<RF> row;
        for (std::size_t c = 0; c < n; ++c) {
          if (c != j) row.push_back(a[r][c]);
        }
        minor.push_back(std::move(row));
      }
      RF cof = rf_determinant(std::move(minor));
      if ((i + j) % 2 == 1) cof = -cof;
      adj[j][i] = cof;
    }
  }
  return adj;
}

}  // namespace

VectorField::VectorField(VariableContext ctx, std::vector<Expression> components)
    : ctx_(std::move(ctx)), components_(std::move(components)) {
  if (components_.size() != ctx_.dimension()) {
    throw Error(ErrorCode::kInvalidArgument,
                "vector field has " + std::to_string(components_.size()) + " components for " +
                    std::to_string(ctx_.dimension()) + " variables");
  }
  for (const auto& c : components_) require_in_context(c, ctx_);
}

VectorField VectorField::zero(const VariableContext& ctx) {
  return VectorField(ctx, std::vector<Expression>(ctx.dimension(), Expression::integer(0)));
}

VectorField VectorField::parse(const VariableContext& ctx, const std::vector<std::string>& texts) {
  std::vector<Expression> comps;
  for (const auto& t : texts) comps.push_back(nhg::parse(t, ctx));
  return VectorField(ctx, std::move(comps));
}

VectorField VectorField::normalized() const {
  std::vector<Expression> comps;
  for (const auto& c : components_) comps.push_back(normalize(c));
  return VectorField(ctx_, std::move(comps));
}

bool VectorField::equals(const VectorField& other) const {
  if (ctx_ != other.ctx_) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (!(components_[i].rational_form() == other.components_[i].rational_form())) return false;
  }
  return true;
}

bool VectorField::is_zero_field() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Expression& c) { return c.rational_form().is_zero(); });
}

ScalarField::ScalarField(VariableContext ctx, Expression value)
    : ctx_(std::move(ctx)), value_(std::move(value)) {
  require_in_context(value_, ctx_);
}

std::string dual_variable_name(const std::string& base, const std::vector<std::string>& taken) {
  std::string name = (!base.empty() && base[0] == 'z') ? "p" + base.substr(1) : "p_" + base;
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += '_';
  return name;
}

CotangentContext::CotangentContext(VariableContext base) : base_(std::move(base)) {
  std::vector<std::string> names = base_.names();
  for (std::size_t i = 0; i < base_.dimension(); ++i) {
    names.push_back(dual_variable_name(base_[i], names));
  }
  extended_ = VariableContext(std::move(names));
}

MapGerm::MapGerm(VariableContext ctx, std::vector<Expression> components)
    : ctx_(std::move(ctx)), components_(std::move(components)) {
  if (components_.size() != ctx_.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "map germ component count does not match its context");
  }
  for (const auto& c : components_) require_in_context(c, ctx_);
}

MapGerm MapGerm::identity(const VariableContext& ctx) {
  std::vector<Expression> comps;
  for (const auto& n : ctx.names()) comps.push_back(Expression::variable(n));
  return MapGerm(ctx, std::move(comps));
}

ScalarField apply_field(const VectorField& X, const ScalarField& f) {
  require_same(X.ctx(), f.ctx(), "apply_field");
  return ScalarField(X.ctx(), from_rational(rf_apply(X, f.value().rational_form())));
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  require_same(X.ctx(), Y.ctx(), "lie_bracket");
  std::vector<Expression> comps;
  for (std::size_t i = 0; i < X.dimension(); ++i) {
    const RF v = rf_apply(X, Y[i].rational_form()) - rf_apply(Y, X[i].rational_form());
    comps.push_back(from_rational(v));
  }
  return VectorField(X.ctx(), std::move(comps));
}

ExprMatrix jacobian(const VariableContext& ctx, const std::vector<Expression>& components) {
  ExprMatrix out(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const RF& a = components[i].rational_form();
    for (std::size_t j = 0; j < ctx.dimension(); ++j) {
      out[i].push_back(from_rational(differentiate(a, ctx[j])));
    }
  }
  return out;
}

ExprMatrix jacobian(const VectorField& X) { return jacobian(X.ctx(), X.components()); }

ScalarField fiber_hamiltonian(const VectorField& X, const CotangentContext& cc) {
  require_same(X.ctx(), cc.base(), "fiber_hamiltonian");
  RF h;
  for (std::size_t i = 0; i < X.dimension(); ++i) {
    h = h + X[i].rational_form() * Expression::variable(cc.dual_name(i)).rational_form();
  }
  return ScalarField(cc.extended(), from_rational(h));
}

VectorField cotangent_lift_field(const VectorField& X, const CotangentContext& cc) {
  require_same(X.ctx(), cc.base(), "cotangent_lift_field");
  const std::size_t m = X.dimension();
  std::vector<Expression> comps;
  for (std::size_t i = 0; i < m; ++i) comps.push_back(normalize(X[i]));
  for (std::size_t i = 0; i < m; ++i) {
    RF sum;
    for (std::size_t j = 0; j < m; ++j) {
      const RF d = differentiate(X[j].rational_form(), cc.base()[i]);
      if (d.is_zero()) continue;
      sum = sum + d * Expression::variable(cc.dual_name(j)).rational_form();
    }
    comps.push_back(from_rational(-sum));
  }
  return VectorField(cc.extended(), std::move(comps));
}

VectorField hamiltonian_vector_field(const ScalarField& H, const CotangentContext& cc) {
  require_same(H.ctx(), cc.extended(), "hamiltonian_vector_field");
  const std::size_t m = cc.base_dimension();
  const RF& h = H.value().rational_form();
  std::vector<Expression> comps;
  for (std::size_t i = 0; i < m; ++i) comps.push_back(from_rational(differentiate(h, cc.dual_name(i))));
  for (std::size_t i = 0; i < m; ++i) comps.push_back(from_rational(-differentiate(h, cc.base()[i])));
  return VectorField(cc.extended(), std::move(comps));
}

ScalarField poisson_bracket(const ScalarField& F, const ScalarField& G, const CotangentContext& cc) {
  require_same(F.ctx(), cc.extended(), "poisson_bracket");
  require_same(G.ctx(), cc.extended(), "poisson_bracket");
  const RF& f = F.value().rational_form();
  const RF& g = G.value().rational_form();
  RF sum;
  for (std::size_t i = 0; i < cc.base_dimension(); ++i) {
    const std::string& z = cc.base()[i];
    const std::string& p = cc.dual_name(i);
    const RF fz = differentiate(f, z);
    const RF gp = differentiate(g, p);
    if (!fz.is_zero() && !gp.is_zero()) sum = sum + fz * gp;
    const RF fp = differentiate(f, p);
    const RF gz = differentiate(g, z);
    if (!fp.is_zero() && !gz.is_zero()) sum = sum - fp * gz;
  }
  return ScalarField(cc.extended(), from_rational(sum));
}

ScalarField pull_to_extended(const ScalarField& f, const CotangentContext& cc) {
  require_same(f.ctx(), cc.base(), "pull_to_extended");
  return ScalarField(cc.extended(), f.value());
}

std::vector<Expression> cotangent_lift_map(const MapGerm& phi, const CotangentContext& cc) {
  require_same(phi.ctx(), cc.base(), "cotangent_lift_map");
  const std::size_t m = phi.dimension();
  // D[j][i] = dPhi_j/dz_i
  const RFMatrix d = to_rf(jacobian(phi.ctx(), phi.components()));
  const RF det = rf_determinant(d);
  if (det.is_zero()) throw Error(ErrorCode::kSingularJacobian, "map germ Jacobian is identically singular");
  const RFMatrix adj = rf_adjugate(d);
  const RF inv_det = det.inverse();
  std::vector<Expression> out;
  for (const auto& c : phi.components()) out.push_back(normalize(c));
  // ((D^{-1})^T p)_i = sum_j (D^{-1})_{j i} p_j = sum_j adj[j][i] p_j / det
  for (std::size_t i = 0; i < m; ++i) {
    RF sum;
    for (std::size_t j = 0; j < m; ++j) {
      if (adj[j][i].is_zero()) continue;
      sum = sum + adj[j][i] * Expression::variable(cc.dual_name(j)).rational_form();
    }
    out.push_back(from_rational(sum * inv_det));
  }
  return out;
}

std::vector<Expression> compose(const VariableContext& ctx, const std::vector<Expression>& outer,
                                const std::vector<Expression>& inner) {
  if (inner.size() != ctx.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "compose: inner map has wrong component count");
  }
  std::map<std::string, RF> bindings;
  for (std::size_t i = 0; i < ctx.dimension(); ++i) bindings[ctx[i]] = inner[i].rational_form();
  std::vector<Expression> out;
  for (const auto& e : outer) out.push_back(from_rational(substitute(e.rational_form(), bindings)));
  return out;
}

Expression determinant(const ExprMatrix& m) { return from_rational(rf_determinant(to_rf(m))); }

ExprMatrix adjugate(const ExprMatrix& m) {
  const RFMatrix adj = rf_adjugate(to_rf(m));
  ExprMatrix out(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) {
    for (const auto& e : adj[i]) out[i].push_back(from_rational(e));
  }
  return out;
}

VectorField scale(const Expression& f, const VectorField& Y) {
  std::vector<Expression> comps;
  for (const auto& c : Y.components()) comps.push_back(from_rational(f.rational_form() * c.rational_form()));
  return VectorField(Y.ctx(), std::move(comps));
}

VectorField add(const VectorField& X, const VectorField& Y) {
  require_same(X.ctx(), Y.ctx(), "add");
  std::vector<Expression> comps;
  for (std::size_t i = 0; i < X.dimension(); ++i) {
    comps.push_back(from_rational(X[i].rational_form() + Y[i].rational_form()));
  }
  return VectorField(X.ctx(), std::move(comps));
}

}  // namespace nhg
