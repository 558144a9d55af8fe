#include "nhg/variational/system.hpp"

#include <algorithm>

#include "nhg/error.hpp"

namespace nhg {

namespace {

using RF = RationalFunction;

std::map<std::string, RF> curve_bindings(const VectorField& X, const SolutionCurve& gamma) {
  std::map<std::string, RF> b;
  for (std::size_t i = 0; i < X.dimension(); ++i) b[X.ctx()[i]] = gamma.components[i].rational_form();
  return b;
}

void check_shapes(const VectorField& X, const SolutionCurve& gamma) {
  if (gamma.components.size() != X.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "solution has " + std::to_string(gamma.components.size()) +
                                                 " components for " + std::to_string(X.dimension()) +
                                                 " variables");
  }
  if (X.ctx().contains(gamma.parameter)) {
    throw Error(ErrorCode::kInvalidArgument, "curve parameter '" + gamma.parameter + "' is also a variable");
  }
  const VariableContext pctx = gamma.parameter_context();
  for (const auto& c : gamma.components) require_in_context(c, pctx);
}

std::string describe(const VectorField& X, const SolutionCurve& gamma) {
  std::string s = "X = (";
  for (std::size_t i = 0; i < X.dimension(); ++i) s += (i ? ", " : "") + X[i].to_string();
  s += "), gamma(" + gamma.parameter + ") = (";
  for (std::size_t i = 0; i < gamma.components.size(); ++i) s += (i ? ", " : "") + gamma.components[i].to_string();
  return s + ")";
}

void require_solution(const VectorField& X, const SolutionCurve& gamma) {
  const SolutionCheck check = verify_solution(X, gamma);
  if (!check.ok()) throw Error(ErrorCode::kSolutionCheck, check.message);
}

}  // namespace

SolutionCurve SolutionCurve::parse(const std::string& parameter, const std::vector<std::string>& texts,
                                   std::vector<Complex> excluded) {
  SolutionCurve c;
  c.parameter = parameter;
  const VariableContext ctx({parameter});
  for (const auto& t : texts) c.components.push_back(nhg::parse(t, ctx));
  c.excluded_points = std::move(excluded);
  return c;
}

SolutionCheck verify_solution(const VectorField& X, const SolutionCurve& gamma, const ZeroTestOptions& options) {
  check_shapes(X, gamma);
  SolutionCheck out;
  const auto bindings = curve_bindings(X, gamma);
  ZeroVerdict worst = ZeroVerdict::kExactZero;
  bool moving = false;
  for (std::size_t i = 0; i < X.dimension(); ++i) {
    const RF velocity = differentiate(gamma.components[i].rational_form(), gamma.parameter);
    if (is_zero(velocity, options) == ZeroVerdict::kNonzero) moving = true;
    const RF residual = velocity - substitute(X[i].rational_form(), bindings);
    const ZeroVerdict v = is_zero(residual, options);
    out.components.push_back(v);
    worst = weakest(worst, v);
  }
  out.verdict = worst;
  out.stationary = !moving;
  if (worst == ZeroVerdict::kNonzero) {
    for (std::size_t i = 0; i < out.components.size(); ++i) {
      if (out.components[i] == ZeroVerdict::kNonzero) {
        out.message = "curve does not solve the system: component " + std::to_string(i + 1) + " residual is nonzero";
        break;
      }
    }
  } else if (out.stationary) {
    out.message = "curve is stationary";
  }
  return out;
}

const char* system_kind_name(SystemKind k) { return k == SystemKind::kDirectVe1 ? "direct_ve1" : "dual_ve_n"; }

LinearVariationalSystem build_ve1(const VectorField& X, const SolutionCurve& gamma) {
  require_solution(X, gamma);
  const auto bindings = curve_bindings(X, gamma);
  const std::size_t m = X.dimension();
  LinearVariationalSystem sys;
  sys.kind = SystemKind::kDirectVe1;
  sys.order = 1;
  sys.index_set = MultiIndexSet(m, 1);
  sys.parameter = gamma.parameter;
  sys.provenance = describe(X, gamma);
  sys.coefficients.assign(m, {});
  for (std::size_t i = 0; i < m; ++i) {
    const RF& a = X[i].rational_form();
    for (std::size_t j = 0; j < m; ++j) {
      sys.coefficients[i].push_back(from_rational(substitute(differentiate(a, X.ctx()[j]), bindings)));
    }
  }
  return sys;
}

LinearVariationalSystem build_dual_ve(const VectorField& X, const SolutionCurve& gamma, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "variational order must be at least 1");
  require_solution(X, gamma);
  return build_dual_ve_unchecked(X, gamma, n);
}

LinearVariationalSystem build_dual_ve_unchecked(const VectorField& X, const SolutionCurve& gamma, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "variational order must be at least 1");
  check_shapes(X, gamma);
  const std::size_t m = X.dimension();
  const auto bindings = curve_bindings(X, gamma);

  // Taylor coefficients A_{j,b}(t) = d^b a_j (gamma(t)) / b! for 1 <= |b| <= n.
  const MultiIndexSet betas(m, n, 0);
  std::vector<std::map<MultiIndex, RF>> derivs(m);
  std::vector<std::map<MultiIndex, RF>> taylor(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& b : betas.indices()) {
      if (degree(b) == 0) {
        derivs[j][b] = X[j].rational_form();
        continue;
      }
      std::size_t v = 0;
      while (b[v] == 0) ++v;
      MultiIndex parent = b;
      --parent[v];
      derivs[j][b] = differentiate(derivs[j].at(parent), X.ctx()[v]);
      const RF& d = derivs[j][b];
      if (d.is_zero()) continue;
      const RF at_curve = substitute(d, bindings);
      if (at_curve.is_zero()) continue;
      taylor[j][b] = at_curve * RF::constant(Rational(1) / Rational(static_cast<long>(factorial_weight(b))));
    }
  }

  // Build with the constant index included, then drop it.
  const MultiIndexSet full(m, n, 0);
  const std::size_t dim = full.size();
  std::vector<std::vector<RF>> a(dim, std::vector<RF>(dim));
  for (std::size_t row = 0; row < dim; ++row) {
    const MultiIndex& alpha = full[row];
    for (std::size_t j = 0; j < m; ++j) {
      for (const auto& [beta, coeff] : taylor[j]) {
        bool below = true;
        for (std::size_t q = 0; q < m; ++q) {
          if (beta[q] > alpha[q]) {
            below = false;
            break;
          }
        }
        if (!below) continue;
        MultiIndex target(m);
        for (std::size_t q = 0; q < m; ++q) target[q] = alpha[q] - beta[q];
        const long weight = target[j] + 1;
        ++target[j];
        const std::size_t col = full.position(target);
        a[row][col] = a[row][col] - coeff * RF::constant(Rational(weight));
      }
    }
  }
  for (std::size_t col = 0; col < dim; ++col) {
    if (!a[0][col].is_zero()) throw Error(ErrorCode::kInternal, "constant jet coefficient is not transported trivially");
  }

  LinearVariationalSystem sys;
  sys.kind = SystemKind::kDualVe;
  sys.order = n;
  sys.index_set = MultiIndexSet(m, n);
  sys.parameter = gamma.parameter;
  sys.provenance = describe(X, gamma);
  sys.coefficients.assign(dim - 1, {});
  for (std::size_t row = 1; row < dim; ++row) {
    for (std::size_t col = 1; col < dim; ++col) sys.coefficients[row - 1].push_back(from_rational(a[row][col]));
  }
  return sys;
}

CompiledMatrix::CompiledMatrix(const LinearVariationalSystem& sys) : CompiledMatrix(sys.coefficients, sys.parameter) {}

CompiledMatrix::CompiledMatrix(const ExprMatrix& m, const std::string& parameter) : dim_(m.size()) {
  const std::vector<std::string> slots{parameter};
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      const RF& rf = m[i][j].rational_form();
      if (rf.is_zero()) continue;
      Entry e{i, j, false, {}, {}, {}};
      const auto atoms = rf.atoms();
      const bool pure = std::all_of(atoms.begin(), atoms.end(), [&](const Atom& a) {
        return a->is_variable && a->key == parameter;
      });
      if (pure) {
        e.rational = true;
        for (const auto& c : univariate_coefficients(rf.numerator(), parameter)) e.num.emplace_back(c.get_d());
        for (const auto& c : univariate_coefficients(rf.denominator(), parameter)) e.den.emplace_back(c.get_d());
      } else {
        e.program = CompiledScalar(m[i][j], slots);
      }
      entries_.push_back(std::move(e));
    }
  }
}

void CompiledMatrix::evaluate(Complex t, MatrixC& out) const {
  out.setZero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  auto horner = [t](const std::vector<Complex>& c) {
    Complex acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
    return acc;
  };
  for (const auto& e : entries_) {
    Complex v;
    if (e.rational) {
      const Complex den = e.den.size() == 1 ? e.den[0] : horner(e.den);
      if (std::abs(den) <= kPoleThreshold) throw Error(ErrorCode::kPole, "coefficient matrix pole");
      v = horner(e.num) / den;
    } else {
      v = e.program(std::span<const Complex>(&t, 1));
    }
    out(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = v;
  }
}

MatrixC CompiledMatrix::operator()(Complex t) const {
  MatrixC out;
  evaluate(t, out);
  return out;
}

}  // namespace nhg
