#include "nhg/variational/lift_compare.hpp"

#include <algorithm>
#include <cmath>

#include "nhg/error.hpp"

namespace nhg {

namespace {

SingularitySet poles_near(const LinearVariationalSystem& sys, const Polyline& path, const SolutionCurve& gamma) {
  Complex lo = path.waypoints().front();
  Complex hi = lo;
  for (const Complex w : path.waypoints()) {
    lo = {std::min(lo.real(), w.real()), std::min(lo.imag(), w.imag())};
    hi = {std::max(hi.real(), w.real()), std::max(hi.imag(), w.imag())};
  }
  const SearchBox box{lo - Complex(1.0, 1.0), hi + Complex(1.0, 1.0)};
  return find_singularities(sys, box, gamma.excluded_points);
}

std::vector<MatrixC> transport(const LinearVariationalSystem& sys, const Polyline& path, const SolutionCurve& gamma,
                               const TransportOptions& options) {
  const SingularitySet sing = poles_near(sys, path, gamma);
  const auto d = static_cast<Eigen::Index>(sys.dimension());
  return integrate_waypoints(CompiledMatrix(sys), path, MatrixC::Identity(d, d), options, &sing);
}

double relative_gap(const MatrixC& a, const MatrixC& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

/// Greedy Gram-Schmidt: columns of `samples` whose residual against the
/// columns kept so far (plus the constant) exceeds `threshold`.
std::vector<Eigen::Index> independent_columns(const MatrixC& samples, double threshold) {
  const Eigen::Index k = samples.rows();
  std::vector<VectorC> basis{VectorC::Ones(k) / std::sqrt(static_cast<double>(k))};
  std::vector<Eigen::Index> kept;
  for (Eigen::Index c = 0; c < samples.cols(); ++c) {
    const double norm = samples.col(c).norm();
    if (norm == 0.0) continue;
    VectorC v = samples.col(c) / norm;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= b * b.dot(v);
    }
    const double r = v.norm();
    if (r > threshold) {
      basis.push_back(v / r);
      kept.push_back(c);
    }
  }
  return kept;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SolutionCurve zero_section_curve(const SolutionCurve& gamma, std::size_t m) {
  SolutionCurve out = gamma;
  for (std::size_t i = 0; i < m; ++i) out.components.push_back(Expression::integer(0));
  return out;
}

LiftCompareReport lift_ve_compare(const VectorField& X, const SolutionCurve& gamma, int n, const Polyline& path,
                                  const LiftCompareOptions& options) {
  const std::size_t m = X.dimension();
  const CotangentContext cc(X.ctx());
  const VectorField lifted = cotangent_lift_field(X, cc);
  const LinearVariationalSystem base = build_dual_ve(X, gamma, n);
  const LinearVariationalSystem top = build_dual_ve(lifted, zero_section_curve(gamma, m), n);

  LiftCompareReport report;
  report.order = n;
  report.base_dimension = base.dimension();
  report.lifted_dimension = top.dimension();
  report.samples = path.waypoints().size() - 1;

  const auto base_vals = transport(base, path, gamma, options.transport);
  const auto top_vals = transport(top, path, gamma, options.transport);

  if (n == 1) {
    report.mode = "block";
    for (std::size_t k = 0; k < 2 * m; ++k) report.permutation.push_back(k);
    const auto bm = static_cast<Eigen::Index>(m);
    for (std::size_t w = 1; w < base_vals.size(); ++w) {
      MatrixC expected = MatrixC::Zero(2 * bm, 2 * bm);
      expected.topLeftCorner(bm, bm) = base_vals[w];
      expected.bottomRightCorner(bm, bm) = base_vals[w].transpose().inverse();
      MatrixC permuted(2 * bm, 2 * bm);
      for (Eigen::Index i = 0; i < 2 * bm; ++i) {
        for (Eigen::Index j = 0; j < 2 * bm; ++j) {
          permuted(i, j) = expected(static_cast<Eigen::Index>(report.permutation[static_cast<std::size_t>(i)]),
                                    static_cast<Eigen::Index>(report.permutation[static_cast<std::size_t>(j)]));
        }
      }
      report.block_residual = std::max(report.block_residual, relative_gap(top_vals[w], permuted));
    }
    report.pass = report.block_residual <= options.block_tolerance;
    report.message = report.pass ? "lifted fundamental matrix is blockdiag(N, N^-T)"
                                 : "lifted fundamental matrix deviates from blockdiag(N, N^-T)";
    return report;
  }

  report.mode = "span";
  report.degree_bound = options.degree_bound > 0 ? options.degree_bound : n + 1;
  const auto samples = static_cast<Eigen::Index>(report.samples);
  const auto bd = static_cast<Eigen::Index>(base.dimension());
  const auto td = static_cast<Eigen::Index>(top.dimension());
  const auto bm = static_cast<Eigen::Index>(m);

  MatrixC base_entries(samples, bd * bd);
  MatrixC top_entries(samples, td * td);
  VectorC inv_det(samples);
  for (Eigen::Index s = 0; s < samples; ++s) {
    const MatrixC& nb = base_vals[static_cast<std::size_t>(s + 1)];
    const MatrixC& nt = top_vals[static_cast<std::size_t>(s + 1)];
    base_entries.row(s) = Eigen::Map<const VectorC>(nb.data(), bd * bd).transpose();
    top_entries.row(s) = Eigen::Map<const VectorC>(nt.data(), td * td).transpose();
    inv_det(s) = 1.0 / nb.topLeftCorner(bm, bm).determinant();
  }

  const auto kept = independent_columns(base_entries, options.basis_threshold);
  report.basis_size = kept.size();
  const std::size_t vars = kept.size() + 1;
  report.monomials = binomial(vars + static_cast<std::size_t>(report.degree_bound), vars);
  report.required_samples = static_cast<std::size_t>(options.oversampling) * report.monomials;
  if (report.samples < report.required_samples) {
    report.pass = false;
    report.message = "span test needs " + std::to_string(report.required_samples) + " samples, path provides " +
                     std::to_string(report.samples);
    return report;
  }

  MatrixC v(samples, static_cast<Eigen::Index>(vars));
  for (std::size_t c = 0; c < kept.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = base_entries.col(kept[c]);
  v.col(static_cast<Eigen::Index>(kept.size())) = inv_det;

  const MultiIndexSet exponents(vars, report.degree_bound, 0);
  MatrixC phi(samples, static_cast<Eigen::Index>(exponents.size()));
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    const MultiIndex& e = exponents[k];
    for (Eigen::Index s = 0; s < samples; ++s) {
      Complex prod = 1.0;
      for (std::size_t q = 0; q < vars; ++q) {
        for (int r = 0; r < e[q]; ++r) prod *= v(s, static_cast<Eigen::Index>(q));
      }
      phi(s, static_cast<Eigen::Index>(k)) = prod;
    }
    const double norm = phi.col(static_cast<Eigen::Index>(k)).norm();
    if (norm > 0.0) phi.col(static_cast<Eigen::Index>(k)) /= norm;
  }

  Eigen::BDCSVD<MatrixC> svd(phi, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > options.rank_threshold * sv(0)) ++rank;
  const MatrixC u = svd.matrixU().leftCols(rank);

  const double scale = top_entries.cwiseAbs().maxCoeff();
  for (Eigen::Index c = 0; c < top_entries.cols(); ++c) {
    const VectorC y = top_entries.col(c);
    const double norm = y.norm();
    if (norm <= 1e-14 * scale * std::sqrt(static_cast<double>(samples))) continue;
    const VectorC residual = y - u * (u.adjoint() * y);
    report.span_residual = std::max(report.span_residual, residual.norm() / norm);
  }
  report.pass = report.span_residual <= options.span_tolerance;
  report.message = report.pass ? "lifted entries lie in the span of base-entry monomials"
                               : "lifted entries leave the span of base-entry monomials";
  return report;
}

LiftCompareReport lift_ve_compare_auto(const VectorField& X, const SolutionCurve& gamma, int n, Complex t0,
                                       std::uint64_t seed, const LiftCompareOptions& options) {
  const LinearVariationalSystem base = build_dual_ve(X, gamma, n);
  const SingularitySet sing =
      find_singularities(base, SearchBox::centered(t0, 10.0), gamma.excluded_points);
  const double radius = safe_radius(t0, sing.points);
  std::size_t waypoints = n == 1 ? 11 : 64;
  LiftCompareReport report = lift_ve_compare(X, gamma, n, random_route(t0, radius, waypoints, seed), options);
  for (int attempt = 0; attempt < 4 && report.required_samples > report.samples; ++attempt) {
    waypoints = report.required_samples + 1;
    report = lift_ve_compare(X, gamma, n, random_route(t0, radius, waypoints, seed), options);
  }
  return report;
}

}  // namespace nhg
