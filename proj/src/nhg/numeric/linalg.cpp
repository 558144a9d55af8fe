#include "nhg/numeric/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nhg {

int numeric_rank(const MatrixC& m, double relative) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<MatrixC> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > relative * s(0)) ++rank;
  }
  return rank;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs) {
  using C = std::complex<double>;
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == C(0.0)) --deg;
  if (deg <= 1) return {};
  const std::size_t n = deg - 1;
  const C lead = coeffs[n];
  MatrixC companion = MatrixC::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -coeffs[i] / lead;
  }
  Eigen::ComplexEigenSolver<MatrixC> solver(companion, false);
  std::vector<C> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    C r = solver.eigenvalues()(i);
    for (int it = 0; it < 50; ++it) {
      C p = coeffs[n], dp = 0.0;
      for (std::size_t k = n; k-- > 0;) {
        dp = dp * r + p;
        p = p * r + coeffs[k];
      }
      if (std::abs(p) <= 1e-15 * std::abs(lead) || dp == C(0.0)) break;
      const C step = p / dp;
      r -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(r))) break;
    }
    roots.push_back(r);
  }
  return roots;
}

}  // namespace nhg
