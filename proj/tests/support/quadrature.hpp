#pragma once

// Gauss-Legendre quadrature of trace A(t) along a path, independent of the
// ODE integrator.

#include <Eigen/Eigenvalues>

#include "nhg/monodromy/path.hpp"
#include "nhg/variational/system.hpp"

namespace nhg::testing {

/// Golub-Welsch nodes and weights on [0, 1].
inline void gauss_legendre(int points, std::vector<double>& nodes, std::vector<double>& weights) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = b;
    j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  nodes.clear();
  weights.clear();
  for (int k = 0; k < points; ++k) {
    nodes.push_back(0.5 * (es.eigenvalues()(k) + 1.0));
    const double v = es.eigenvectors()(0, k);
    weights.push_back(v * v);
  }
}

inline Complex trace_integral(const CompiledMatrix& a, const Path& path, int panels = 32, int points = 20) {
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(points, x, w);
  Complex total = 0.0;
  for (const auto& piece : path.pieces()) {
    for (int p = 0; p < panels; ++p) {
      for (int k = 0; k < points; ++k) {
        const double s = (p + x[static_cast<std::size_t>(k)]) / panels;
        total += w[static_cast<std::size_t>(k)] / panels * a(piece.point(s)).trace() * piece.velocity(s);
      }
    }
  }
  return total;
}

}  // namespace nhg::testing
