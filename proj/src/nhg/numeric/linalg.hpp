#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace nhg {

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

/// Number of singular values above `relative` times the largest one.
int numeric_rank(const MatrixC& m, double relative = 1e-8);

/// Roots of sum_k coeffs[k] t^k via companion-matrix eigenvalues, each
/// polished by Newton iteration.
std::vector<std::complex<double>> polynomial_roots(const std::vector<std::complex<double>>& coeffs);

}  // namespace nhg
