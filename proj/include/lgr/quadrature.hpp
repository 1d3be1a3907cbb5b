#pragma once

// Gaussian quadrature rules by the Golub-Welsch eigenvalue method, plus a
// composite Simpson rule on uniform grids.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "lgr/specfun.hpp"

namespace lgr {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Symmetric tridiagonal Jacobi matrix with diagonal `a` and off-diagonal `b`;
// `mu0` is the integral of the weight function.
inline QuadratureRule golub_welsch(const std::vector<double>& a, const std::vector<double>& b, double mu0) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    jac(i, i) = a[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      jac(i, i + 1) = b[static_cast<std::size_t>(i)];
      jac(i + 1, i) = b[static_cast<std::size_t>(i)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jac);
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace detail

/// n-point Gauss-Legendre rule on [-1, 1].
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  std::vector<double> a(static_cast<std::size_t>(n), 0.0), b(static_cast<std::size_t>(n), 0.0);
  for (int k = 1; k < n; ++k) b[static_cast<std::size_t>(k - 1)] = k / std::sqrt(4.0 * k * k - 1.0);
  return detail::golub_welsch(a, b, 2.0);
}

/// n-point generalized Gauss-Laguerre rule for weight u^alpha e^{-u} on [0, inf).
inline QuadratureRule gauss_laguerre(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: need n >= 1");
  if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: need alpha > -1");
  std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    a[static_cast<std::size_t>(k)] = 2.0 * k + alpha + 1.0;
    if (k + 1 < n) b[static_cast<std::size_t>(k)] = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
  }
  return detail::golub_welsch(a, b, gamma_fn(alpha + 1.0));
}

/// Composite Simpson integral of uniformly spaced samples. An even number of
/// samples closes with a Simpson 3/8 panel.
inline double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (f[0] + f[1]);
  if (n == 3) return h / 3.0 * (f[0] + 4.0 * f[1] + f[2]);
  std::size_t end = n;
  double tail = 0.0;
  if (n % 2 == 0) {
    end = n - 3;
    tail = 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
    if (end == 1) return tail;
  }
  double sum = f[0] + f[end - 1];
  for (std::size_t i = 1; i + 1 < end; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
  return h / 3.0 * sum + tail;
}

}  // namespace lgr
