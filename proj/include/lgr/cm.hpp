#pragma once

// Centre-of-mass states of the isotropic 2-D harmonic trap and the radial
// moments <f| (r_cm / w_r)^beta |i>.

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "lgr/quadrature.hpp"
#include "lgr/specfun.hpp"

namespace lgr {

struct CMState {
  int N = 0;        // vibrational quantum number
  int M = 0;        // angular momentum projection
  double w_r = 1.0;  // trap length

  int n_minus() const { return (N - std::abs(M)) / 2; }
  int n_plus() const { return (N + std::abs(M)) / 2; }

  void validate() const {
    if (N < std::abs(M) || (N - std::abs(M)) % 2 != 0) {
      throw std::domain_error("CMState: need N >= |M| and N - |M| even");
    }
    if (!(w_r > 0.0)) throw std::domain_error("CMState: w_r must be positive");
  }

  /// Lowest state with the given projection plus `n_minus` radial quanta.
  static CMState with_projection(int M, double w_r, int n_minus = 0) {
    CMState s{std::abs(M) + 2 * n_minus, M, w_r};
    s.validate();
    return s;
  }
};

namespace detail {

inline double cm_log_norm(const CMState& s) {
  return 0.5 * (std::log(2.0) + log_factorial(s.n_minus()) - log_factorial(s.n_plus()));
}

}  // namespace detail

/// Radial amplitude A_{N,M}(r_cm); int_0^inf A^2 r dr = 1.
inline double cm_amplitude(const CMState& s, double r_cm) {
  s.validate();
  if (r_cm < 0.0) throw std::domain_error("cm_amplitude: r_cm must be non-negative");
  const double x = r_cm / s.w_r;
  const int am = std::abs(s.M);
  return std::exp(detail::cm_log_norm(s)) / s.w_r * std::pow(x, am) * assoc_laguerre(s.n_minus(), am, x * x) *
         std::exp(-0.5 * x * x);
}

/// int_0^inf A_f A_i x^beta x dx in units of w_r (dimensionless).
///
/// With u = x^2 the integrand is (1/2) u^a e^{-u} L_f(u) L_i(u),
/// a = (|M_f| + |M_i| + beta)/2, so generalized Gauss-Laguerre is exact.
inline double cm_moment(const CMState& f, const CMState& i, int beta) {
  f.validate();
  i.validate();
  if (beta < 0) throw std::domain_error("cm_moment: beta must be non-negative");
  if (std::abs(f.w_r - i.w_r) > 1e-12 * std::abs(f.w_r)) {
    throw std::invalid_argument("cm_moment: trap lengths differ");
  }
  const int mf = std::abs(f.M);
  const int mi = std::abs(i.M);
  const double a = 0.5 * (mf + mi + beta);
  const int points = f.n_minus() + i.n_minus() + beta + 8;
  const auto rule = gauss_laguerre(points, a);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double u = rule.nodes[k];
    sum += rule.weights[k] * assoc_laguerre(f.n_minus(), mf, u) * assoc_laguerre(i.n_minus(), mi, u);
  }
  return 0.5 * std::exp(detail::cm_log_norm(f) + detail::cm_log_norm(i)) * sum;
}

/// E_CM = (N + 1) / (w_r^2 m_t).
inline double cm_energy(const CMState& s, double m_t) {
  s.validate();
  if (!(m_t > 0.0)) throw std::domain_error("cm_energy: mass must be positive");
  return (s.N + 1.0) / (s.w_r * s.w_r * m_t);
}

}  // namespace lgr
