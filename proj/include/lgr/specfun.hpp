#pragma once

// Special functions and angular-momentum algebra.
//
// Conventions: Condon-Shortley phase everywhere, spherical harmonics
// orthonormal on the unit sphere. Factorial-heavy coefficients are built in
// log space and exponentiated once.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgr {

/// A half-integer stored as twice its value (j = twice / 2).
class HalfInt {
public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int integer) : twice_(2 * integer) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  /// Throws std::domain_error when `value` is not a multiple of 1/2.
  static HalfInt from_double(double value) {
    const double t = 2.0 * value;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-9) {
      throw std::domain_error("not a half-integer: " + std::to_string(value));
    }
    return from_twice(static_cast<int>(r));
  }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice_); }
  friend constexpr bool operator==(HalfInt a, HalfInt b) = default;
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

private:
  int twice_ = 0;
};

inline constexpr HalfInt half = HalfInt::from_twice(1);

/// Orbital rank and projection of a spherical (or solid) harmonic.
struct AngularTriple {
  int l = 0;
  int m = 0;

  constexpr bool valid() const { return l >= 0 && std::abs(m) <= l; }
  friend constexpr bool operator==(const AngularTriple&, const AngularTriple&) = default;
};

namespace detail {

inline const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(1025, 0.0);
    for (std::size_t i = 2; i < t.size(); ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  return table;
}

inline constexpr int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace detail

inline double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  const auto& t = detail::log_factorial_table();
  if (static_cast<std::size_t>(n) < t.size()) return t[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

inline double gamma_fn(double x) { return std::exp(log_gamma(x)); }

/// Generalized Laguerre polynomial L^a_n(x) by the three-term recurrence.
inline double assoc_laguerre(int n, double a, double x) {
  if (n < 0) throw std::domain_error("assoc_laguerre: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Orthonormalized associated Legendre function including the
/// Condon-Shortley phase, for m >= 0: Y^m_l(theta, 0) = P(l, m, cos theta).
inline double normalized_legendre(int l, int m, double x) {
  if (m < 0 || m > l) throw std::domain_error("normalized_legendre: need 0 <= m <= l");
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = std::sqrt(1.0 / (4.0 * std::numbers::pi));
  for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  if (l == m) return pmm;
  double pm1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  if (l == m + 1) return pm1;
  double p_prev = pmm;
  double p_cur = pm1;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double a = std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll * ll - m * m)));
    const double b = std::sqrt((static_cast<double>((ll - 1) * (ll - 1) - m * m)) /
                               (4.0 * (ll - 1) * (ll - 1) - 1.0));
    const double next = a * (x * p_cur - b * p_prev);
    p_prev = p_cur;
    p_cur = next;
  }
  return p_cur;
}

inline std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw std::domain_error("spherical_harmonic: need |m| <= l");
  const int am = std::abs(m);
  const double p = normalized_legendre(l, am, std::cos(theta));
  std::complex<double> y = std::polar(p, am * phi);
  if (m < 0) y = static_cast<double>(detail::parity_sign(am)) * std::conj(y);
  return y;
}

/// Wigner 3j symbol by the Racah sum, with all factorials in log space.
/// Selection-rule violations return 0.
inline double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
  const int tj1 = j1.twice(), tj2 = j2.twice(), tj3 = j3.twice();
  const int tm1 = m1.twice(), tm2 = m2.twice(), tm3 = m3.twice();
  if (tj1 < 0 || tj2 < 0 || tj3 < 0) return 0.0;
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0) return 0.0;
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;
  if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2)) return 0.0;

  // Integer arguments of the factorials.
  const int a = (tj1 + tj2 - tj3) / 2;
  const int b = (tj1 - tj2 + tj3) / 2;
  const int c = (-tj1 + tj2 + tj3) / 2;
  const int d = (tj1 + tj2 + tj3) / 2 + 1;
  const double log_delta = 0.5 * (log_factorial(a) + log_factorial(b) + log_factorial(c) - log_factorial(d));
  const double log_norm =
      0.5 * (log_factorial((tj1 + tm1) / 2) + log_factorial((tj1 - tm1) / 2) + log_factorial((tj2 + tm2) / 2) +
             log_factorial((tj2 - tm2) / 2) + log_factorial((tj3 + tm3) / 2) + log_factorial((tj3 - tm3) / 2));

  const int t1 = (tj3 - tj2 + tm1) / 2;  // j3 - j2 + m1
  const int t2 = (tj3 - tj1 - tm2) / 2;  // j3 - j1 - m2
  const int t3 = a;                       // j1 + j2 - j3
  const int t4 = (tj1 - tm1) / 2;         // j1 - m1
  const int t5 = (tj2 + tm2) / 2;         // j2 + m2
  const int kmin = std::max({0, -t1, -t2});
  const int kmax = std::min({t3, t4, t5});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double lt = log_factorial(k) + log_factorial(t1 + k) + log_factorial(t2 + k) + log_factorial(t3 - k) +
                      log_factorial(t4 - k) + log_factorial(t5 - k);
    sum += detail::parity_sign(k) * std::exp(log_delta + log_norm - lt);
  }
  // (-1)^(j1 - j2 - m3)
  const int phase_exp = (tj1 - tj2 - tm3) / 2;
  return detail::parity_sign(std::abs(phase_exp)) * sum;
}

inline double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  return wigner3j(HalfInt(j1), HalfInt(j2), HalfInt(j3), HalfInt(m1), HalfInt(m2), HalfInt(m3));
}

/// <j1 m1; j2 m2 | J M>. Returns 0 when M != m1 + m2.
inline double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  if (m1 + m2 != M) return 0.0;
  const int phase_exp = (j1.twice() - j2.twice() + M.twice()) / 2;
  return detail::parity_sign(std::abs(phase_exp)) * std::sqrt(J.twice() + 1.0) * wigner3j(j1, j2, J, m1, m2, -M);
}

/// Integral of Y^{m1}_{l1} Y^{m2}_{l2} Y^{m3}_{l3} over the unit sphere.
inline double gaunt(int l1, int m1, int l2, int m2, int l3, int m3) {
  if (m1 + m2 + m3 != 0) return 0.0;
  if ((l1 + l2 + l3) % 2 != 0) return 0.0;
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return 0.0;
  const double w0 = wigner3j(l1, l2, l3, 0, 0, 0);
  if (w0 == 0.0) return 0.0;
  const double pref = std::sqrt((2.0 * l1 + 1.0) * (2.0 * l2 + 1.0) * (2.0 * l3 + 1.0) / (4.0 * std::numbers::pi));
  return pref * w0 * wigner3j(l1, l2, l3, m1, m2, m3);
}

/// Integral of conj(Y_bra) * prod(Y_factors) * Y_ket over the unit sphere.
///
/// The product is reduced left to right: the running function is kept as an
/// expansion sum_L c_L Y^M_L (M is fixed by projection bookkeeping) and each
/// new factor is coupled in with Gaunt coefficients.
inline double multi_gaunt(std::span<const AngularTriple> factors, AngularTriple bra, AngularTriple ket) {
  if (!bra.valid() || !ket.valid()) return 0.0;
  int proj = ket.m;
  int lmax = ket.l;
  std::vector<double> coeff(static_cast<std::size_t>(ket.l) + 1, 0.0);
  coeff[static_cast<std::size_t>(ket.l)] = 1.0;
  for (const auto& f : factors) {
    if (!f.valid()) return 0.0;
    const int new_proj = proj + f.m;
    const int new_lmax = lmax + f.l;
    std::vector<double> next(static_cast<std::size_t>(new_lmax) + 1, 0.0);
    for (int L = 0; L <= lmax; ++L) {
      const double c = coeff[static_cast<std::size_t>(L)];
      if (c == 0.0) continue;
      for (int Lp = std::max(std::abs(L - f.l), std::abs(new_proj)); Lp <= L + f.l; ++Lp) {
        // <Y^{M'}_{L'} | Y_f Y^M_L> = (-1)^{M'} G(f, L, L'; m_f, M, -M')
        const double g = gaunt(f.l, f.m, L, proj, Lp, -new_proj);
        if (g != 0.0) next[static_cast<std::size_t>(Lp)] += c * detail::parity_sign(std::abs(new_proj)) * g;
      }
    }
    coeff = std::move(next);
    proj = new_proj;
    lmax = new_lmax;
  }
  if (bra.m != proj || bra.l > lmax) return 0.0;
  return coeff[static_cast<std::size_t>(bra.l)];
}

inline double multi_gaunt(std::initializer_list<AngularTriple> factors, AngularTriple bra, AngularTriple ket) {
  return multi_gaunt(std::span<const AngularTriple>(factors.begin(), factors.size()), bra, ket);
}

/// Spherical Bessel function j_p(x) of the first kind.
inline double spherical_bessel(int p, double x) {
  if (p < 0) throw std::domain_error("spherical_bessel: negative order");
  const double ax = std::abs(x);
  const double sign = (x < 0.0 && p % 2 != 0) ? -1.0 : 1.0;

  // Power series when x^2 is small against the order.
  if (ax * ax < 0.1 * (2.0 * p + 3.0)) {
    double term = std::exp(p * std::log(std::max(ax, 1e-300)) - log_factorial(2 * p + 1) + log_factorial(p) + p * std::log(2.0));
    if (p == 0) term = 1.0;
    if (ax == 0.0) return p == 0 ? 1.0 : 0.0;
    double sum = term;
    const double z = -0.5 * ax * ax;
    for (int k = 1; k < 60; ++k) {
      term *= z / (k * (2.0 * p + 2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sign * sum;
  }

  const double j0 = std::sin(ax) / ax;
  if (p == 0) return sign * j0;
  const double j1 = std::sin(ax) / (ax * ax) - std::cos(ax) / ax;
  if (p == 1) return sign * j1;

  if (ax > p) {
    double jm = j0, jc = j1;
    for (int k = 1; k < p; ++k) {
      const double jn = (2.0 * k + 1.0) / ax * jc - jm;
      jm = jc;
      jc = jn;
    }
    return sign * jc;
  }

  // Miller's downward recurrence, normalized against j0 (or j1 near a zero of j0).
  const int start = p + 20 + static_cast<int>(std::sqrt(40.0 * p));
  double jp1 = 0.0, jc = 1e-300, result = 0.0, at0 = 0.0, at1 = 0.0;
  for (int k = start; k >= 0; --k) {
    const double jm = (2.0 * k + 3.0) / ax * jc - jp1;
    jp1 = jc;
    jc = jm;
    if (k == p) result = jc;
    if (k == 1) at1 = jc;
    if (k == 0) at0 = jc;
    if (std::abs(jc) > 1e250) {
      jc *= 1e-250;
      jp1 *= 1e-250;
      result *= 1e-250;
      at1 *= 1e-250;
    }
  }
  const double scale = (std::abs(j0) > std::abs(j1)) ? j0 / at0 : j1 / at1;
  return sign * result * scale;
}

}  // namespace lgr
