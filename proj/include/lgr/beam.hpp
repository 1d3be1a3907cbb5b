#pragma once

// Laguerre-Gaussian field profile, its expansion in products of regular
// solid harmonics, and the translation (addition) theorem that splits a
// solid harmonic of a summed coordinate into electron and centre-of-mass
// parts.
//
// Solid-harmonic normalization: R^m_l(r) = C^m_l r^l Y^m_l with
//   C^m_l = sqrt(4 pi / (2l + 1) * (l - m)! (l + m)!).
// This is the normalization under which
//   (r sin t)^|l| e^{+-i|l|phi} = s 2^|l| |l|! / (2|l|)! R^{+-|l|}_|l|
// and the Gaussian series with coefficients 4^q q! / ((2q)!)^2 w0^{-2q}
// hold exactly (s = (-1)^|l| for the + sign, 1 for the - sign).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lgr/specfun.hpp"

namespace lgr {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double theta() const { return norm() == 0.0 ? 0.0 : std::acos(std::clamp(z / norm(), -1.0, 1.0)); }
  double phi() const { return std::atan2(y, x); }

  static Vec3 spherical(double r, double theta, double phi) {
    return {r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi), r * std::cos(theta)};
  }
};

/// The LG beam. Lengths, field and wavenumber in atomic units.
struct BeamSpec {
  int l = 1;          // topological charge
  double w0 = 1.0;    // waist
  double E0 = 1.0;    // field amplitude
  int sigma = 1;      // polarization component, -1, 0 or +1
  double k = 0.0;     // wavenumber
  int q_max = 1;      // truncation of the Gaussian-factor series

  void validate() const {
    if (!(w0 > 0.0)) throw std::invalid_argument("beam: waist must be positive");
    if (E0 < 0.0) throw std::invalid_argument("beam: field amplitude must be non-negative");
    if (q_max < 0) throw std::invalid_argument("beam: q_max must be non-negative");
    if (sigma < -1 || sigma > 1) throw std::invalid_argument("beam: sigma must be -1, 0 or +1");
  }
};

struct SolidHarmonicTerm {
  int l = 0;
  int m = 0;
  std::complex<double> coefficient{1.0, 0.0};
};

inline double log_solid_norm(int l, int m) {
  return 0.5 * (std::log(4.0 * std::numbers::pi / (2.0 * l + 1.0)) + log_factorial(l - m) + log_factorial(l + m));
}

/// C^m_l; zero outside |m| <= l.
inline double solid_norm(int l, int m) {
  if (l < 0 || std::abs(m) > l) return 0.0;
  return std::exp(log_solid_norm(l, m));
}

inline std::complex<double> solid_harmonic(int l, int m, const Vec3& r) {
  if (l < 0 || std::abs(m) > l) throw std::domain_error("solid_harmonic: need |m| <= l");
  const double rn = r.norm();
  if (rn == 0.0) return l == 0 ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 0.0};
  return solid_norm(l, m) * std::pow(rn, l) * spherical_harmonic(l, m, r.theta(), r.phi());
}

inline std::complex<double> evaluate(const SolidHarmonicTerm& t, const Vec3& r) {
  return t.coefficient * solid_harmonic(t.l, t.m, r);
}

/// Field amplitude of the LG mode at cylindrical (rho, phi, z).
inline std::complex<double> lg_amplitude(const BeamSpec& spec, double rho, double phi, double z) {
  if (rho < 0.0) throw std::domain_error("lg_amplitude: rho must be non-negative");
  const int al = std::abs(spec.l);
  const double pref = std::sqrt(2.0 / (std::numbers::pi * std::exp(log_factorial(al))));
  const double radial = std::pow(rho * std::sqrt(2.0) / spec.w0, al) * std::exp(-rho * rho / (spec.w0 * spec.w0));
  return spec.E0 * pref * radial * std::polar(1.0, spec.l * phi + spec.k * z);
}

/// f(l, q) with the waist dependence explicit.
inline double f_coeff(int l, int q, double w0) {
  if (q < 0) throw std::domain_error("f_coeff: q must be non-negative");
  const int al = std::abs(l);
  const double lg = q * std::log(4.0) + log_factorial(q) - (2.0 * q + al) * std::log(w0) - 2.0 * log_factorial(2 * q) -
                    log_factorial(2 * al) +
                    0.5 * ((3.0 * al + 1.0) * std::log(2.0) + log_factorial(al) - std::log(std::numbers::pi));
  return std::exp(lg);
}

/// g(l, q) of the dipole matrix element; w_r is the trap length.
inline double g_coeff(int l, int q, double w_r, double w0) {
  if (!(w_r > 0.0) || !(w0 > 0.0)) throw std::domain_error("g_coeff: lengths must be positive");
  if (q < 0) throw std::domain_error("g_coeff: q must be non-negative");
  const int al = std::abs(l);
  const double lg = std::log(std::numbers::pi) + (2.0 * q + al) * std::log(w_r / w0) + q * std::log(4.0) +
                    log_factorial(q) - 2.0 * log_factorial(2 * q) - log_factorial(2 * al) +
                    0.5 * ((3.0 * al + 1.0) * std::log(2.0) + log_factorial(al) - std::log(3.0));
  return std::exp(lg);
}

/// Sign relating (r sin t)^|l| e^{i l phi} to R^l_|l|.
constexpr double vortex_phase(int l) { return (l > 0 && l % 2 != 0) ? -1.0 : 1.0; }

/// One q-term of the field expansion: coefficient * R^l_|l| R^q_q R^{-q}_q.
struct ExpansionTerm {
  int q = 0;
  double f = 0.0;           // f(l, q)
  double coefficient = 0.0;  // vortex_phase(l) * f(l, q)
  std::array<SolidHarmonicTerm, 3> factors;
};

inline std::vector<ExpansionTerm> expand_field(const BeamSpec& spec) {
  spec.validate();
  std::vector<ExpansionTerm> terms;
  terms.reserve(static_cast<std::size_t>(spec.q_max) + 1);
  for (int q = 0; q <= spec.q_max; ++q) {
    ExpansionTerm t;
    t.q = q;
    t.f = f_coeff(spec.l, q, spec.w0);
    t.coefficient = vortex_phase(spec.l) * t.f;
    t.factors = {SolidHarmonicTerm{std::abs(spec.l), spec.l}, SolidHarmonicTerm{q, q}, SolidHarmonicTerm{q, -q}};
    terms.push_back(t);
  }
  return terms;
}

/// Truncated series (including the plane-wave factor) at a Cartesian point.
inline std::complex<double> evaluate_expansion(const BeamSpec& spec, const std::vector<ExpansionTerm>& terms,
                                               const Vec3& r) {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& t : terms) {
    std::complex<double> prod = t.coefficient;
    for (const auto& f : t.factors) prod *= evaluate(f, r);
    sum += prod;
  }
  return spec.E0 * sum * std::polar(1.0, spec.k * r.z);
}

struct ExpansionCheck {
  double residual = 0.0;
  bool absolute = false;  // the exact field vanishes at the probe point
};

inline ExpansionCheck verify_expansion(const BeamSpec& spec, double r, double theta, double phi) {
  const Vec3 p = Vec3::spherical(r, theta, phi);
  const auto exact = lg_amplitude(spec, r * std::sin(theta), phi, r * std::cos(theta));
  const auto series = evaluate_expansion(spec, expand_field(spec), p);
  const double diff = std::abs(series - exact);
  if (std::abs(exact) == 0.0) return {diff, true};
  return {diff / std::abs(exact), false};
}

/// One term of R^m_l(a + b) = sum weight * R^{m1}_{l1}(b) R^{m-m1}_{l-l1}(a).
struct TranslatedTerm {
  SolidHarmonicTerm electron;  // rank l1, argument lambda * (m_c / m_t) * r
  SolidHarmonicTerm cm;        // rank l - l1, argument r_cm
  double weight = 1.0;
};

/// Symbolic addition-theorem terms for R^m_l. The weights are the factorial
/// ratios (l+m)!(l-m)! / ((l1+m1)!(l1-m1)!(l2+m2)!(l2-m2)!) belonging to the
/// C^m_l normalization above.
inline std::vector<TranslatedTerm> translation_terms(int l, int m) {
  if (l < 0 || std::abs(m) > l) throw std::domain_error("translation_terms: need |m| <= l");
  std::vector<TranslatedTerm> out;
  const double lnum = log_factorial(l + m) + log_factorial(l - m);
  for (int l1 = 0; l1 <= l; ++l1) {
    const int l2 = l - l1;
    for (int m1 = -l1; m1 <= l1; ++m1) {
      const int m2 = m - m1;
      if (std::abs(m2) > l2) continue;
      const double lw = lnum - log_factorial(l1 + m1) - log_factorial(l1 - m1) - log_factorial(l2 + m2) -
                        log_factorial(l2 - m2);
      out.push_back({SolidHarmonicTerm{l1, m1}, SolidHarmonicTerm{l2, m2}, std::exp(lw)});
    }
  }
  return out;
}

/// Addition-theorem terms with each factor evaluated: electron factors at
/// `lam_r`, centre-of-mass factors at `r_cm`.
inline std::vector<TranslatedTerm> translate_solid_harmonic(int l, int m, const Vec3& r_cm, const Vec3& lam_r) {
  auto terms = translation_terms(l, m);
  for (auto& t : terms) {
    t.electron.coefficient = solid_harmonic(t.electron.l, t.electron.m, lam_r);
    t.cm.coefficient = solid_harmonic(t.cm.l, t.cm.m, r_cm);
  }
  return terms;
}

inline std::complex<double> sum_translated(const std::vector<TranslatedTerm>& terms) {
  std::complex<double> s{0.0, 0.0};
  for (const auto& t : terms) s += t.weight * t.electron.coefficient * t.cm.coefficient;
  return s;
}

}  // namespace lgr
