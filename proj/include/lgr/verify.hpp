#pragma once

// Self-checks against independent oracles: direct field evaluation, direct
// solid-harmonic evaluation, closed-form hydrogen, brute-force sphere
// quadrature, and monomial expansions of the CM integrals.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lgr/atom.hpp"
#include "lgr/beam.hpp"
#include "lgr/cm.hpp"
#include "lgr/coupling.hpp"
#include "lgr/quadrature.hpp"
#include "lgr/scenario.hpp"
#include "lgr/specfun.hpp"

namespace lgr {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

namespace oracle {

/// Hydrogen R_nl from its explicit polynomial, sign chosen positive on the
/// outermost lobe.
inline double hydrogen_R(int n, int l, double r) {
  const double rho = 2.0 * r / n;
  const int k_max = n - l - 1;
  double poly = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    // L^{2l+1}_{n-l-1}(rho) coefficient: (-1)^k (n+l)! / ((n-l-1-k)! (2l+1+k)! k!)
    const double lc = log_factorial(n + l) - log_factorial(k_max - k) - log_factorial(2 * l + 1 + k) - log_factorial(k);
    poly += ((k % 2) ? -1.0 : 1.0) * std::exp(lc) * std::pow(rho, k);
  }
  const double norm = std::sqrt(std::pow(2.0 / n, 3) * std::exp(log_factorial(k_max) - log_factorial(n + l)) / (2.0 * n));
  const double sign = (k_max % 2) ? -1.0 : 1.0;
  return sign * norm * std::exp(-0.5 * rho) * std::pow(rho, l) * poly;
}

/// Integral over the sphere of conj(Y_bra) prod(Y_factors) Y_ket by
/// Gauss-Legendre in cos(theta) times a uniform azimuthal rule.
inline double sphere_quadrature(const std::vector<AngularTriple>& factors, AngularTriple bra, AngularTriple ket,
                                int n_theta = 24, int n_phi = 64) {
  static thread_local QuadratureRule rule;
  if (static_cast<int>(rule.nodes.size()) != n_theta) rule = gauss_legendre(n_theta);
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t a = 0; a < rule.nodes.size(); ++a) {
    const double theta = std::acos(rule.nodes[a]);
    for (int b = 0; b < n_phi; ++b) {
      const double phi = 2.0 * std::numbers::pi * b / n_phi;
      std::complex<double> v = std::conj(spherical_harmonic(bra.l, bra.m, theta, phi)) *
                               spherical_harmonic(ket.l, ket.m, theta, phi);
      for (const auto& f : factors) v *= spherical_harmonic(f.l, f.m, theta, phi);
      sum += rule.weights[a] * v;
    }
  }
  return (sum * (2.0 * std::numbers::pi / n_phi)).real();
}

/// Monomial coefficients of L^a_n(u).
inline std::vector<double> laguerre_coefficients(int n, int a) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    c[static_cast<std::size_t>(k)] = ((k % 2) ? -1.0 : 1.0) *
                                     std::exp(log_factorial(n + a) - log_factorial(n - k) - log_factorial(a + k) -
                                              log_factorial(k));
  }
  return c;
}

/// CM moment by expanding both Laguerre polynomials and integrating each
/// monomial with int_0^inf u^s e^{-u} du = Gamma(s + 1).
inline double cm_moment_series(const CMState& f, const CMState& i, int beta) {
  const auto cf = laguerre_coefficients(f.n_minus(), std::abs(f.M));
  const auto ci = laguerre_coefficients(i.n_minus(), std::abs(i.M));
  const double a = 0.5 * (std::abs(f.M) + std::abs(i.M) + beta);
  double sum = 0.0;
  for (std::size_t p = 0; p < cf.size(); ++p) {
    for (std::size_t q = 0; q < ci.size(); ++q) sum += cf[p] * ci[q] * gamma_fn(a + static_cast<double>(p + q) + 1.0);
  }
  const double norm = std::sqrt(2.0 * std::exp(log_factorial(f.n_minus()) - log_factorial(f.n_plus())) * 2.0 *
                                std::exp(log_factorial(i.n_minus()) - log_factorial(i.n_plus())));
  return 0.5 * norm * sum;
}

}  // namespace oracle

inline SuiteResult verify_expansion_suite(std::uint64_t seed = 7, int points = 100) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double w0 = 51022.6;
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const int l = static_cast<int>(rng() % 9) - 4;
    const BeamSpec spec{l, w0, 1.0, 1, 1.3e-5, 8};
    const double rho = w0 * (0.05 + 0.45 * u01(rng));
    const double z = w0 * (2.0 * u01(rng) - 1.0);
    const double phi = 2.0 * std::numbers::pi * u01(rng);
    const double r = std::hypot(rho, z);
    const auto chk = verify_expansion(spec, r, std::atan2(rho, z), phi);
    worst = std::max(worst, chk.residual);
  }
  return {"expansion identity", worst <= 1e-6, worst, 1e-6, std::to_string(points) + " points, q_max=8, rho<=0.5 w0"};
}

inline SuiteResult verify_addition_suite(std::uint64_t seed = 11, int trials = 40) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Vec3 rc{u(rng), u(rng), u(rng)};
    const Vec3 re{u(rng), u(rng), u(rng)};
    const double lam = 0.5 * (u(rng) + 1.0);
    for (int l = 0; l <= 4; ++l) {
      for (int m = -l; m <= l; ++m) {
        const auto direct = solid_harmonic(l, m, rc + lam * re);
        const auto sum = sum_translated(translate_solid_harmonic(l, m, rc, lam * re));
        const double scale = std::max(std::abs(direct), std::pow((rc + lam * re).norm(), l) * 1e-3);
        worst = std::max(worst, std::abs(sum - direct) / scale);
      }
    }
  }
  return {"addition theorem", worst <= 1e-10, worst, 1e-10, "l<=4, all m, random vectors"};
}

inline SuiteResult verify_hydrogen_suite(double step = 0.005) {
  const auto h = SpeciesParams::hydrogen();
  double worst_u = 0.0;
  bool nodes_ok = true;
  for (int n = 1; n <= 5; ++n) {
    for (int l = 0; l < n; ++l) {
      const auto g = RadialGrid::for_state(n, l, step, 1e-6);
      const auto s = solve_radial(h, n, l, HalfInt::from_twice(2 * l + 1), g);
      nodes_ok = nodes_ok && !s.diagnostics.node_mismatch;
      for (int i = 0; i < g.size(); ++i) {
        worst_u = std::max(worst_u, std::abs(s.u(i) - s.radius(i) * oracle::hydrogen_R(n, l, s.radius(i))));
      }
    }
  }
  const auto g = RadialGrid::make(step, 1e-6, 200.0);
  const auto s1 = solve_radial(h, 1, 0, half, g);
  const auto p2 = solve_radial(h, 2, 1, HalfInt::from_twice(3), g);
  const double d = std::abs(radial_integral(p2, s1, 1.0) - 128.0 * std::sqrt(6.0) / 243.0);
  const bool ok = worst_u <= 1e-6 && d <= 1e-4 && nodes_ok;
  return {"hydrogen oracle", ok, std::max(worst_u, d), 1e-6,
          "max |u - u_exact| = " + fmt(worst_u) + ", |<2p|r|1s> - 128 sqrt6/243| = " + fmt(d) +
              (nodes_ok ? "" : ", node mismatch")};
}

inline SuiteResult verify_gaunt_suite(std::uint64_t seed = 3, int sets = 200) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  double worst = 0.0;
  int done = 0;
  while (done < sets) {
    std::vector<AngularTriple> f(static_cast<std::size_t>(pick(1, 5)));
    for (auto& t : f) {
      t.l = pick(0, 4);
      t.m = pick(-t.l, t.l);
    }
    AngularTriple ket{pick(0, 4), 0};
    ket.m = pick(-ket.l, ket.l);
    int m = ket.m;
    for (const auto& t : f) m += t.m;
    if (std::abs(m) > 4) continue;
    AngularTriple bra{pick(std::abs(m), 4), m};
    const double a = multi_gaunt(f, bra, ket);
    const double b = oracle::sphere_quadrature(f, bra, ket);
    worst = std::max(worst, std::abs(a - b));
    ++done;
  }
  // 3j and CG orthogonality.
  double orth = 0.0;
  for (int t1 = 0; t1 <= 8; ++t1) {
    for (int t2 = 0; t2 <= 8; ++t2) {
      for (int t3 = std::abs(t1 - t2); t3 <= t1 + t2; t3 += 2) {
        const auto j1 = HalfInt::from_twice(t1), j2 = HalfInt::from_twice(t2), j3 = HalfInt::from_twice(t3);
        for (int tm3 = -t3; tm3 <= t3; tm3 += 2) {
          double s3j = 0.0;
          for (int tm1 = -t1; tm1 <= t1; tm1 += 2) {
            const int tm2 = -tm1 - tm3;
            if (std::abs(tm2) > t2) continue;
            const double w = wigner3j(j1, j2, j3, HalfInt::from_twice(tm1), HalfInt::from_twice(tm2),
                                      HalfInt::from_twice(tm3));
            s3j += (t3 + 1.0) * w * w;
          }
          orth = std::max(orth, std::abs(s3j - 1.0));
          for (int u3 = std::abs(t1 - t2); u3 <= t1 + t2; u3 += 2) {
            if (std::abs(tm3) > u3) continue;
            double scg = 0.0;
            for (int tm1 = -t1; tm1 <= t1; tm1 += 2) {
              const int tm2 = tm3 - tm1;
              if (std::abs(tm2) > t2) continue;
              const auto m1 = HalfInt::from_twice(tm1), m2 = HalfInt::from_twice(tm2), M = HalfInt::from_twice(tm3);
              scg += clebsch_gordan(j1, m1, j2, m2, j3, M) * clebsch_gordan(j1, m1, j2, m2, HalfInt::from_twice(u3), M);
            }
            orth = std::max(orth, std::abs(scg - (u3 == t3 ? 1.0 : 0.0)));
          }
        }
      }
    }
  }
  const bool ok = worst <= 1e-9 && orth <= 1e-12;
  return {"angular algebra", ok, std::max(worst, orth), 1e-9,
          "multi_gaunt vs quadrature " + fmt(worst) + " on " + std::to_string(sets) +
              " sets; 3j/CG orthogonality " + fmt(orth)};
}

inline SuiteResult verify_cm_suite() {
  const double w_r = 41573.6;
  double orth = 0.0, series = 0.0;
  for (int N = 0; N <= 6; ++N) {
    for (int Np = 0; Np <= 6; ++Np) {
      for (int M = -std::min(N, Np); M <= std::min(N, Np); ++M) {
        if ((N - std::abs(M)) % 2 || (Np - std::abs(M)) % 2) continue;
        const double v = cm_moment(CMState{N, M, w_r}, CMState{Np, M, w_r}, 0);
        orth = std::max(orth, std::abs(v - (N == Np ? 1.0 : 0.0)));
      }
    }
  }
  for (int N = 0; N <= 4; ++N) {
    for (int M = -N; M <= N; M += 2) {
      for (int Np = 0; Np <= 4; ++Np) {
        for (int Mp = -Np; Mp <= Np; Mp += 2) {
          for (int beta = 0; beta <= 4; ++beta) {
            const CMState f{N, M, w_r}, i{Np, Mp, w_r};
            const double a = cm_moment(f, i, beta);
            const double b = oracle::cm_moment_series(f, i, beta);
            series = std::max(series, std::abs(a - b) / std::max(1.0, std::abs(b)));
          }
        }
      }
    }
  }
  const bool ok = orth <= 1e-10 && series <= 1e-10;
  return {"CM states", ok, std::max(orth, series), 1e-10,
          "orthonormality " + fmt(orth) + ", Gamma-expansion " + fmt(series)};
}

inline SuiteResult verify_lambda_suite() {
  double worst = 0.0;
  for (int e = 0; e <= 6; ++e) worst = std::max(worst, std::abs(lambda_integral_oracle(e, 0, 1e-9, 1.0) - 1.0 / (e + 1)));
  // p = 1, kr = 0.1: series  sum_k (-1)^k x^{2k+1} / (2^k k! (2k+3)!! (2k+2))
  const double x = 0.1;
  double s = 0.0, term = x / 3.0;
  for (int k = 0; k < 10; ++k) {
    s += term / (2.0 * k + 2.0);
    term *= -x * x / (2.0 * (k + 1) * (2.0 * k + 5.0));
  }
  worst = std::max(worst, std::abs(lambda_integral_oracle(0, 1, x, 1.0) - s));
  return {"lambda integral", worst <= 1e-12, worst, 1e-12,
          "kr->0 limit 1/(e+1); p=1 series at kr=0.1; Gamma(alpha/2) replaces this integral in the main path"};
}

inline std::vector<SuiteResult> run_all_suites() {
  return {verify_expansion_suite(), verify_addition_suite(), verify_hydrogen_suite(),
          verify_gaunt_suite(),     verify_cm_suite(),       verify_lambda_suite()};
}

}  // namespace lgr
