#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lgr/beam.hpp"

using namespace lgr;

namespace {

constexpr double pi = std::numbers::pi;

BeamSpec spec(int l, int q_max, double w0 = 1.0) { return BeamSpec{l, w0, 1.0, 1, 0.0, q_max}; }

double fact(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST(LgAmplitude, Examples) {
  EXPECT_EQ(std::abs(lg_amplitude(spec(1, 0), 0.0, 0.3, 0.0)), 0.0);
  const BeamSpec s0{0, 2.0, 3.0, 1, 0.0, 0};
  EXPECT_NEAR(std::abs(lg_amplitude(s0, 0.0, 0.0, 0.0) - 3.0 * std::sqrt(2.0 / pi)), 0.0, 1e-14);
  const BeamSpec s1{1, 2.0, 3.0, 1, 0.0, 0};
  const auto v = lg_amplitude(s1, 2.0 / std::sqrt(2.0), 0.0, 0.0);
  EXPECT_NEAR(std::abs(v - 3.0 * std::sqrt(2.0 / pi) * std::exp(-0.5)), 0.0, 1e-14);
}

TEST(LgAmplitude, PhaseWindsByTwoPiL) {
  for (int l : {-3, -1, 1, 2, 4}) {
    const auto s = spec(l, 0, 5.0);
    double total = 0.0;
    std::complex<double> prev = lg_amplitude(s, 1.0, 0.0, 0.0);
    const int steps = 720;
    for (int k = 1; k <= steps; ++k) {
      const auto cur = lg_amplitude(s, 1.0, 2.0 * pi * k / steps, 0.0);
      total += std::arg(cur / prev);
      prev = cur;
    }
    EXPECT_NEAR(total, 2.0 * pi * l, 1e-9);
  }
}

TEST(FCoeff, Examples) {
  EXPECT_NEAR(f_coeff(0, 0, 1.0), std::sqrt(2.0 / pi), 1e-15);
  EXPECT_NEAR(f_coeff(1, 0, 1.0), 2.0 / std::sqrt(pi), 1e-15);
  EXPECT_NEAR(f_coeff(0, 1, 1.0), std::sqrt(2.0 / pi), 1e-15);
  EXPECT_NEAR(f_coeff(-1, 0, 1.0), f_coeff(1, 0, 1.0), 1e-15);
}

TEST(FCoeff, DirectFormulaAndWaistPower) {
  for (int l = -4; l <= 4; ++l) {
    for (int q = 0; q <= 5; ++q) {
      const int al = std::abs(l);
      const double w0 = 1.7;
      const double direct = std::pow(4.0, q) * fact(q) / (std::pow(w0, 2 * q + al) * fact(2 * q) * fact(2 * q) * fact(2 * al)) *
                            std::sqrt(std::pow(2.0, 3 * al + 1) * fact(al) / pi);
      EXPECT_NEAR(f_coeff(l, q, w0) / direct, 1.0, 1e-12);
    }
  }
}

TEST(GCoeff, Examples) {
  const double wr = 2.2, w0 = 2.7;
  EXPECT_NEAR(g_coeff(1, 0, wr, w0), 2.0 * pi * (wr / w0) / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(g_coeff(0, 0, wr, w0), pi * std::sqrt(2.0 / 3.0), 1e-14);
  for (int l = -3; l <= 3; ++l) {
    for (int q = 0; q <= 3; ++q) {
      EXPECT_NEAR(g_coeff(l, q, wr, 2.0 * w0) * std::pow(2.0, 2 * q + std::abs(l)), g_coeff(l, q, wr, w0), 1e-12);
    }
  }
}

TEST(ExpandField, Structure) {
  const auto t0 = expand_field(spec(0, 0));
  ASSERT_EQ(t0.size(), 1u);
  for (const auto& f : t0[0].factors) {
    EXPECT_EQ(f.l, 0);
    EXPECT_EQ(f.m, 0);
  }
  EXPECT_NEAR(t0[0].f, f_coeff(0, 0, 1.0), 1e-15);

  const auto t1 = expand_field(spec(1, 1));
  ASSERT_EQ(t1.size(), 2u);
  EXPECT_EQ(t1[0].factors[0].l, 1);
  EXPECT_EQ(t1[0].factors[1].l, 0);
  EXPECT_EQ(t1[0].factors[2].l, 0);
  EXPECT_EQ(t1[1].factors[0].l, 1);
  EXPECT_EQ(t1[1].factors[1].l, 1);
  EXPECT_EQ(t1[1].factors[2].l, 1);
}

TEST(ExpandField, GaussianFactorCarriesNoNetProjection) {
  for (int l = -4; l <= 4; ++l) {
    for (const auto& t : expand_field(spec(l, 6))) {
      EXPECT_EQ(t.factors[1].m + t.factors[2].m, 0);
      EXPECT_EQ(t.factors[1].l, t.q);
      EXPECT_EQ(t.factors[0].m, l);
    }
  }
}

// (x + i y)^|l| written through R^{l}_{|l|}: the identity fixing the
// normalization convention.
TEST(SolidHarmonic, VortexIdentity) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Vec3 r{u(rng), u(rng), u(rng)};
    for (int l = -4; l <= 4; ++l) {
      const int al = std::abs(l);
      const std::complex<double> xy(r.x, l >= 0 ? r.y : -r.y);
      const auto direct = std::pow(xy, al);
      const auto via = vortex_phase(l) * std::pow(2.0, al) * fact(al) / fact(2 * al) * solid_harmonic(al, l, r);
      EXPECT_NEAR(std::abs(direct - via), 0.0, 1e-12);
    }
  }
}

// (x^2 + y^2)^q through R^q_q R^{-q}_q; R^{-q}_q = (-1)^q conj(R^q_q).
TEST(SolidHarmonic, GaussianIdentity) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Vec3 r{u(rng), u(rng), u(rng)};
    for (int q = 0; q <= 5; ++q) {
      const double rho2q = std::pow(r.x * r.x + r.y * r.y, q);
      const auto via = std::pow(-4.0, q) * fact(q) * fact(q) / (fact(2 * q) * fact(2 * q)) * solid_harmonic(q, q, r) *
                       solid_harmonic(q, -q, r);
      EXPECT_NEAR(std::abs(via - rho2q), 0.0, 1e-12);
    }
  }
}

TEST(VerifyExpansion, Examples) {
  EXPECT_EQ(verify_expansion(spec(0, 0), 0.0, 0.0, 0.0).residual, 0.0);
  const double w0 = 3.0;
  const double rho = 0.3 * w0;
  const BeamSpec s8{1, w0, 1.0, 1, 0.4, 8};
  EXPECT_LE(verify_expansion(s8, rho, pi / 2, 0.7).residual, 1e-6);
  const BeamSpec s0{1, w0, 1.0, 1, 0.4, 0}, s1{1, w0, 1.0, 1, 0.4, 1};
  EXPECT_GT(verify_expansion(s0, rho, pi / 2, 0.7).residual, verify_expansion(s1, rho, pi / 2, 0.7).residual);
}

TEST(VerifyExpansion, RandomPointsInsideHalfWaist) {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double w0 = 51022.6;
  for (int k = 0; k < 100; ++k) {
    const int l = static_cast<int>(rng() % 9) - 4;
    const BeamSpec s{l, w0, 4.6e-9, 1, 1.3e-5, 8};
    const double rho = 0.5 * w0 * (0.02 + 0.98 * u(rng));
    const double z = w0 * (u(rng) - 0.5);
    const auto chk = verify_expansion(s, std::hypot(rho, z), std::atan2(rho, z), 2.0 * pi * u(rng));
    EXPECT_FALSE(chk.absolute);
    EXPECT_LE(chk.residual, 1e-6);
  }
}

TEST(VerifyExpansion, OnAxisFlagsAbsolute) {
  const auto chk = verify_expansion(spec(2, 3), 0.5, 0.0, 0.0);
  EXPECT_TRUE(chk.absolute);
  EXPECT_NEAR(chk.residual, 0.0, 1e-15);
}

TEST(Translation, NullTranslations) {
  const Vec3 a{0.3, -0.4, 0.9};
  const Vec3 zero{};
  for (int l = 0; l <= 4; ++l) {
    for (int m = -l; m <= l; ++m) {
      const auto terms_a = translate_solid_harmonic(l, m, a, zero);
      int nonzero = 0;
      for (const auto& t : terms_a) {
        if (std::abs(t.electron.coefficient) != 0.0) {
          ++nonzero;
          EXPECT_EQ(t.electron.l, 0);
        }
      }
      EXPECT_EQ(nonzero, 1);
      EXPECT_NEAR(std::abs(sum_translated(terms_a) - solid_harmonic(l, m, a)), 0.0, 1e-13);
      const auto terms_b = translate_solid_harmonic(l, m, zero, a);
      EXPECT_NEAR(std::abs(sum_translated(terms_b) - solid_harmonic(l, m, a)), 0.0, 1e-13);
    }
  }
}

TEST(Translation, AdditionTheoremRandomVectors) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 rc{u(rng), u(rng), u(rng)}, re{u(rng), u(rng), u(rng)};
    const double lam = 0.5 * (u(rng) + 2.0) / 2.0;
    for (int l = 0; l <= 4; ++l) {
      for (int m = -l; m <= l; ++m) {
        const auto direct = solid_harmonic(l, m, rc + lam * re);
        const auto sum = sum_translated(translate_solid_harmonic(l, m, rc, lam * re));
        const double scale = std::max(std::abs(direct), 1e-3 * std::pow((rc + lam * re).norm(), l));
        EXPECT_LE(std::abs(sum - direct) / scale, 1e-10) << l << " " << m;
      }
    }
  }
}

TEST(Translation, StretchedSplitsHaveUnitWeight) {
  for (int l = 0; l <= 5; ++l) {
    for (const auto& t : translation_terms(l, l)) {
      if (t.electron.m == t.electron.l) {
        const double expect = fact(2 * l) / (fact(2 * t.electron.l) * fact(2 * t.cm.l));
        EXPECT_NEAR(t.weight, expect, 1e-9 * expect);
      }
    }
  }
  for (const auto& t : translation_terms(1, 1)) EXPECT_NEAR(t.weight, 1.0, 1e-14);
}

TEST(BeamSpec, Validation) {
  EXPECT_THROW((BeamSpec{1, 0.0, 1.0, 1, 0.0, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((BeamSpec{1, 1.0, -1.0, 1, 0.0, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((BeamSpec{1, 1.0, 1.0, 2, 0.0, 1}).validate(), std::invalid_argument);
  EXPECT_THROW((BeamSpec{1, 1.0, 1.0, 1, 0.0, -1}).validate(), std::invalid_argument);
}
