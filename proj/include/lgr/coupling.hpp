#pragma once

// Transition channels of the dipole (p = 0) matrix element and their
// assembly into Rabi frequencies.
//
// Per channel the matrix element is
//   E0 * coeff * radial_e * radial_cm * angular * cg_weight
// with coeff = phase * g(l, q) * Gamma(alpha / 2) * C-product (* weights),
// radial_e = <f| r (r / w_r)^{alpha - 1} |i>, radial_cm the CM moment of
// order beta and angular the bracket <Y_f| Y^sigma_1 Y^0_0 Y^{m1}_{l1}
// Y^{m2}_{l2} Y^{m3}_{l3} |Y_i>. The 1F2 factor is set to 1.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "lgr/atom.hpp"
#include "lgr/beam.hpp"
#include "lgr/cm.hpp"
#include "lgr/constants.hpp"
#include "lgr/quadrature.hpp"
#include "lgr/specfun.hpp"

namespace lgr {

/// orbital: the orbital bracket is used as printed (cg_weight = 1; needs an
/// S initial state). spin_spectator: Clebsch-Gordan reduction with the spin
/// projection held fixed.
enum class FineStructureMode { orbital, spin_spectator };
/// stretched: j_f = l_f + 1/2 only. all: both j_f = l_f +- 1/2.
enum class FinalJPolicy { stretched, all };
/// literal: C-product only. addition_theorem: also the factorial weights of
/// the translation theorem.
enum class TranslationWeights { literal, addition_theorem };
/// resolved: C^m_l as in beam.hpp. reciprocal: 1 / C^m_l (diagnostic only).
enum class CNormalization { resolved, reciprocal };

struct CouplingOptions {
  int final_l_f_max = 4;
  int final_n = 0;  // 0: same n as the initial state
  int final_n_minus = 0;  // radial quanta of the final CM state
  double mass_ratio = 1.0;  // m_c / m_t
  FineStructureMode fine_structure = FineStructureMode::orbital;
  FinalJPolicy final_j = FinalJPolicy::stretched;
  TranslationWeights translation_weights = TranslationWeights::literal;
  CNormalization c_normalization = CNormalization::resolved;
};

/// Electronic fine-structure label n L_{j}(m_j).
struct ElectronicLabel {
  int n = 1;
  int l = 0;
  HalfInt j = half;
  HalfInt m_j = half;

  friend auto operator<=>(const ElectronicLabel&, const ElectronicLabel&) = default;

  /// e.g. "60D_{5/2}(+3/2)"; contains no commas.
  std::string str() const {
    static constexpr const char* letters = "SPDFGHIKLMNOQRTUV";
    std::string s = std::to_string(n);
    s += (l >= 0 && l < 17) ? std::string(1, letters[l]) : "[l=" + std::to_string(l) + "]";
    s += "_{" + std::to_string(j.twice()) + "/2}(";
    s += (m_j.twice() >= 0 ? "+" : "-") + std::to_string(std::abs(m_j.twice())) + "/2)";
    return s;
  }
};

struct Channel {
  int l = 0;  // topological charge
  int sigma = 0;
  int q = 0;
  int l1 = 0, l2 = 0, l3 = 0;
  int m1 = 0, m2 = 0, m3 = 0;
  int alpha = 1;
  int beta = 0;
  int M_i = 0;
  int M_f = 0;
  int N_f = 0;
  int m_li = 0;
  int m_lf = 0;
  HalfInt m_s = half;
  ElectronicLabel initial;
  ElectronicLabel final_state;

  auto key() const { return std::tuple(q, l1, l2, l3, sigma, final_state.l, final_state.j, m_s); }
};

struct ChannelResult {
  Channel channel;
  double g = 0.0;
  double gamma = 0.0;
  double c_product = 0.0;
  double translation_weight = 1.0;
  double coeff = 0.0;
  double radial_e = 0.0;
  double radial_cm = 0.0;
  double angular = 0.0;
  double cg_weight = 0.0;
  double E0 = 0.0;
  std::complex<double> matrix_element{0.0, 0.0};
  double rabi_kHz = 0.0;
  double lambda_audit = 0.0;
  bool closed = false;
};

/// |M| in hartree expressed as E / h in kHz.
inline double rabi_kHz_from(std::complex<double> m) { return units::hartree_to_kHz(std::abs(m)); }

inline int sign_of(int v) { return (v > 0) - (v < 0); }

namespace detail {

inline double log_c(int l, int m, CNormalization n) {
  const double v = log_solid_norm(l, m);
  return n == CNormalization::resolved ? v : -v;
}

}  // namespace detail

/// Product of the six normalization constants
///   C^{m1}_{l1} C^{l-m1}_{|l|-l1} C^{m2}_{l2} C^{q-m2}_{q-l2} C^{m3}_{l3} C^{-q-m3}_{q-l3}.
/// Zero when any projection exceeds its rank.
inline double c_product(int l, int q, int l1, int l2, int l3, int m1, int m2, int m3,
                        CNormalization norm = CNormalization::resolved) {
  const int al = std::abs(l);
  const std::array<AngularTriple, 6> f = {AngularTriple{l1, m1},      AngularTriple{al - l1, l - m1},
                                          AngularTriple{l2, m2},      AngularTriple{q - l2, q - m2},
                                          AngularTriple{l3, m3},      AngularTriple{q - l3, -q - m3}};
  double s = 0.0;
  for (const auto& t : f) {
    if (!t.valid()) return 0.0;
    s += detail::log_c(t.l, t.m, norm);
  }
  return std::exp(s);
}

/// Factorial weight of the translation theorem for the three split factors.
inline double translation_weight(int l, int q, int l1, int l2, int l3, int m1, int m2, int m3) {
  const int al = std::abs(l);
  auto one = [](int L, int M, int a, int ma) {
    const int b = L - a;
    const int mb = M - ma;
    return log_factorial(L + M) + log_factorial(L - M) - log_factorial(a + ma) - log_factorial(a - ma) -
           log_factorial(b + mb) - log_factorial(b - mb);
  };
  return std::exp(one(al, l, l1, m1) + one(q, q, l2, m2) + one(q, -q, l3, m3));
}

/// sum_{m_s} <l_f m_lf; 1/2 m_s | j_f m_jf> <l_i m_li; 1/2 m_s | j_i m_ji>
/// with the spin projection fixed by both brackets.
inline double fine_structure_weight(int l_i, HalfInt j_i, HalfInt m_ji, int l_f, HalfInt j_f, HalfInt m_jf, int m_li,
                                    int m_lf) {
  if (m_jf - m_ji != HalfInt(m_lf - m_li)) return 0.0;
  double sum = 0.0;
  for (const HalfInt m_s : {-half, half}) {
    if (HalfInt(m_li) + m_s != m_ji || HalfInt(m_lf) + m_s != m_jf) continue;
    sum += clebsch_gordan(HalfInt(l_f), HalfInt(m_lf), half, m_s, j_f, m_jf) *
           clebsch_gordan(HalfInt(l_i), HalfInt(m_li), half, m_s, j_i, m_ji);
  }
  return sum;
}

/// Electron angular factors for the p = 0 term.
inline std::array<AngularTriple, 5> electron_factors(const Channel& c) {
  return {AngularTriple{1, c.sigma}, AngularTriple{0, 0}, AngularTriple{c.l1, c.m1}, AngularTriple{c.l2, c.m2},
          AngularTriple{c.l3, c.m3}};
}

/// All index tuples allowed by the selection deltas, paired with every final
/// electronic state of matching parity and projection.
inline std::vector<Channel> enumerate_channels(const BeamSpec& beam, const ElectronicLabel& initial,
                                               const CMState& initial_cm, const CouplingOptions& opt = {}) {
  beam.validate();
  initial_cm.validate();
  if (initial.l < 0 || initial.n <= initial.l) throw std::domain_error("enumerate_channels: bad initial state");
  if (opt.fine_structure == FineStructureMode::orbital && initial.l != 0) {
    throw std::invalid_argument("orbital fine-structure mode needs an S initial state; use spin_spectator");
  }
  // Spin projections compatible with the initial state.
  std::vector<HalfInt> spins;
  for (const HalfInt m_s : {-half, half}) {
    const HalfInt m_l = initial.m_j - m_s;
    if (m_l.is_integer() && std::abs(m_l.twice()) <= 2 * initial.l) {
      if (opt.fine_structure == FineStructureMode::spin_spectator &&
          clebsch_gordan(HalfInt(initial.l), m_l, half, m_s, initial.j, initial.m_j) == 0.0) {
        continue;
      }
      spins.push_back(m_s);
    }
  }
  const int n_f = opt.final_n > 0 ? opt.final_n : initial.n;
  const int al = std::abs(beam.l);
  const int sl = sign_of(beam.l);
  std::vector<Channel> out;
  for (int q = 0; q <= beam.q_max; ++q) {
    for (int l1 = 0; l1 <= al; ++l1) {
      for (int l2 = 0; l2 <= q; ++l2) {
        for (int l3 = 0; l3 <= q; ++l3) {
          Channel c;
          c.l = beam.l;
          c.sigma = beam.sigma;
          c.q = q;
          c.l1 = l1;
          c.l2 = l2;
          c.l3 = l3;
          c.m1 = sl * l1;
          c.m2 = l2;
          c.m3 = -l3;
          c.alpha = l1 + l2 + l3 + 1;
          c.beta = al + 2 * q - l1 - l2 - l3;
          c.M_i = initial_cm.M;
          c.M_f = beam.l - c.m1 - c.m2 - c.m3 + initial_cm.M;
          c.N_f = std::abs(c.M_f) + 2 * opt.final_n_minus;
          c.initial = initial;
          const int rank = 1 + l1 + l2 + l3;
          for (const HalfInt m_s : spins) {
            c.m_s = m_s;
            c.m_li = (initial.m_j - m_s).twice() / 2;
            c.m_lf = c.m_li + c.sigma + c.m1 + c.m2 + c.m3;
            for (int l_f = std::abs(c.m_lf); l_f <= std::min(opt.final_l_f_max, initial.l + rank); ++l_f) {
              if ((l_f + initial.l + rank) % 2 != 0) continue;
              if (l_f >= n_f) continue;
              const HalfInt m_jf = HalfInt(c.m_lf) + m_s;
              for (const int dj : {1, -1}) {
                if (opt.final_j == FinalJPolicy::stretched && dj < 0) continue;
                const HalfInt j_f = HalfInt::from_twice(2 * l_f + dj);
                if (j_f.twice() < 1 || std::abs(m_jf.twice()) > j_f.twice()) continue;
                c.final_state = ElectronicLabel{n_f, l_f, j_f, m_jf};
                out.push_back(c);
              }
            }
          }
        }
      }
    }
  }
  return out;
}

/// int_0^1 lambda^exponent j_p(k lambda r) d lambda by Gauss-Legendre.
inline double lambda_integral_oracle(int exponent, int p, double k, double r) {
  if (exponent < 0 || p < 0) throw std::domain_error("lambda_integral_oracle: negative index");
  static const QuadratureRule rule = gauss_legendre(48);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double lam = 0.5 * (rule.nodes[i] + 1.0);
    s += 0.5 * rule.weights[i] * std::pow(lam, exponent) * spherical_bessel(p, k * lam * r);
  }
  return s;
}

inline ChannelResult assemble(const Channel& c, const BeamSpec& beam, const RydbergState& psi_i,
                              const RydbergState& psi_f, const CMState& cm_i, const CMState& cm_f,
                              const CouplingOptions& opt = {}) {
  if (cm_f.M != c.M_f) throw std::invalid_argument("assemble: final CM projection does not match the channel");
  if (psi_f.l != c.final_state.l || psi_f.j != c.final_state.j) {
    throw std::invalid_argument("assemble: final electronic state does not match the channel");
  }
  ChannelResult r;
  r.channel = c;
  r.E0 = beam.E0;
  r.g = g_coeff(beam.l, c.q, cm_i.w_r, beam.w0);
  r.gamma = gamma_fn(0.5 * c.alpha);
  r.c_product = c_product(beam.l, c.q, c.l1, c.l2, c.l3, c.m1, c.m2, c.m3, opt.c_normalization);
  if (opt.translation_weights == TranslationWeights::addition_theorem) {
    r.translation_weight = translation_weight(beam.l, c.q, c.l1, c.l2, c.l3, c.m1, c.m2, c.m3);
  }
  const double mass_factor = std::pow(opt.mass_ratio, c.alpha - 1);
  r.coeff = vortex_phase(beam.l) * r.g * r.gamma * r.c_product * r.translation_weight * mass_factor;
  r.radial_e = radial_matrix_element(psi_f, psi_i, c.alpha, cm_i.w_r);
  r.radial_cm = cm_moment(cm_f, cm_i, c.beta);
  const auto factors = electron_factors(c);
  r.angular = multi_gaunt(factors, AngularTriple{c.final_state.l, c.m_lf}, AngularTriple{c.initial.l, c.m_li});
  r.cg_weight = opt.fine_structure == FineStructureMode::orbital
                    ? 1.0
                    : fine_structure_weight(c.initial.l, c.initial.j, c.initial.m_j, c.final_state.l,
                                            c.final_state.j, c.final_state.m_j, c.m_li, c.m_lf);
  r.matrix_element = beam.E0 * r.coeff * r.radial_e * r.radial_cm * r.angular * r.cg_weight;
  r.rabi_kHz = rabi_kHz_from(r.matrix_element);
  r.closed = r.matrix_element == std::complex<double>{0.0, 0.0};
  // Exact lambda integral against the Gamma(alpha/2) it is replaced by,
  // evaluated at the mean radius of the initial state.
  const double r_mean = radial_integral(psi_i, psi_i, 1.0);
  r.lambda_audit = lambda_integral_oracle(c.alpha - 1, 0, beam.k, r_mean) / r.gamma;
  return r;
}

/// Identity of a final composite (electronic + CM) state.
struct CompositeKey {
  ElectronicLabel electronic;
  int M_f = 0;
  int N_f = 0;
  friend auto operator<=>(const CompositeKey&, const CompositeKey&) = default;
};

/// Coherent sum of channel amplitudes per final composite state.
inline std::map<CompositeKey, std::complex<double>> coherent_totals(const std::vector<ChannelResult>& results) {
  std::map<CompositeKey, std::complex<double>> out;
  for (const auto& r : results) {
    out[CompositeKey{r.channel.final_state, r.channel.M_f, r.channel.N_f}] += r.matrix_element;
  }
  return out;
}

/// Root-sum-square over CM states of the coherent totals, per electronic label.
inline std::map<ElectronicLabel, double> electronic_aggregates(const std::vector<ChannelResult>& results) {
  std::map<ElectronicLabel, double> sq;
  for (const auto& [key, amp] : coherent_totals(results)) sq[key.electronic] += std::norm(amp);
  for (auto& [label, v] : sq) v = std::sqrt(v);
  return sq;
}

/// Solves and caches electronic states on one shared grid step.
class StateCache {
public:
  StateCache(SpeciesParams species, double step, double inner = 1e-3, SolveOptions opts = {})
      : species_(std::move(species)), step_(step), inner_(inner), opts_(opts) {}

  const RydbergState& get(int n, int l, HalfInt j) {
    const auto key = std::tuple(n, l, j.twice());
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      const auto grid = RadialGrid::for_state(n, l, step_, inner_);
      it = cache_.emplace(key, solve_radial(species_, n, l, j, grid, opts_)).first;
    }
    return it->second;
  }

  const SpeciesParams& species() const { return species_; }

private:
  SpeciesParams species_;
  double step_;
  double inner_;
  SolveOptions opts_;
  std::map<std::tuple<int, int, int>, RydbergState> cache_;
};

/// Enumerates and assembles every channel for one beam.
inline std::vector<ChannelResult> compute_channels(const BeamSpec& beam, const ElectronicLabel& initial,
                                                   const CMState& cm_i, StateCache& states,
                                                   const CouplingOptions& opt = {}) {
  std::vector<ChannelResult> out;
  const auto& psi_i = states.get(initial.n, initial.l, initial.j);
  for (const auto& c : enumerate_channels(beam, initial, cm_i, opt)) {
    const auto& psi_f = states.get(c.final_state.n, c.final_state.l, c.final_state.j);
    const CMState cm_f = CMState::with_projection(c.M_f, cm_i.w_r, opt.final_n_minus);
    out.push_back(assemble(c, beam, psi_i, psi_f, cm_i, cm_f, opt));
  }
  return out;
}

/// Series plotted against the topological charge.
///   S->P        : q = 0, l1 = 0 channel to P_{3/2}
///   S->D via TC : q = 0, l1 = 1, l2 = l3 = 0 channel to D_{5/2}
///   S->D via GT : q = 1, l1 = 0, l2 = 1, l3 = 0 channel to D_{5/2}
///   S->D total  : coherent sum of the two D channels (same final composite state)
struct SweepRow {
  int l = 0;
  std::string group;
  std::string final_state;
  int M_f = 0;
  double rabi_kHz = 0.0;
};

inline bool is_s_to_p(const Channel& c) {
  return c.q == 0 && c.l1 == 0 && c.l2 == 0 && c.l3 == 0 && c.final_state.l == 1;
}
inline bool is_via_tc(const Channel& c) {
  return c.q == 0 && c.l1 == 1 && c.l2 == 0 && c.l3 == 0 && c.final_state.l == 2;
}
inline bool is_via_gt(const Channel& c) {
  return c.q == 1 && c.l1 == 0 && c.l2 == 1 && c.l3 == 0 && c.final_state.l == 2;
}

inline std::vector<SweepRow> sweep_rows(int l, const std::vector<ChannelResult>& results) {
  std::vector<SweepRow> rows;
  auto find_one = [&](auto pred) -> const ChannelResult* {
    for (const auto& r : results) {
      if (pred(r.channel) && r.channel.final_state.j.twice() == 2 * r.channel.final_state.l + 1) return &r;
    }
    return nullptr;
  };
  const auto* sp = find_one(is_s_to_p);
  const auto* tc = find_one(is_via_tc);
  const auto* gt = find_one(is_via_gt);
  auto add = [&](const char* name, const ChannelResult* r) {
    if (r) rows.push_back({l, name, r->channel.final_state.str(), r->channel.M_f, r->rabi_kHz});
  };
  add("S->P", sp);
  add("S->D via TC", tc);
  add("S->D via GT", gt);
  if (tc && gt) {
    const CompositeKey k_tc{tc->channel.final_state, tc->channel.M_f, tc->channel.N_f};
    const CompositeKey k_gt{gt->channel.final_state, gt->channel.M_f, gt->channel.N_f};
    if (k_tc == k_gt) {
      rows.push_back({l, "S->D total", tc->channel.final_state.str(), tc->channel.M_f,
                      rabi_kHz_from(tc->matrix_element + gt->matrix_element)});
    } else {
      rows.push_back({l, "S->D total", tc->channel.final_state.str() + "|" + gt->channel.final_state.str(),
                      tc->channel.M_f,
                      units::hartree_to_kHz(std::hypot(std::abs(tc->matrix_element), std::abs(gt->matrix_element)))});
    }
  }
  return rows;
}

}  // namespace lgr
