#pragma once

// Rydberg electronic structure: core model potential, quantum-defect
// energies, inward Numerov integration of the radial equation and radial
// matrix elements.
//
// The radial equation is integrated on a grid uniform in x = sqrt(r). With
// u(r) = r R(r) and w(x) = x^{-1/2} u(x^2) the equation becomes
//   w'' = [8 x^2 (V - E) + (2l + 1/2)(2l + 3/2) / x^2] w,
// which has no first-derivative term and is therefore Numerov-ready.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lgr/constants.hpp"
#include "lgr/keyvalue.hpp"
#include "lgr/quadrature.hpp"
#include "lgr/specfun.hpp"

namespace lgr {

/// Parameters of the parametric core potential for one orbital l.
struct CoreParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
  double rc = 1.0;
};

struct SpeciesParams {
  std::string name = "hydrogen";
  int Z = 1;
  double alpha_c = 0.0;  // core polarizability
  double mass = 1.0;     // atom mass, atomic units
  bool spin_orbit = true;
  /// Indexed by l; the last entry applies to every higher l.
  std::vector<CoreParams> core = {CoreParams{}};
  /// Optional per-l override of the core polarizability.
  std::map<int, double> alpha_c_by_l;
  /// Rydberg-Ritz coefficients (d0, d2, d4, ...) keyed by (l, 2j).
  std::map<std::pair<int, int>, std::vector<double>> quantum_defects;

  const CoreParams& core_for(int l) const {
    if (core.empty()) throw std::logic_error("species has no core parameters");
    return core[static_cast<std::size_t>(std::min<int>(l, static_cast<int>(core.size()) - 1))];
  }

  double alpha_c_for(int l) const {
    const auto it = alpha_c_by_l.find(l);
    return it == alpha_c_by_l.end() ? alpha_c : it->second;
  }

  void validate() const {
    if (Z < 1) throw std::invalid_argument("species: Z must be >= 1");
    if (alpha_c < 0.0) throw std::invalid_argument("species: alpha_c must be non-negative");
    for (const auto& c : core) {
      if (!(c.rc > 0.0)) throw std::invalid_argument("species: rc must be positive");
    }
  }

  /// Pure Coulomb potential, no spin-orbit term and no quantum defects.
  static SpeciesParams hydrogen() {
    SpeciesParams p;
    p.spin_orbit = false;
    p.mass = units::amu_to_au(1.00782503223);
    return p;
  }
};

/// Reads a species parameter file (schema in README.md).
inline SpeciesParams load_species(const KeyValueFile& kv) {
  SpeciesParams p;
  p.name = kv.get_string("species.name", "unnamed");
  p.Z = kv.get_int("species.Z");
  p.alpha_c = kv.get_double("species.alpha_c", 0.0);
  p.mass = units::amu_to_au(kv.get_double("species.mass_amu"));
  p.spin_orbit = kv.get_bool("species.spin_orbit", true);
  p.core.clear();
  for (int l = 0;; ++l) {
    const std::string base = "core.l" + std::to_string(l) + ".";
    if (!kv.has(base + "a1")) break;
    p.core.push_back(CoreParams{kv.get_double(base + "a1"), kv.get_double(base + "a2"), kv.get_double(base + "a3"),
                                kv.get_double(base + "a4"), kv.get_double(base + "rc")});
    if (kv.has(base + "alpha_c")) p.alpha_c_by_l[l] = kv.get_double(base + "alpha_c");
  }
  if (p.core.empty()) throw ConfigError("core.l0.a1", "species file defines no core parameters");
  for (const auto& [key, entry] : kv.entries()) {
    if (!key.starts_with("qd.l")) continue;
    // qd.l<L>.j<num>/<den>
    const auto dot = key.find(".j", 4);
    if (dot == std::string::npos) throw ConfigError(key, "expected qd.l<L>.j<J>");
    const int l = KeyValueFile::to_int(key, key.substr(4, dot - 4));
    const int twice_j = KeyValueFile::parse_twice_half(key, key.substr(dot + 2));
    if (std::abs(twice_j - 2 * l) != 1) throw ConfigError(key, "j must equal l +- 1/2");
    p.quantum_defects[{l, twice_j}] = kv.get_double_list(key);
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("species", e.what());
  }
  return p;
}

inline SpeciesParams load_species(const std::string& path) { return load_species(KeyValueFile::load(path)); }

inline double spin_orbit_factor(int l, HalfInt j) {
  const double jj = j.value();
  return 0.5 * (jj * (jj + 1.0) - l * (l + 1.0) - 0.75);
}

/// V_c + V_pole + V_so at radius r for orbital l and total angular momentum j.
inline double model_potential(const SpeciesParams& p, int l, HalfInt j, double r) {
  if (!(r > 0.0)) throw std::domain_error("model_potential: r must be positive");
  const auto& c = p.core_for(l);
  const double z_eff = 1.0 + (p.Z - 1.0) * std::exp(-c.a1 * r) - r * (c.a3 + c.a4 * r) * std::exp(-c.a2 * r);
  const double v_c = -z_eff / r;
  const double ac = p.alpha_c_for(l);
  const double r4 = r * r * r * r;
  const double v_pole = ac > 0.0 ? -ac / (2.0 * r4) * (1.0 - std::exp(-std::pow(r / c.rc, 6))) : 0.0;
  double v_so = 0.0;
  if (p.spin_orbit && l > 0) {
    const double a2 = units::fine_structure * units::fine_structure;
    v_so = a2 / (2.0 * r * r * r) * spin_orbit_factor(l, j);
  }
  return v_c + v_pole + v_so;
}

struct QuantumDefectEnergy {
  double energy = 0.0;
  double defect = 0.0;
  bool fallback = false;  // no series for (l, j): hydrogenic value used
};

inline QuantumDefectEnergy qd_energy(const SpeciesParams& p, int n, int l, HalfInt j) {
  if (n <= l) throw std::domain_error("qd_energy: need n > l");
  QuantumDefectEnergy out;
  const auto it = p.quantum_defects.find({l, j.twice()});
  if (it == p.quantum_defects.end() || it->second.empty()) {
    out.fallback = !p.quantum_defects.empty();
  } else {
    const auto& s = it->second;
    const double d0 = s[0];
    const double x = 1.0 / ((n - d0) * (n - d0));
    double pow_x = 1.0;
    for (double c : s) {
      out.defect += c * pow_x;
      pow_x *= x;
    }
  }
  const double ns = n - out.defect;
  out.energy = -0.5 / (ns * ns);
  return out;
}

/// Uniform grid in x = sqrt(r), aligned to the lattice x_k = k * step so
/// that grids built with the same step share nodes.
struct RadialGrid {
  double step = 0.005;
  int k_min = 1;
  int k_max = 2;

  int size() const { return k_max - k_min + 1; }
  double x(int i) const { return (k_min + i) * step; }
  double r(int i) const { return x(i) * x(i); }
  double inner() const { return x(0) * x(0); }
  double outer() const { return x(size() - 1) * x(size() - 1); }

  void validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("grid: step must be positive");
    if (k_min < 1 || k_max <= k_min + 4) throw std::invalid_argument("grid: need k_max > k_min + 4 >= 5");
  }

  static RadialGrid make(double step, double r_inner, double r_outer) {
    RadialGrid g;
    g.step = step;
    g.k_min = std::max(1, static_cast<int>(std::ceil(std::sqrt(r_inner) / step)));
    g.k_max = static_cast<int>(std::ceil(std::sqrt(r_outer) / step));
    g.validate();
    return g;
  }

  /// Default grid for state (n, l): outer cutoff at 2 n (n + 15); inner
  /// cutoff `r_inner` (well inside the core so that core nodes are resolved),
  /// kept clear of the centrifugal singularity. The inward solution is
  /// truncated where it starts to diverge, see solve_radial.
  static RadialGrid for_state(int n, int l, double step = 0.005, double r_inner = 1e-3) {
    const double centrifugal = (2.0 * l + 0.5) * (2.0 * l + 1.5);
    const double x_sing = step * std::sqrt(centrifugal / 6.0);
    return make(step, std::max(r_inner, x_sing * x_sing), 2.0 * n * (n + 15.0));
  }
};

struct RadialDiagnostics {
  int nodes = 0;
  double norm_before = 0.0;      // integral of u^2 before normalization
  double inner_ratio = 0.0;      // |u| where the solution stops, over max |u|
  double r_stop = 0.0;           // innermost radius kept (0 outside the grid)
  bool truncated = false;        // divergent inner part zeroed
  bool inner_divergence = false;
  bool node_mismatch = false;
  bool energy_fallback = false;
};

/// Electronic state with its tabulated radial function.
struct RydbergState {
  int n = 1;
  int l = 0;
  HalfInt j = half;
  HalfInt m_j = half;
  double energy = 0.0;
  RadialGrid grid;
  std::vector<double> w;  // Numerov variable, normalized: 2 * int x^2 w^2 dx = 1
  RadialDiagnostics diagnostics;

  double radius(int i) const { return grid.r(i); }
  /// R(r) at node i.
  double R(int i) const { return w[static_cast<std::size_t>(i)] / std::pow(grid.x(i), 1.5); }
  /// u(r) = r R(r) at node i.
  double u(int i) const { return w[static_cast<std::size_t>(i)] * std::sqrt(grid.x(i)); }
};

struct SolveOptions {
  double divergence_tolerance = 0.05;  // flag when |u| at the stop point exceeds this fraction of max |u|
  int node_tolerance = 0;             // flag when |nodes - (n - l - 1)| exceeds this
};

/// Inward Numerov integration at a prescribed energy, normalized so that
/// int R^2 r^2 dr = 1 over the grid.
inline RydbergState solve_radial(const SpeciesParams& p, int n, int l, HalfInt j, const RadialGrid& grid,
                                 double energy, const SolveOptions& opt = {}) {
  grid.validate();
  if (l < 0 || n <= l) throw std::domain_error("solve_radial: need 0 <= l < n");
  if (std::abs(j.twice() - 2 * l) != 1) throw std::domain_error("solve_radial: need |j - l| = 1/2");

  RydbergState s;
  s.n = n;
  s.l = l;
  s.j = j;
  s.m_j = j;
  s.energy = energy;
  s.grid = grid;

  const int size = grid.size();
  const double h2 = grid.step * grid.step;
  const double centrifugal = (2.0 * l + 0.5) * (2.0 * l + 1.5);
  std::vector<double> kfac(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    const double x = grid.x(i);
    const double g = 8.0 * x * x * (model_potential(p, l, j, x * x) - energy) + centrifugal / (x * x);
    kfac[static_cast<std::size_t>(i)] = g;
  }

  auto& w = s.w;
  w.assign(static_cast<std::size_t>(size), 0.0);
  const auto last = static_cast<std::size_t>(size - 1);
  w[last] = 1e-30;
  w[last - 1] = w[last] * std::exp(grid.step * std::sqrt(std::max(kfac[last], 0.0)));
  for (int i = size - 2; i >= 1; --i) {
    const auto ii = static_cast<std::size_t>(i);
    const double a = 1.0 - h2 * kfac[ii - 1] / 12.0;
    const double b = 2.0 * (1.0 + 5.0 * h2 * kfac[ii] / 12.0);
    const double c = 1.0 - h2 * kfac[ii + 1] / 12.0;
    w[ii - 1] = (b * w[ii] - c * w[ii + 1]) / a;
    if (std::abs(w[ii - 1]) > 1e200) {
      for (std::size_t k = ii - 1; k < w.size(); ++k) w[k] *= 1e-200;
    }
  }

  // Inside the inner turning point the regular solution decays inward. Growth
  // there is the irregular solution taking over: cut it at the minimum.
  int stop = 0;
  int turn = 0;
  while (turn < size && kfac[static_cast<std::size_t>(turn)] > 0.0) ++turn;
  if (turn < size) {
    for (int i = std::min(turn, size - 1); i >= 1; --i) {
      if (std::abs(w[static_cast<std::size_t>(i - 1)]) > std::abs(w[static_cast<std::size_t>(i)])) {
        stop = i;
        break;
      }
    }
  }
  for (int i = 0; i < stop; ++i) w[static_cast<std::size_t>(i)] = 0.0;
  s.diagnostics.truncated = stop > 0;
  s.diagnostics.r_stop = grid.r(stop);

  // 2 * int x^2 w^2 dx
  std::vector<double> integrand(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) {
    const double x = grid.x(i);
    integrand[static_cast<std::size_t>(i)] = 2.0 * x * x * w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
  }
  const double norm = simpson(integrand, grid.step);
  s.diagnostics.norm_before = norm;
  double scale = 1.0 / std::sqrt(norm);

  // Sign convention: positive on the outermost lobe.
  for (int i = size - 1; i >= 0; --i) {
    if (std::abs(w[static_cast<std::size_t>(i)]) > 1e-3 * std::sqrt(norm)) {
      if (w[static_cast<std::size_t>(i)] < 0.0) scale = -scale;
      break;
    }
  }
  for (auto& v : w) v *= scale;

  double umax = 0.0;
  for (int i = 0; i < size; ++i) umax = std::max(umax, std::abs(s.u(i)));
  // Sign changes between non-negligible samples; the far tail and the cut
  // region carry only rounding noise.
  int last_sign = 0;
  for (int i = stop; i < size; ++i) {
    const double v = s.u(i);
    if (std::abs(v) < 1e-7 * umax) continue;
    const int sg = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sg != last_sign) ++s.diagnostics.nodes;
    last_sign = sg;
  }
  s.diagnostics.inner_ratio = umax > 0.0 ? std::abs(s.u(stop)) / umax : 0.0;
  s.diagnostics.inner_divergence = s.diagnostics.inner_ratio > opt.divergence_tolerance;
  s.diagnostics.node_mismatch = std::abs(s.diagnostics.nodes - (n - l - 1)) > opt.node_tolerance;
  return s;
}

/// Same, with the energy taken from the quantum-defect series.
inline RydbergState solve_radial(const SpeciesParams& p, int n, int l, HalfInt j, const RadialGrid& grid,
                                 const SolveOptions& opt = {}) {
  const auto e = qd_energy(p, n, l, j);
  auto s = solve_radial(p, n, l, j, grid, e.energy, opt);
  s.diagnostics.energy_fallback = e.fallback;
  return s;
}

/// int R_f R_i r^power r^2 dr over the shared part of the two grids.
inline double radial_integral(const RydbergState& f, const RydbergState& i, double power) {
  if (std::abs(f.grid.step - i.grid.step) > 1e-12 * f.grid.step) {
    throw std::invalid_argument("radial_integral: states live on grids with different steps");
  }
  const int k_lo = std::max(f.grid.k_min, i.grid.k_min);
  const int k_hi = std::min(f.grid.k_max, i.grid.k_max);
  if (k_hi - k_lo < 2) return 0.0;
  std::vector<double> integrand(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (int k = k_lo; k <= k_hi; ++k) {
    const double x = k * f.grid.step;
    const double wf = f.w[static_cast<std::size_t>(k - f.grid.k_min)];
    const double wi = i.w[static_cast<std::size_t>(k - i.grid.k_min)];
    integrand[static_cast<std::size_t>(k - k_lo)] = 2.0 * wf * wi * std::pow(x, 2.0 * power + 2.0);
  }
  return simpson(integrand, f.grid.step);
}

/// <f| r (r / w_r)^{alpha - 1} |i>.
inline double radial_matrix_element(const RydbergState& f, const RydbergState& i, int alpha, double w_r) {
  if (alpha < 1) throw std::domain_error("radial_matrix_element: alpha must be positive");
  if (!(w_r > 0.0)) throw std::domain_error("radial_matrix_element: w_r must be positive");
  return radial_integral(f, i, alpha) / std::pow(w_r, alpha - 1);
}

}  // namespace lgr
