#pragma once

// Scenario configuration (flat dotted-key text) and the table-producing
// runs behind the command-line tool. Physical units are converted here and
// nowhere else.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lgr/atom.hpp"
#include "lgr/beam.hpp"
#include "lgr/cm.hpp"
#include "lgr/constants.hpp"
#include "lgr/coupling.hpp"
#include "lgr/keyvalue.hpp"

namespace lgr {

struct ScenarioConfig {
  // beam
  std::vector<int> beam_l = {1};
  std::vector<int> beam_sigma = {1};
  double waist_um = 2.7;
  double field_V_per_m = 2400.0;
  int q_max = 1;
  double k_au = -1.0;  // negative: resonant with initial -> n_f P_{3/2}
  // atom
  std::string species_path;
  int n = 60;
  int l = 0;
  HalfInt j = half;
  HalfInt m_j = -half;
  // trap
  double w_r_um = 2.2;
  int N = 0;
  int M = 0;
  double mass_amu = 0.0;  // 0: species mass
  // compute
  std::vector<int> l_sweep = {1, 2, 3, 4};
  CouplingOptions coupling;
  double grid_step = 0.005;
  double grid_inner = 1e-3;
  // output
  std::string output_dir = "out";

  BeamSpec beam(int l_value, int sigma, double k) const {
    return BeamSpec{l_value, units::micrometre_to_au(waist_um), units::volt_per_metre_to_au(field_V_per_m), sigma, k,
                    q_max};
  }
  ElectronicLabel initial() const { return ElectronicLabel{n, l, j, m_j}; }
  CMState cm_initial() const { return CMState{N, M, units::micrometre_to_au(w_r_um)}; }
  int final_n() const { return coupling.final_n > 0 ? coupling.final_n : n; }

  void validate() const {
    auto fail = [](const std::string& key, const std::string& msg) { throw ConfigError(key, msg); };
    if (beam_l.empty()) fail("beam.l", "needs at least one value");
    if (beam_sigma.empty()) fail("beam.sigma", "needs at least one value");
    for (int s : beam_sigma) {
      if (s < -1 || s > 1) fail("beam.sigma", "must be -1, 0 or 1");
    }
    if (!(waist_um > 0.0)) fail("beam.waist_um", "must be positive");
    if (!(field_V_per_m >= 0.0)) fail("beam.field_V_per_m", "must be non-negative");
    if (q_max < 0 || q_max > 8) fail("beam.q_max", "must lie in 0..8");
    if (n < 1) fail("atom.n", "must be positive");
    if (l < 0 || l >= n) fail("atom.l", "need 0 <= l < n");
    if (std::abs(j.twice() - 2 * l) != 1) fail("atom.j", "need j = l +- 1/2");
    if (std::abs(m_j.twice()) > j.twice() || m_j.is_integer()) fail("atom.m_j", "need a half-integer |m_j| <= j");
    if (!(w_r_um > 0.0)) fail("trap.w_r_um", "must be positive");
    if (N < std::abs(M) || (N - std::abs(M)) % 2 != 0) fail("trap.N", "need N >= |M| and N - |M| even");
    if (mass_amu < 0.0) fail("trap.mass_amu", "must be non-negative");
    if (coupling.final_n_minus < 0) fail("trap.final_n_minus", "must be non-negative");
    if (coupling.final_l_f_max < 0) fail("compute.final_l_f_max", "must be non-negative");
    if (coupling.final_n < 0) fail("atom.final_n", "must be non-negative");
    if (!(coupling.mass_ratio > 0.0)) fail("compute.mass_ratio", "must be positive");
    if (!(grid_step > 0.0) || grid_step > 0.05) fail("compute.grid_step", "must lie in (0, 0.05]");
    if (!(grid_inner > 0.0)) fail("compute.grid_inner", "must be positive");
    if (l_sweep.empty()) fail("compute.l_sweep", "needs at least one value");
    if (coupling.fine_structure == FineStructureMode::orbital && l != 0) {
      fail("compute.fine_structure", "orbital mode needs an S initial state; use spin_spectator");
    }
  }

  static ScenarioConfig from(const KeyValueFile& kv) {
    ScenarioConfig c;
    const std::filesystem::path base = std::filesystem::path(kv.origin()).parent_path();
    if (kv.has("beam.l")) c.beam_l = kv.get_int_list("beam.l");
    if (kv.has("beam.sigma")) c.beam_sigma = kv.get_int_list("beam.sigma");
    c.waist_um = kv.get_double("beam.waist_um", c.waist_um);
    c.field_V_per_m = kv.get_double("beam.field_V_per_m", c.field_V_per_m);
    c.q_max = kv.get_int("beam.q_max", c.q_max);
    c.k_au = kv.get_double("beam.k_au", c.k_au);
    const std::string species = kv.raw("atom.species");
    const std::filesystem::path sp(species);
    c.species_path = sp.is_absolute() ? sp.string() : (base / sp).lexically_normal().string();
    c.n = kv.get_int("atom.n", c.n);
    c.l = kv.get_int("atom.l", c.l);
    if (kv.has("atom.j")) c.j = HalfInt::from_twice(kv.get_twice_half_integer("atom.j"));
    if (kv.has("atom.m_j")) c.m_j = HalfInt::from_twice(kv.get_twice_half_integer("atom.m_j"));
    c.coupling.final_n = kv.get_int("atom.final_n", 0);
    c.w_r_um = kv.get_double("trap.w_r_um", c.w_r_um);
    c.N = kv.get_int("trap.N", c.N);
    c.M = kv.get_int("trap.M", c.M);
    c.mass_amu = kv.get_double("trap.mass_amu", c.mass_amu);
    c.coupling.final_n_minus = kv.get_int("trap.final_n_minus", 0);
    if (kv.has("compute.l_sweep")) c.l_sweep = kv.get_int_list("compute.l_sweep");
    c.coupling.final_l_f_max = kv.get_int("compute.final_l_f_max", c.coupling.final_l_f_max);
    c.coupling.mass_ratio = kv.get_double("compute.mass_ratio", c.coupling.mass_ratio);
    c.grid_step = kv.get_double("compute.grid_step", c.grid_step);
    c.grid_inner = kv.get_double("compute.grid_inner_au", c.grid_inner);
    auto choose = [&](const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed) {
      const auto v = kv.get_string(key, fallback);
      for (std::size_t i = 0; i < allowed.size(); ++i) {
        if (allowed[i] == v) return i;
      }
      std::string msg = "expected one of";
      for (const auto& a : allowed) msg += " " + a;
      throw ConfigError(key, msg + ", got `" + v + "`");
    };
    c.coupling.fine_structure = static_cast<FineStructureMode>(
        choose("compute.fine_structure", "orbital", {"orbital", "spin_spectator"}));
    c.coupling.final_j = static_cast<FinalJPolicy>(choose("compute.final_j", "stretched", {"stretched", "all"}));
    c.coupling.translation_weights = static_cast<TranslationWeights>(
        choose("compute.translation_weights", "literal", {"literal", "addition_theorem"}));
    c.coupling.c_normalization =
        static_cast<CNormalization>(choose("compute.c_normalization", "resolved", {"resolved", "reciprocal"}));
    c.output_dir = kv.get_string("output.dir", c.output_dir);
    c.validate();
    return c;
  }

  static ScenarioConfig load(const std::string& path) { return from(KeyValueFile::load(path)); }
};

// ---------------------------------------------------------------------------
// CSV

/// Locale-independent shortest-form number with at most 10 significant digits.
inline std::string fmt(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}
inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(HalfInt v) {
  return v.is_integer() ? std::to_string(v.twice() / 2) : std::to_string(v.twice()) + "/2";
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }

  std::string str() const {
    std::ostringstream s;
    write(s);
    return s.str();
  }

  void save(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write(out);
  }
};

// ---------------------------------------------------------------------------
// Runs

/// Loaded species plus solved-state cache for one scenario.
class Scenario {
public:
  explicit Scenario(ScenarioConfig cfg) : cfg_(std::move(cfg)), species_(load_species_checked(cfg_.species_path)),
        states_(species_, cfg_.grid_step, cfg_.grid_inner) {}

  const ScenarioConfig& config() const { return cfg_; }
  const SpeciesParams& species() const { return species_; }
  StateCache& states() { return states_; }

  /// Wavenumber: configured, or resonant with the initial -> n_f P_{3/2} gap.
  double wavenumber() const {
    if (cfg_.k_au >= 0.0) return cfg_.k_au;
    const double e_i = qd_energy(species_, cfg_.n, cfg_.l, cfg_.j).energy;
    const double e_f = qd_energy(species_, cfg_.final_n(), 1, HalfInt::from_twice(3)).energy;
    return std::abs(e_f - e_i) / units::speed_of_light_au;
  }

  double trap_mass() const { return cfg_.mass_amu > 0.0 ? units::amu_to_au(cfg_.mass_amu) : species_.mass; }

  std::vector<ChannelResult> results(int l_value, int sigma) {
    return compute_channels(cfg_.beam(l_value, sigma, wavenumber()), cfg_.initial(), cfg_.cm_initial(), states_,
                            cfg_.coupling);
  }

private:
  static SpeciesParams load_species_checked(const std::string& path) {
    if (!std::filesystem::exists(path)) throw ConfigError("atom.species", "species file not found: " + path);
    return load_species(path);
  }

  ScenarioConfig cfg_;
  SpeciesParams species_;
  StateCache states_;
};

inline CsvTable run_channels(const ScenarioConfig& cfg) {
  CsvTable t;
  t.header = {"l", "sigma", "q", "l1", "l2", "l3", "m1", "m2", "m3", "M_f", "final_state", "alpha", "beta"};
  for (int l : cfg.beam_l) {
    for (int s : cfg.beam_sigma) {
      for (const auto& c : enumerate_channels(cfg.beam(l, s, 0.0), cfg.initial(), cfg.cm_initial(), cfg.coupling)) {
        t.rows.push_back({fmt(c.l), fmt(c.sigma), fmt(c.q), fmt(c.l1), fmt(c.l2), fmt(c.l3), fmt(c.m1), fmt(c.m2),
                          fmt(c.m3), fmt(c.M_f), c.final_state.str(), fmt(c.alpha), fmt(c.beta)});
      }
    }
  }
  return t;
}

struct RabiTables {
  CsvTable channels;
  CsvTable totals;
};

inline RabiTables run_rabi(Scenario& sc) {
  const auto& cfg = sc.config();
  RabiTables out;
  out.channels.header = {"l",         "sigma",      "q",        "l1",          "l2",        "l3",
                         "m1",        "m2",         "m3",       "M_f",         "N_f",       "final_state",
                         "alpha",     "beta",       "coeff",    "radial_e",    "radial_cm", "angular",
                         "cg_weight", "matrix_element_au",      "rabi_kHz",    "lambda_audit", "cm_energy_kHz"};
  out.totals.header = {"l", "sigma", "kind", "final_state", "M_f", "N_f", "rabi_kHz"};
  const double m_t = sc.trap_mass();
  for (int l : cfg.beam_l) {
    for (int s : cfg.beam_sigma) {
      const auto res = sc.results(l, s);
      for (const auto& r : res) {
        const auto& c = r.channel;
        const CMState cm_f{c.N_f, c.M_f, units::micrometre_to_au(cfg.w_r_um)};
        out.channels.rows.push_back(
            {fmt(c.l), fmt(c.sigma), fmt(c.q), fmt(c.l1), fmt(c.l2), fmt(c.l3), fmt(c.m1), fmt(c.m2), fmt(c.m3),
             fmt(c.M_f), fmt(c.N_f), c.final_state.str(), fmt(c.alpha), fmt(c.beta), fmt(r.coeff), fmt(r.radial_e),
             fmt(r.radial_cm), fmt(r.angular), fmt(r.cg_weight), fmt(r.matrix_element.real()), fmt(r.rabi_kHz),
             fmt(r.lambda_audit), fmt(units::hartree_to_kHz(cm_energy(cm_f, m_t)))});
      }
      for (const auto& [key, amp] : coherent_totals(res)) {
        out.totals.rows.push_back({fmt(l), fmt(s), "coherent", key.electronic.str(), fmt(key.M_f), fmt(key.N_f),
                                   fmt(rabi_kHz_from(amp))});
      }
      for (const auto& [label, mag] : electronic_aggregates(res)) {
        out.totals.rows.push_back({fmt(l), fmt(s), "rss", label.str(), "", "", fmt(units::hartree_to_kHz(mag))});
      }
    }
  }
  return out;
}

inline CsvTable run_sweep(Scenario& sc) {
  const auto& cfg = sc.config();
  CsvTable t;
  t.header = {"l", "sigma", "group", "final_state", "M_f", "rabi_kHz"};
  for (int s : cfg.beam_sigma) {
    for (int l : cfg.l_sweep) {
      for (const auto& row : sweep_rows(l, sc.results(l, s))) {
        t.rows.push_back({fmt(row.l), fmt(s), row.group, row.final_state, fmt(row.M_f), fmt(row.rabi_kHz)});
      }
    }
  }
  return t;
}

inline CsvTable run_wavefunction(Scenario& sc, int n, int l, HalfInt j, int stride = 1) {
  const auto& st = sc.states().get(n, l, j);
  CsvTable t;
  t.header = {"r_au", "R", "u"};
  for (int i = 0; i < st.grid.size(); i += std::max(1, stride)) {
    t.rows.push_back({fmt(st.radius(i)), fmt(st.R(i)), fmt(st.u(i))});
  }
  return t;
}

}  // namespace lgr
