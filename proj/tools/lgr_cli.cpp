// lgr: batch front-end for channel tables, Rabi frequencies, l-sweeps,
// radial wavefunctions and self-checks.
//
// Exit status: 0 success, 1 other failure, 2 configuration error,
// 3 verification failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "lgr/keyvalue.hpp"
#include "lgr/plot.hpp"
#include "lgr/scenario.hpp"
#include "lgr/verify.hpp"

namespace {

enum Exit { ok = 0, other = 1, config = 2, verification = 3 };

struct Overrides {
  std::string config_path = "configs/default.cfg";
  std::string out_dir;
  int q_max = -1;
  std::string l_list;
  std::string format = "csv";
};

lgr::ScenarioConfig load_config(const Overrides& o, bool sweep) {
  auto kv = lgr::KeyValueFile::load(o.config_path);
  if (o.q_max >= 0) kv.set("beam.q_max", std::to_string(o.q_max));
  if (!o.l_list.empty()) kv.set(sweep ? "compute.l_sweep" : "beam.l", o.l_list);
  if (!o.out_dir.empty()) kv.set("output.dir", o.out_dir);
  return lgr::ScenarioConfig::from(kv);
}

std::filesystem::path out_path(const lgr::ScenarioConfig& cfg, const std::string& name) {
  return std::filesystem::path(cfg.output_dir) / name;
}

void report(const std::filesystem::path& p) { std::cout << "wrote " << p.string() << '\n'; }

int cmd_channels(const Overrides& o) {
  const auto cfg = load_config(o, false);
  const auto t = lgr::run_channels(cfg);
  const auto p = out_path(cfg, "channels.csv");
  t.save(p);
  report(p);
  return ok;
}

int cmd_rabi(const Overrides& o) {
  lgr::Scenario sc(load_config(o, false));
  const auto t = lgr::run_rabi(sc);
  const auto p1 = out_path(sc.config(), "rabi.csv");
  const auto p2 = out_path(sc.config(), "rabi_totals.csv");
  t.channels.save(p1);
  t.totals.save(p2);
  report(p1);
  report(p2);
  return ok;
}

int cmd_sweep(const Overrides& o) {
  lgr::Scenario sc(load_config(o, true));
  const auto t = lgr::run_sweep(sc);
  const auto p = out_path(sc.config(), "sweep.csv");
  t.save(p);
  report(p);
  std::map<std::string, lgr::Series> by_group;
  std::vector<std::string> order;
  for (const auto& row : t.rows) {
    const std::string name = row[2] + (sc.config().beam_sigma.size() > 1 ? " (sigma=" + row[1] + ")" : "");
    if (!by_group.contains(name)) {
      order.push_back(name);
      by_group[name].name = name;
    }
    by_group[name].x.push_back(lgr::KeyValueFile::to_double("l", row[0]));
    by_group[name].y.push_back(lgr::KeyValueFile::to_double("rabi_kHz", row[5]));
  }
  std::vector<lgr::Series> series;
  for (const auto& n : order) series.push_back(by_group[n]);
  const auto svg = out_path(sc.config(), "sweep.svg");
  std::ofstream(svg, std::ios::binary) << lgr::svg_log_plot(series, "topological charge l", "Rabi frequency (kHz)");
  report(svg);
  return ok;
}

int cmd_wavefunction(const Overrides& o, const std::string& state, int stride) {
  lgr::Scenario sc(load_config(o, false));
  int n = sc.config().n, l = sc.config().l;
  lgr::HalfInt j = sc.config().j;
  if (!state.empty()) {
    const auto parts = lgr::detail::split_list(state);
    if (parts.size() != 3) throw lgr::ConfigError("--state", "expected n,l,j");
    n = lgr::KeyValueFile::to_int("--state", parts[0]);
    l = lgr::KeyValueFile::to_int("--state", parts[1]);
    j = lgr::HalfInt::from_twice(lgr::KeyValueFile::parse_twice_half("--state", parts[2]));
    if (l < 0 || l >= n || std::abs(j.twice() - 2 * l) != 1) throw lgr::ConfigError("--state", "need 0 <= l < n, j = l +- 1/2");
  }
  const auto t = lgr::run_wavefunction(sc, n, l, j, stride);
  const auto& st = sc.states().get(n, l, j);
  static constexpr const char* letters = "SPDFGHIK";
  const std::string name = std::to_string(n) + (l < 8 ? std::string(1, letters[l]) : "l" + std::to_string(l)) +
                           "_j" + std::to_string(j.twice()) + "-2";
  const auto p = out_path(sc.config(), "wavefunction_" + name + ".csv");
  t.save(p);
  report(p);
  const auto& d = st.diagnostics;
  std::cout << "energy_au=" << lgr::fmt(st.energy) << " nodes=" << d.nodes << " expected=" << (n - l - 1)
            << " stop_r_au=" << lgr::fmt(d.r_stop) << " stop_ratio=" << lgr::fmt(d.inner_ratio)
            << (d.node_mismatch ? " [node count mismatch]" : "") << (d.inner_divergence ? " [inner divergence]" : "")
            << (d.energy_fallback ? " [no quantum defect: hydrogenic energy]" : "") << '\n';
  return ok;
}

int cmd_verify() {
  bool all = true;
  for (const auto& r : lgr::run_all_suites()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  residual=" << lgr::fmt(r.residual)
              << "  tol=" << lgr::fmt(r.tolerance) << "  (" << r.detail << ")\n";
    all = all && r.passed;
  }
  return all ? ok : verification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LG-beam transitions of a trapped Rydberg atom"};
  app.require_subcommand(1);
  Overrides o;
  std::string state;
  int stride = 1;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "scenario file")->capture_default_str();
    sub->add_option("--out", o.out_dir, "output directory (overrides output.dir)");
    sub->add_option("--q-max", o.q_max, "Gaussian-factor truncation order");
    sub->add_option("--l", o.l_list, "topological charges, e.g. \"1,2,3,4\"");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv"}));
  };
  auto* channels = app.add_subcommand("channels", "enumerate transition channels");
  auto* rabi = app.add_subcommand("rabi", "per-channel matrix elements and Rabi frequencies");
  auto* sweep = app.add_subcommand("sweep", "Rabi frequency against topological charge (CSV + SVG)");
  auto* wave = app.add_subcommand("wavefunction", "dump a radial wavefunction");
  auto* verify = app.add_subcommand("verify", "run the self-check suites");
  for (auto* s : {channels, rabi, sweep, wave, verify}) common(s);
  wave->add_option("--state", state, "n,l,j (default: initial state)");
  wave->add_option("--stride", stride, "write every k-th grid point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config;
  }

  try {
    if (*channels) return cmd_channels(o);
    if (*rabi) return cmd_rabi(o);
    if (*sweep) return cmd_sweep(o);
    if (*wave) return cmd_wavefunction(o, state, stride);
    if (*verify) return cmd_verify();
  } catch (const lgr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return other;
  }
  return other;
}
