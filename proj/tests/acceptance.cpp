// Acceptance run: one PASS/FAIL line per criterion, followed by notes.
//
//   acceptance            exit 1 if any criterion fails
//   acceptance --report   always exit 0 (used under ctest)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lgr/coupling.hpp"
#include "lgr/scenario.hpp"
#include "lgr/verify.hpp"

using namespace lgr;

namespace {

// Reference Rabi frequencies (kHz) for l = 1, sigma = +1 from 60S_{1/2}(-1/2).
constexpr double ref_s_to_p = 607.0;
constexpr double ref_via_tc = 1.01;
constexpr double ref_via_gt = 1.01;
constexpr double ref_dm0 = 0.59;  // q = 1, (l1, l2, l3) = (0, 0, 1) to D_{5/2}(-1/2)

// Reference q = 0 channel rows: l, sigma, m1, M_f, final label.
struct RefRow {
  int l, sigma, m1, M_f;
  const char* final_state;
  bool consistent;  // false: the row contradicts the projection deltas
};
constexpr RefRow ref_rows[] = {
    {1, 1, 0, 1, "60P_{3/2}(+1/2)", true},     {1, 1, 1, 0, "60D_{5/2}(+3/2)", true},
    {1, -1, 0, -1, "60D_{5/2}(-3/2)", false},  {1, -1, 1, 0, "60D_{5/2}(-1/2)", true},
    {-1, 1, 0, 1, "60D_{5/2}(+1/2)", false},   {-1, 1, -1, 0, "60D_{5/2}(-1/2)", true},
    {-1, -1, 0, -1, "60P_{3/2}(-3/2)", true},  {-1, -1, -1, 0, "60D_{5/2}(-5/2)", true},
};

struct Verdict {
  bool pass = false;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const ChannelResult* pick(const std::vector<ChannelResult>& rs, int q, int l1, int l2, int l3, int l_f) {
  for (const auto& r : rs) {
    const auto& c = r.channel;
    if (c.q == q && c.l1 == l1 && c.l2 == l2 && c.l3 == l3 && c.final_state.l == l_f &&
        c.final_state.j.twice() == 2 * l_f + 1) {
      return &r;
    }
  }
  return nullptr;
}

ScenarioConfig default_config() { return ScenarioConfig::load(std::string(LGR_SOURCE_DIR) + "/configs/default.cfg"); }

std::vector<std::string> notes;

Verdict channel_table() {
  auto cfg = default_config();
  cfg.q_max = 0;
  bool ok = true;
  int matched = 0;
  std::ostringstream d;
  for (const auto& row : ref_rows) {
    const auto cs = enumerate_channels(cfg.beam(row.l, row.sigma, 0.0), cfg.initial(), cfg.cm_initial(), cfg.coupling);
    const Channel* hit = nullptr;
    for (const auto& c : cs) {
      if (c.m1 == row.m1 && c.final_state.l == (row.m1 == 0 ? 1 : 2)) hit = &c;
    }
    if (!row.consistent) {
      // Emitted per the deltas; record what comes out instead.
      for (const auto& c : cs) {
        if (c.m1 == row.m1) {
          notes.push_back("q=0 row (l=" + fmt(row.l) + ", sigma=" + fmt(row.sigma) + ", m1=" + fmt(row.m1) +
                          ") listed as " + row.final_state + " M_f=" + fmt(row.M_f) + "; the deltas give " +
                          c.final_state.str() + " M_f=" + fmt(c.M_f) + " [documented discrepancy]");
        }
      }
      continue;
    }
    if (hit && hit->final_state.str() == row.final_state && hit->M_f == row.M_f) {
      ++matched;
    } else {
      ok = false;
      d << " mismatch at (l=" << row.l << ", sigma=" << row.sigma << ", m1=" << row.m1 << ")";
    }
  }
  return {ok, std::to_string(matched) + "/6 consistent rows matched" + d.str()};
}

Verdict reference_frequencies(Scenario& sc) {
  const auto rs = sc.results(1, 1);
  const auto* sp = pick(rs, 0, 0, 0, 0, 1);
  const auto* tc = pick(rs, 0, 1, 0, 0, 2);
  const auto* gt = pick(rs, 1, 0, 1, 0, 2);
  const auto* dm0 = pick(rs, 1, 0, 0, 1, 2);
  if (!sp || !tc || !gt || !dm0) return {false, "reference channel missing"};
  const double r1 = tc->rabi_kHz / gt->rabi_kHz, r1_ref = ref_via_tc / ref_via_gt;
  const double r2 = dm0->rabi_kHz / tc->rabi_kHz, r2_ref = ref_dm0 / ref_via_tc;
  bool ok = rel(r1, r1_ref) <= 0.05 && rel(r2, r2_ref) <= 0.05;
  std::ostringstream d;
  d << "TC/GT=" << fmt(r1) << " (ref " << fmt(r1_ref) << "), dm0/TC=" << fmt(r2) << " (ref " << fmt(r2_ref) << ");";
  const std::pair<const ChannelResult*, double> abs_checks[] = {
      {sp, ref_s_to_p}, {tc, ref_via_tc}, {gt, ref_via_gt}, {dm0, ref_dm0}};
  for (const auto& [r, ref] : abs_checks) {
    ok = ok && rel(r->rabi_kHz, ref) <= 0.25;
    d << " " << fmt(r->rabi_kHz) << " vs " << fmt(ref) << ";";
  }
  d << " lambda audit " << fmt(sp->lambda_audit) << " (alpha=1), " << fmt(tc->lambda_audit) << " (alpha=2)";

  // Same quantities under the reciprocal normalization, for the record.
  auto cfg = sc.config();
  cfg.coupling.c_normalization = CNormalization::reciprocal;
  Scenario alt(cfg);
  const auto ra = alt.results(1, 1);
  const auto *asp = pick(ra, 0, 0, 0, 0, 1), *atc = pick(ra, 0, 1, 0, 0, 2), *agt = pick(ra, 1, 0, 1, 0, 2),
             *adm = pick(ra, 1, 0, 0, 1, 2);
  notes.push_back("reciprocal normalization (diagnostic): S->P " + fmt(asp->rabi_kHz) + ", TC " + fmt(atc->rabi_kHz) +
                  ", GT " + fmt(agt->rabi_kHz) + ", dm0 " + fmt(adm->rabi_kHz) + " kHz; TC/GT " +
                  fmt(atc->rabi_kHz / agt->rabi_kHz) + ", dm0/TC " + fmt(adm->rabi_kHz / atc->rabi_kHz));
  return {ok, d.str()};
}

Verdict mirror_pair(Scenario& sc) {
  const auto a = sc.results(-1, 1);
  const auto b = sc.results(1, -1);
  const auto* x = pick(a, 1, 0, 1, 0, 2);
  const auto* y = pick(b, 1, 0, 0, 1, 2);
  const auto* gt = pick(sc.results(1, 1), 1, 0, 1, 0, 2);
  if (!x || !y || !gt) return {false, "channel missing"};
  const double ma = std::abs(x->matrix_element), mb = std::abs(y->matrix_element), mg = std::abs(gt->matrix_element);
  const double sym = std::abs(ma - mb) / ma;
  const bool ok = sym <= 1e-10 && rel(ma, mg) <= 0.05 && rel(mb, mg) <= 0.05;
  notes.push_back("mirror pair finals: " + x->channel.final_state.str() + " M_f=" + fmt(x->channel.M_f) + " and " +
                  y->channel.final_state.str() + " M_f=" + fmt(y->channel.M_f) +
                  " (second listed as D_{5/2}(-3/2); the deltas give m_j=-5/2) [documented discrepancy]");
  std::ostringstream d;
  d << "pair " << fmt(x->rabi_kHz) << " / " << fmt(y->rabi_kHz) << " kHz, asymmetry " << fmt(sym)
    << "; vs via-GT " << fmt(gt->rabi_kHz) << " kHz: ratio " << fmt(ma / mg) << " (CM moment "
    << fmt(x->radial_cm) << " vs " << fmt(gt->radial_cm) << ")";
  return {ok, d.str()};
}

Verdict charge_trends(Scenario& sc) {
  std::vector<double> sp, tc, gt, total, agg;
  for (int l = 1; l <= 4; ++l) {
    const auto rs = sc.results(l, 1);
    for (const auto& row : sweep_rows(l, rs)) {
      if (row.group == "S->P") sp.push_back(row.rabi_kHz);
      if (row.group == "S->D via TC") tc.push_back(row.rabi_kHz);
      if (row.group == "S->D via GT") gt.push_back(row.rabi_kHz);
      if (row.group == "S->D total") total.push_back(row.rabi_kHz);
    }
    const auto aggregates = electronic_aggregates(rs);
    const ElectronicLabel d{60, 2, HalfInt::from_twice(5), HalfInt::from_twice(3)};
    agg.push_back(aggregates.contains(d) ? units::hartree_to_kHz(aggregates.at(d)) : 0.0);
  }
  if (sp.size() != 4 || tc.size() != 4 || gt.size() != 4 || total.size() != 4) return {false, "series incomplete"};
  auto strictly = [](const std::vector<double>& v, bool up) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1])) return false;
    }
    return true;
  };
  auto span = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  const double agg_var = span(agg) / *std::max_element(agg.begin(), agg.end());
  const bool ok = strictly(sp, true) && strictly(tc, false) && strictly(gt, true) && span(agg) < span(tc) &&
                  agg_var <= 0.5;
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : " ") + fmt(x);
    return s;
  };
  notes.push_back("S->D total (TC + GT coherent): " + list(total) + " kHz");
  return {ok, "S->P [" + list(sp) + "], TC [" + list(tc) + "], GT [" + list(gt) + "], D_{5/2}(+3/2) aggregate [" +
                  list(agg) + "] variation " + fmt(agg_var) + ", span " + fmt(span(agg)) + " vs TC span " +
                  fmt(span(tc))};
}

Verdict from_suites(std::initializer_list<SuiteResult> rs) {
  Verdict v{true, ""};
  for (const auto& r : rs) {
    v.pass = v.pass && r.passed;
    v.detail += (v.detail.empty() ? "" : "; ") + r.name + ": " + r.detail;
  }
  return v;
}

Verdict conservation() {
  auto cfg = default_config();
  Scenario sc(cfg);
  std::mt19937 rng(2024);
  auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
  int checked = 0, violations = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int l = draw(-3, 3), sigma = draw(-1, 1), l_i = draw(0, 2);
    const int tj = l_i == 0 ? 1 : 2 * l_i + (draw(0, 1) ? 1 : -1);
    const int tmj = 2 * draw(0, tj) - tj;
    const int M_i = draw(-2, 2);
    CouplingOptions opt = cfg.coupling;
    opt.fine_structure = FineStructureMode::spin_spectator;
    opt.final_j = FinalJPolicy::all;
    const BeamSpec beam = cfg.beam(l, sigma, sc.wavenumber());
    const ElectronicLabel init{60, l_i, HalfInt::from_twice(tj), HalfInt::from_twice(tmj)};
    const CMState cm{std::abs(M_i) + 2 * draw(0, 1), M_i, units::micrometre_to_au(cfg.w_r_um)};
    for (const auto& r : compute_channels(beam, init, cm, sc.states(), opt)) {
      if (r.closed) continue;
      ++checked;
      const auto& c = r.channel;
      const int lhs2 = (c.final_state.m_j - init.m_j).twice() + 2 * (c.M_f - M_i);
      if (lhs2 != 2 * (l + sigma)) ++violations;
    }
  }
  return {violations == 0 && checked > 0,
          std::to_string(checked) + " non-zero channels over 40 random configurations, " +
              std::to_string(violations) + " violations"};
}

}  // namespace

int main(int argc, char** argv) {
  const bool report = argc > 1 && std::strcmp(argv[1], "--report") == 0;
  auto cfg = default_config();
  Scenario sc(cfg);

  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"channel table at q=0", 1.0, channel_table},
      {"reference Rabi frequencies and ratios", 60.0, [&] { return reference_frequencies(sc); }},
      {"mirror pair", 60.0, [&] { return mirror_pair(sc); }},
      {"topological-charge trends", 300.0, [&] { return charge_trends(sc); }},
      {"hydrogen oracle", 10.0, [] { return from_suites({verify_hydrogen_suite()}); }},
      {"expansion identity and addition theorem", 10.0,
       [] { return from_suites({verify_expansion_suite(), verify_addition_suite()}); }},
      {"angular algebra", 30.0, [] { return from_suites({verify_gaunt_suite()}); }},
      {"CM suite", 5.0, [] { return from_suites({verify_cm_suite()}); }},
      {"angular-momentum conservation", 30.0, conservation},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > criteria[i].budget_s) {
      v.pass = false;
      v.detail += "; over time budget";
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].name << "  (" << fmt(dt)
              << " s)  " << v.detail << '\n';
  }
  for (const auto& n : notes) std::cout << "NOTE  " << n << '\n';
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return (report || failed == 0) ? 0 : 1;
}
