#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hfgrad/analysis.hpp"
#include "hfgrad/closed_forms.hpp"
#include "hfgrad/curve_fit.hpp"
#include "hfgrad/exact_engine.hpp"
#include "hfgrad/figures.hpp"
#include "hfgrad/magnus_fields.hpp"
#include "hfgrad/runner.hpp"
#include "hfgrad/scenario.hpp"
#include "hfgrad/units.hpp"
#include "oracles.hpp"

using namespace hfgrad;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& line) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok   " : "miss ") + line);
  }
  void note(const std::string& line) { lines.push_back("     " + line); }
};

bool within(double value, double target, double rel) {
  return std::isfinite(value) && std::abs(value / target - 1.0) <= rel;
}

TimescaleReport report_of(const Scenario& s) { return timescale_report(report_inputs(s)); }

Scenario with(Scenario s, Protocol p, StateKind k, Method m, double field_mT) {
  s.protocol = p;
  s.state.kind = k;
  s.method = m;
  s.field_mT = field_mT;
  return s;
}

Scenario timed(Scenario s, double t_max, int points) {
  s.time.t_max = t_max;
  s.time.t_min = 0.0;
  s.time.points = points;
  s.time.spacing = Spacing::Linear;
  return s;
}

double max_abs_gap(const CoherenceCurve& a, const CoherenceCurve& b) {
  auto ma = a.magnitude(), mb = b.magnitude();
  double d = 0.0;
  for (std::size_t i = 0; i < ma.size(); ++i) d = std::max(d, std::abs(ma[i] - mb[i]));
  return d;
}

double max_diff(const CoherenceCurve& a, const CoherenceCurve& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.value[i] - b.value[i]));
  return d;
}

SiteTable random_bath(std::mt19937_64& g, int K) {
  SiteTable t;
  for (int k = 0; k < K; ++k)
    t.push_back(oracle::uniform(g, -2.0, 2.0), oracle::uniform(g, -1.5, 1.5), 0.0, 0.0, -1, 0.5,
                oracle::uniform(g, 0.2, 0.7));
  return t;
}

std::vector<double> linear_grid(int n, double t_max) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
  return t;
}

Outcome oracle_equivalence() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 g(20240611);
  double worst = 0.0;
  int sets = 20;
  for (int set = 0; set < sets; ++set) {
    int K = 1 + set % 6;
    SiteTable sites = random_bath(g, K);
    double b = oracle::uniform(g, 0.0, 2.0);
    std::vector<double> times = linear_grid(50, 12.0);
    BathState narrowed = sample_narrowed(sites, 1000 + set);
    BathState thermal = sample_thermal(sites, 2, 2000 + set);
    for (const BathState* st : {&narrowed, &thermal}) {
      worst = std::max(worst, max_diff(fid_exact(sites, *st, b, times),
                                       brute_force_oracle(sites, *st, b, Protocol::FID, times)));
      worst = std::max(worst, max_diff(hahn_exact(sites, *st, b, times),
                                       brute_force_oracle(sites, *st, b, Protocol::HahnEcho, times)));
    }
  }
  double dt = seconds_since(t0);
  o.check(worst < 1e-10, fmt("max |C_product - C_dense| = %.2e over %d sets, FID and HE, narrowed "
                             "and thermal (limit 1e-10)", worst, sets));
  o.check(dt < 60.0, fmt("runtime %.2f s (limit 60 s)", dt));
  return o;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double dist3(const Vec3& a, const Vec3& b) {
  return norm3({a[0] - b[0], a[1] - b[1], a[2] - b[2]});
}

Outcome magnus_quadrature() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 g(31337);
  double worst_fid = 0.0, worst_he = 0.0;
  for (int set = 0; set < 100; ++set) {
    double A = oracle::uniform(g, -3.0, 3.0);
    double gyro = oracle::uniform(g, 0.05, 2.0);
    double b = oracle::uniform(g, 0.0, 3.0);
    double bx = oracle::uniform(g, -3.0, 3.0);
    double omega = gyro * std::hypot(b, bx);
    double t = std::pow(10.0, oracle::uniform(g, -3.0, 1.5)) / omega;
    Vec3 h = fid_field(A, bx, gyro, b, t);
    Vec3 hq = oracle::fid_field_quadrature(A, bx, gyro, b, t);
    Vec3 e = hahn_field(A, bx, gyro, b, t);
    Vec3 eq = oracle::hahn_field_quadrature(A, bx, gyro, b, t);
    double echo_scale = 4.0 * std::abs(A * gyro * bx) / (omega * omega);
    worst_fid = std::max(worst_fid, dist3(h, hq) / (norm3(hq) + 1e-14 * std::abs(A) * t));
    worst_he = std::max(worst_he, dist3(e, eq) / (norm3(eq) + 1e-12 * echo_scale));
  }
  double dt = seconds_since(t0);
  o.check(worst_fid < 1e-10, fmt("FID field max relative error %.2e (limit 1e-10)", worst_fid));
  o.check(worst_he < 1e-10,
          fmt("echo field max relative error %.2e (limit 1e-10; floor 1e-12 of the field scale "
              "4|A gamma b^x|/omega^2 at exact revivals)", worst_he));
  o.check(dt < 60.0, fmt("runtime %.2f s over 100 sets, omega t in [1e-3, 30] (limit 60 s)", dt));
  return o;
}

Outcome gaas_st_echo() {
  Outcome o;
  Scenario s = with(gaas_st0_qubit(), Protocol::HahnEcho, StateKind::Thermal,
                    Method::MagnusGaussian, 45.0);
  double t2e = report_of(s).t2e_gradient.value_or(NAN);
  o.check(within(t2e, 116e-9, 0.05), fmt("T2e = %.1f ns (target 116 ns +-5%%)", t2e * 1e9));
  s = timed(s, 4.0 * t2e, 400);
  auto gauss = run_scenario(s);
  s.method = Method::ShortTime;
  auto st = run_scenario(s);
  auto eg = fit::one_over_e_time(gauss.curve.tau, gauss.curve.magnitude());
  auto es = fit::one_over_e_time(st.curve.tau, st.curve.magnitude());
  bool ok = eg && es && within(*eg, *es, 0.10);
  o.check(ok, fmt("1/e point: Gaussian %.1f ns, short-time %.1f ns, ratio %.4f (limit +-10%%)",
                  eg.value_or(NAN) * 1e9, es.value_or(NAN) * 1e9,
                  eg.value_or(NAN) / es.value_or(NAN)));
  return o;
}

Outcome critical_fields() {
  Outcome o;
  Scenario dd = gaas_st0_qubit();
  dd.geometry.kind = DeviceKind::DoubleDotDelocalized;
  dd.gradient_T_per_um = 1.0;
  Scenario sd = dd;
  sd.geometry.kind = DeviceKind::SingleDot;
  sd.geometry.spacing_nm = 0.0;
  struct Row {
    const char* name;
    Scenario s;
    double target_mT;
  };
  for (const Row& r : {Row{"GaAs double dot, 1 T/um", dd, 300.0},
                       Row{"GaAs single dot, 1 T/um", sd, 200.0},
                       Row{"GaAs S-T0, 0.25 T/um", gaas_st0_qubit(), 225.0},
                       Row{"Si:P donor, 1 T/um", sip_donor(), 19.0}}) {
    double bc = report_of(r.s).critical_field_tesla.value_or(NAN) * 1e3;
    o.check(within(bc, r.target_mT, 0.10),
            fmt("%s: B_c = %.1f mT (target %.0f mT +-10%%)", r.name, bc, r.target_mT));
  }
  o.note("GaAs devices: r0 = 25 nm, l = 200 nm, N = 4.4e6, aggregate species");
  return o;
}

Outcome donor_breakdown() {
  Outcome o;
  Scenario s = with(sip_donor(), Protocol::FID, StateKind::Narrowed, Method::MagnusGaussian,
                    200.0);
  double t2 = report_of(s).t2_gradient.value_or(NAN);
  o.check(within(t2, 65e-6, 0.10), fmt("(a) T2 = %.2f us (target 65 us +-10%%)", t2 * 1e6));

  FigureOptions fo;
  FigurePlan plan = figure_plan("fig4a", fo);
  auto curve = [&](const std::string& name) -> const Scenario& {
    for (const auto& c : plan.curves)
      if (c.name == name) return c.scenario;
    throw std::runtime_error("fig4a has no series " + name);
  };

  auto exact = run_scenario(curve("exact_N250"));
  auto tail = fit::tail_fit(exact.curve.tau, exact.curve.magnitude(), 2.0 * t2, 4.0 * t2);
  o.check(tail && tail->exponent >= 0.8 && tail->exponent <= 1.2,
          fmt("(b) exact tail ln|C| = c - k t^p on [2 T2, 4 T2]: p = %.3f (limit [0.8, 1.2]), "
              "rms %.1e over %zu points",
              tail ? tail->exponent : NAN, tail ? tail->rms : NAN, tail ? tail->points : 0));
  auto ng = run_scenario(curve("nongaussian_N250"));
  double dng = max_abs_gap(ng.curve, exact.curve);
  o.check(dng < 0.01, fmt("(c) max ||C_nongaussian| - |C_exact|| = %.2e (limit 0.01)", dng));

  std::vector<double> gaps;
  double slowest = 0.0;
  std::string list;
  for (int n : {125, 250, 500, 2000}) {
    std::string tag = "_N" + std::to_string(n);
    auto t0 = Clock::now();
    auto ex = n == 250 ? exact : run_scenario(curve("exact" + tag));
    double dt = seconds_since(t0);
    if (n == 2000) slowest = dt;
    auto ga = run_scenario(curve("gaussian" + tag));
    gaps.push_back(max_abs_gap(ga.curve, ex.curve));
    list += fmt("%sN = %d: %.4f", list.empty() ? "" : ", ", n, gaps.back());
  }
  bool mono = std::is_sorted(gaps.rbegin(), gaps.rend()) &&
              std::adjacent_find(gaps.begin(), gaps.end()) == gaps.end();
  o.check(mono, "(d) max Gaussian-vs-exact gap decreases with N (A ~ N^{5/6}): " + list);
  o.check(slowest < 300.0, fmt("(d) exact N = 2000 run, 200 points: %.1f s (limit 300 s)", slowest));
  return o;
}

Outcome markov_crossover() {
  Outcome o;
  Scenario s = with(si_single_dot(), Protocol::HahnEcho, StateKind::Thermal,
                    Method::MagnusGaussian, 1.0);
  // 5 T2M must stay below 1/(gamma b) for the 1 mT floor not to cut the linear regime.
  double dbx_mT = 100.0;
  s.gradient_T_per_um = dbx_mT * 1e-3 / (s.geometry.bohr_radius_nm * 1e-3);
  s.bath_model = BathModel::Quadrature;
  s.quadrature = QuadratureOrder{48, 4096};
  TimescaleReport r = report_of(s);
  double t2m = r.t2_markov.value_or(NAN);
  double gdb = std::abs(s.effective_species().gyro(s.g_factor())) * s.delta_bx();
  double lo = 1.0 / gdb, hi = 5.0 * t2m;
  s = timed(s, 2.0 * hi * 1.01, 400);
  auto res = run_scenario(s);
  auto line = fit::log_linear(res.curve.pulse, res.curve.magnitude(), lo, hi);
  double rate = line ? -line->slope : NAN;
  o.check(within(rate, 1.0 / t2m, 0.10),
          fmt("Si dot, B = 1 mT, dBx = %.0f mT: fitted rate %.4e /s vs 1/T2M = %.4e /s on pulse "
              "time [%.2e, %.2e] s, ratio %.4f (limit +-10%%)",
              dbx_mT, rate, 1.0 / t2m, lo, hi, rate * t2m));

  Scenario si = si_single_dot();
  si.hyperfine.reset();
  double si_mT = report_of(si).markov_gradient_tesla.value_or(NAN) * 1e3;
  o.check(within(si_mT, 20.0, 0.10),
          fmt("Si dot (aggregate species, N = 1e4): dBx_M = %.2f mT (target 20 mT +-10%%)", si_mT));
  for (double n : {4.4e6, 1e6}) {
    Scenario ga = gaas_single_dot();
    ga.geometry.nuclei = n;
    double t = report_of(ga).markov_gradient_tesla.value_or(NAN);
    o.check(within(t, 2.0, 0.10),
            fmt("GaAs dot (aggregate species, N = %.1e): dBx_M = %.3f T (target 2 T +-10%%)", n, t));
  }
  return o;
}

Outcome double_dot_plateau() {
  Outcome o;
  double dbx = 0.4;
  Scenario dd = with(si_double_dot(), Protocol::HahnEcho, StateKind::Thermal,
                     Method::MagnusGaussian, 0.0);
  dd.gradient_T_per_um = dbx / (dd.geometry.spacing_nm * 1e-3);
  dd.bath_model = BathModel::Quadrature;
  dd.quadrature = QuadratureOrder{48, 4096};
  Scenario sd = with(si_single_dot(), Protocol::HahnEcho, StateKind::Thermal,
                     Method::MagnusGaussian, 0.0);
  sd.gradient_T_per_um = dbx / (sd.geometry.bohr_radius_nm * 1e-3);
  sd.bath_model = BathModel::Quadrature;
  sd.quadrature = QuadratureOrder{48, 4096};
  TimescaleReport rs = report_of(sd);
  double t_end = 2.0 * 20.0 * rs.t2_markov.value_or(NAN);
  dd = timed(dd, t_end, 400);
  sd = timed(sd, t_end, 400);
  auto cd = run_scenario(dd);
  auto cs = run_scenario(sd);
  auto md = cd.curve.magnitude(), ms = cs.curve.magnitude();
  double drift = fit::final_decade_drift(cd.curve.tau, md);
  double level = fit::plateau_level(md);
  o.check(drift < 0.01 && level > 0.0,
          fmt("double dot (l = 80 nm): plateau |C| = %.4f, drift over the final decade %.2e "
              "(limit 1e-2), tau up to %.2e s", level, drift, t_end));
  double t2m = rs.t2_markov.value_or(NAN);
  auto tail = fit::tail_fit(cs.curve.pulse, ms, 2.0 * t2m, 6.0 * t2m);
  bool decays = tail && tail->exponent >= 0.8 && tail->exponent <= 1.2 &&
                ms.back() < 0.01 * level;
  o.check(decays, fmt("single dot: tail exponent %.3f on pulse time [2, 6] T2M, final |C| = %.2e",
                      tail ? tail->exponent : NAN, ms.back()));
  return o;
}

SpeciesTerm table_one(const char* material) {
  return BathComposition::effective(preset(material)).single();
}

Outcome validity_tables() {
  Outcome o;
  struct BminRow {
    const char* material;
    double nuclei, g, target_mT;
  };
  for (const BminRow& r : {BminRow{"GaAs", 4.4e6, 0, 50.0}, BminRow{"Si-natural", 1e4, 0, 0.3},
                           BminRow{"Si:P", 250.0, 0, 60.0}}) {
    MaterialPreset m = preset(r.material);
    MagnusValidity v = magnus_validity(table_one(r.material), r.nuclei, 0.0, 0.0);
    double mT = units::field_from_zeeman(v.b_min, m.g_factor) * 1e3;
    // One significant figure: the quoted value must be the rounding of ours.
    double mag = std::pow(10.0, std::floor(std::log10(r.target_mT)));
    bool ok = std::abs(mT - r.target_mT) <= 0.5 * mag;
    o.check(ok, fmt("B_min %s (N = %g): %.3g mT (quoted %.1f mT)", r.material, r.nuclei, mT,
                    r.target_mT));
  }

  struct TcritRow {
    const char* material;
    double nuclei, field_mT, device_bx_mT, target_s;
  };
  const TcritRow rows[] = {
      {"GaAs", 4.4e6, 0.0, 25.0, 800e-9},   {"GaAs", 4.4e6, 0.0, 100.0, 1.2e-6},
      {"GaAs", 4.4e6, 0.0, 200.0, 1.5e-6},  {"Si-natural", 1e4, 0.0, 20.0, 4.5e-6},
      {"Si-natural", 1e4, 0.0, 80.0, 7.5e-6}, {"Si-natural", 1e4, 0.0, 400.0, 13e-6},
      {"GaAs", 4.4e6, 200.0, 50.0, 1.5e-6}, {"GaAs", 4.4e6, 295.0, 50.0, 3e-6},
      {"GaAs", 4.4e6, 695.0, 50.0, 12e-6},  {"Si:P", 250.0, 10.0, 3.0, 0.5e-6},
      {"Si:P", 250.0, 20.0, 3.0, 1.5e-6},   {"Si:P", 250.0, 100.0, 3.0, 20e-6}};
  for (const TcritRow& r : rows) {
    double g = preset(r.material).g_factor;
    MagnusValidity v = magnus_validity(table_one(r.material), r.nuclei,
                                       units::electron_zeeman(r.field_mT * 1e-3, g),
                                       units::electron_zeeman(r.device_bx_mT * 1e-3, g));
    double ratio = v.t_crit / r.target_s;
    o.check(ratio >= 1.0 / 3.0 && ratio <= 3.0,
            fmt("t_crit %s B = %g mT, dBx = %g mT: %.3g s (quoted %.2g s, ratio %.2f, limit "
                "factor 3)", r.material, r.field_mT, r.device_bx_mT, v.t_crit, r.target_s, ratio));
  }
  return o;
}

Outcome trivial_limits() {
  Outcome o;
  Scenario base = si_single_dot();
  base.geometry.nuclei = 400.0;
  base.field_mT = 5.0;
  base.state.realizations = 16;

  // Zero gradient.
  {
    Scenario s = base;
    s.gradient_T_per_um = 0.0;
    s.protocol = Protocol::HahnEcho;
    s.state.kind = StateKind::Thermal;
    double t2e_ref = report_of(base).t2e_gradient.value_or(1e-6);
    s = timed(s, 10.0 * t2e_ref, 60);
    bool exact_one = true;
    for (Method m : {Method::Exact, Method::MagnusGaussian, Method::ShortTime}) {
      s.method = m;
      for (auto c : run_scenario(s).curve.value) exact_one = exact_one && c == 1.0;
    }
    o.check(exact_one, "gradient = 0: Hahn echo C = 1 exactly (exact, Gaussian, short-time)");
    s.protocol = Protocol::FID;
    s.state.kind = StateKind::Narrowed;
    double worst = 0.0;
    for (Method m : {Method::Exact, Method::MagnusGaussian, Method::MagnusNonGaussian}) {
      s.method = m;
      for (auto c : run_scenario(s).curve.value) worst = std::max(worst, std::abs(std::abs(c) - 1));
    }
    o.check(worst <= 1e-14,
            fmt("gradient = 0: narrowed FID ||C| - 1| <= %.1e (rounding only, limit 1e-14)", worst));
  }

  // C(0) = 1 for every method, and |C| <= 1.
  {
    bool at_zero = true;
    double excess = 0.0;
    Scenario s = timed(base, 20e-6, 40);
    for (Protocol p : {Protocol::FID, Protocol::HahnEcho})
      for (StateKind k : {StateKind::Narrowed, StateKind::Thermal})
        for (Method m : {Method::Exact, Method::MagnusGaussian, Method::MagnusNonGaussian,
                         Method::ShortTime}) {
          Scenario x = with(s, p, k, m, s.field_mT);
          if (!validate(x).empty()) continue;
          auto c = run_scenario(x).curve;
          at_zero = at_zero && c.value[0] == 1.0;
          for (auto v : c.value) excess = std::max(excess, std::abs(v) - 1.0);
        }
    o.check(at_zero, "C(0) = 1 for every valid protocol, state and method");
    o.check(excess <= 1e-14, fmt("|C| <= 1 on every curve (max excess %.1e)", excess));
  }

  // Unitarity of the per-site evolution.
  {
    double worst = 0.0;
    std::mt19937_64 g(5);
    for (int i = 0; i < 50; ++i) {
      double I = 0.5 * (1 + i % 9);
      auto op = site_operators(oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2),
                               oracle::uniform(g, 0.01, 1), oracle::uniform(g, 0, 2), I);
      auto n = op.rot_up.rows();
      Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      for (const Eigen::MatrixXd* m : {&op.rot_up, &op.rot_down, &op.rel_up, &op.rel_down})
        worst = std::max(worst, (m->transpose() * *m - id).norm());
      Eigen::VectorXcd ph = op.phases_up(7.3);
      worst = std::max(worst, (ph.cwiseAbs() - Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff());
    }
    o.check(worst < 1e-12,
            fmt("site rotations orthogonal and phases unimodular, I = 1/2 .. 9/2: %.1e", worst));
  }

  // Coupling normalization: d = 2, q = 2 single-dot couplings are A e^{-k/N} / N,
  // whose truncated sum is a geometric series.
  {
    double worst = 0.0;
    for (double N : {50.0, 1e3, 1e4}) {
      DeviceGeometry geom;
      geom.nuclei = N;
      geom.bohr_radius_nm = 10.0;
      double A = 3.7e6;
      SiteTable t = generate_sites(geom, A, 0.0, 0.5, 0.0, 1);
      double sum = 0.0;
      for (double a : t.coupling) sum += a;
      double K = static_cast<double>(t.size());
      double expected = A / N * -std::expm1(-K / N) / -std::expm1(-1.0 / N);
      worst = std::max(worst, std::abs(sum / expected - 1.0));
      o.note(fmt("N = %g: %zu sites, sum A_k / A = %.12f", N, t.size(), sum / A));
    }
    o.check(worst < 1e-12, fmt("sum_k A_k matches its closed form to %.1e", worst));
  }

  // (1/T2) gamma b = 1/T2e^2 for a homonuclear bath.
  {
    double worst = 0.0;
    for (Scenario s : {si_single_dot(), sip_donor(), gaas_single_dot()})
      for (double b_mT : {10.0, 200.0, 3000.0}) {
        s.field_mT = b_mT;
        TimescaleReport r = report_of(s);
        double gb = std::abs(s.effective_species().gyro(s.g_factor())) * s.zeeman();
        double lhs = gb / *r.t2_gradient;
        double rhs = 1.0 / (*r.t2e_gradient * *r.t2e_gradient);
        worst = std::max(worst, std::abs(lhs / rhs - 1.0));
      }
    o.check(worst < 1e-12, fmt("(1/T2) gamma b = 1/T2e^2: max relative deviation %.1e", worst));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"oracle equivalence: per-site products vs dense evolution", oracle_equivalence},
      {"Magnus fields vs quadrature of the precessing trajectory", magnus_quadrature},
      {"GaAs S-T0 Hahn echo: T2e and short-time 1/e point", gaas_st_echo},
      {"motional-averaging thresholds B_c", critical_fields},
      {"Si:P finite-size breakdown", donor_breakdown},
      {"Markovian crossover", markov_crossover},
      {"double-dot motional plateau", double_dot_plateau},
      {"validity tables: B_min and t_crit", validity_tables},
      {"trivial limits", trivial_limits},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.lines.push_back(std::string("error: ") + e.what());
    }
    failed += r.pass ? 0 : 1;
    std::cout << (r.pass ? "PASS " : "FAIL ") << c.name << fmt("  (%.1f s)", seconds_since(t0))
              << '\n';
    for (const auto& l : r.lines) std::cout << "    " << l << '\n';
    std::cout.flush();
  }
  std::cout << (std::size(criteria) - failed) << "/" << std::size(criteria) << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
