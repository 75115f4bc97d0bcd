#include "hfgrad/runner.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "hfgrad/bath_states.hpp"
#include "hfgrad/closed_forms.hpp"
#include "hfgrad/error.hpp"
#include "hfgrad/exact_engine.hpp"
#include "hfgrad/io.hpp"
#include "hfgrad/magnus_fields.hpp"
#include "hfgrad/parallel.hpp"

#ifndef HFGRAD_VERSION
#define HFGRAD_VERSION "0.0.0"
#endif

namespace hfgrad {

using nlohmann::json;

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

void append(SiteTable& dst, const SiteTable& src, int species, double weight_scale) {
  for (std::size_t k = 0; k < src.size(); ++k)
    dst.push_back(src.coupling[k], src.transverse[k], src.theta[k], src.phi[k], species,
                  src.spin[k], src.gyro[k], src.weight[k] * weight_scale);
}

CoherenceCurve run_exact(const Scenario& s, const SiteTable& sites,
                         const std::vector<double>& times, unsigned workers, std::size_t& M) {
  EngineOptions eo;
  eo.frame = s.frame;
  eo.workers = workers;
  double b = s.zeeman();
  if (s.state.kind == StateKind::Narrowed) {
    M = 1;
    BathState st = sample_narrowed(sites, s.seed);
    return s.protocol == Protocol::FID ? fid_exact(sites, st, b, times, eo)
                                       : hahn_exact(sites, st, b, times, eo);
  }
  if (s.state.realizations > 0) {
    M = s.state.realizations;
    BathState st = sample_thermal(sites, M, s.seed);
    return s.protocol == Protocol::FID ? fid_exact(sites, st, b, times, eo)
                                       : hahn_exact(sites, st, b, times, eo);
  }
  // Realizations are a pure function of (seed, j), so growing M reuses the
  // earlier ones unchanged.
  ThermalEnsemble ens = sample_thermal(sites, 1, s.seed);
  RealizationSum sum = [&](std::size_t first, std::size_t last) {
    ThermalEnsemble e = ens;
    e.realizations = last;
    return exact_realization_sum(sites, e, b, s.protocol, times, first, last, eo);
  };
  ConvergenceOptions co;
  co.tolerance = s.state.tolerance;
  co.cap = s.state.cap;
  ConvergedEnsemble r = converge_ensemble(sum, co);
  M = r.realizations;
  CoherenceCurve c = make_curve(s.protocol, s.frame, "exact", times);
  c.value = std::move(r.value);
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] == 0.0) c.value[i] = 1.0;
  c.metadata["sites"] = sites.size();
  c.metadata["realizations"] = M;
  c.metadata["converged_tolerance"] = s.state.tolerance;
  return c;
}

}  // namespace

BathComposition composition_of(const Scenario& s) {
  if (s.composition == Composition::Isotopes) return BathComposition::isotopes(s.material);
  return BathComposition::effective(s.material, s.hyperfine ? s.hyperfine->angular() : 0.0);
}

SpeciesTerm aggregate_of(const Scenario& s) {
  return BathComposition::effective(s.material, s.hyperfine ? s.hyperfine->angular() : 0.0)
      .single();
}

ReportInputs report_inputs(const Scenario& s) {
  ReportInputs in;
  in.bath = composition_of(s);
  in.aggregate = aggregate_of(s);
  in.geom = s.geometry;
  in.zeeman = s.zeeman();
  in.delta_bx = s.delta_bx();
  in.device_bx = s.device_bx();
  in.correlation_time = s.correlation_time_s;
  return in;
}

SiteTable build_sites(const Scenario& s) {
  const DeviceGeometry& g = s.geometry;
  double db = s.delta_bx();
  double gf = s.g_factor();
  BathModel model = s.resolved_bath_model();
  if (s.composition == Composition::Effective) {
    NuclearSpecies e = s.effective_species();
    if (model == BathModel::Quadrature)
      return quadrature_sites(g, e.hyperfine, db, e.spin, e.gyro(gf), s.quadrature);
    return generate_sites(g, e.hyperfine, db, e.spin, e.gyro(gf), s.seed);
  }
  if (model == BathModel::Quadrature) {
    SiteTable t;
    for (std::size_t i = 0; i < s.material.species.size(); ++i) {
      const auto& sp = s.material.species[i];
      append(t, quadrature_sites(g, sp.hyperfine, db, sp.spin, sp.gyro(gf), s.quadrature),
             static_cast<int>(i), sp.abundance);
    }
    return t;
  }
  SiteTable shape = generate_sites(g, 1.0, db, 0.5, 0.0, s.seed);
  return assign_species(shape, s.material, s.seed);
}

std::vector<std::string> scenario_warnings(const Scenario& s, const TimescaleReport& report) {
  std::vector<std::string> w;
  bool magnus = s.method != Method::Exact;
  double t_end = s.time.t_max;
  if (magnus && report.magnus && std::isfinite(report.magnus->t_crit) &&
      t_end > report.magnus->t_crit)
    w.push_back("t_max = " + sci(t_end) + " s exceeds the Magnus validity time t_crit ~ " +
                sci(report.magnus->t_crit) + " s (order of magnitude)");
  if (magnus && s.protocol == Protocol::FID && s.state.kind == StateKind::Narrowed &&
      report.magnus && s.zeeman() < report.magnus->b_min && s.delta_bx() > 0.0)
    w.push_back("B = " + sci(s.field_mT) + " mT is below B_min ~ " +
                sci(*report.b_min_tesla * 1e3) + " mT: the leading Magnus order may fail");
  bool gaussian = s.method == Method::MagnusGaussian || s.method == Method::ShortTime;
  if (gaussian && report.gaussian && report.gaussian->marginal && s.delta_bx() > 0.0)
    w.push_back("N^(1/4) = " + sci(report.gaussian->ratio_fid) +
                " is marginal: non-Gaussian corrections may be visible");
  if (report.leakage && report.leakage->plateau > 0.01)
    w.push_back("singlet-triplet leakage plateau ~ " + sci(report.leakage->plateau) +
                " (Delta b^x / b)^2 is not small");
  return w;
}

ScenarioResult run_scenario(const Scenario& s, const RunOptions& opts) {
  auto problems = validate(s);
  if (!problems.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& e : problems) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  auto start = std::chrono::steady_clock::now();
  unsigned workers = worker_count(opts.workers);
  ScenarioResult r;
  r.report = timescale_report(report_inputs(s));
  r.warnings = scenario_warnings(s, r.report);

  SiteTable sites = build_sites(s);
  std::vector<double> times = s.evaluation_times();
  std::size_t M = 0;
  EffectiveField field(s.protocol, s.zeeman());
  switch (s.method) {
    case Method::Exact: r.curve = run_exact(s, sites, times, workers, M); break;
    case Method::MagnusGaussian:
      if (s.state.kind == StateKind::Narrowed) {
        M = 1;
        r.curve = narrowed_gaussian(sites, sample_narrowed(sites, s.seed), field, times, s.frame,
                                    workers);
      } else {
        r.curve = thermal_gaussian(sites, field, times, s.frame, workers);
      }
      break;
    case Method::MagnusNonGaussian:
      M = 1;
      r.curve = nongaussian_half_spin(sites, sample_narrowed(sites, s.seed), field, times,
                                      s.frame, workers);
      break;
    case Method::ShortTime: r.curve = hahn_short_time(sites, times); break;
  }
  double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json& m = r.manifest;
  m["tool"] = "hfgrad";
  m["version"] = HFGRAD_VERSION;
  m["config"] = to_json(s);
  NuclearSpecies e = s.effective_species();
  m["derived"] = {{"g_factor", s.g_factor()},
                  {"zeeman_rad_s", s.zeeman()},
                  {"delta_bx_rad_s", s.delta_bx()},
                  {"device_bx_rad_s", s.device_bx()},
                  {"effective_hyperfine_rad_s", e.hyperfine},
                  {"effective_gyro", e.gyro(s.g_factor())},
                  {"eta", s.geometry.eta()},
                  {"bath_model", to_string(s.resolved_bath_model())},
                  {"gradient_axis", s.geometry.dim == 1 ? "alternating parity"
                                                        : "polar axis, c_k = cos(theta_k)"},
                  {"time_axis", s.protocol == Protocol::HahnEcho ? "tau = 2 t_pulse" : "tau"}};
  m["sites"] = sites.size();
  m["realizations"] = M;
  m["wall_time_s"] = wall;
  m["workers"] = workers;
  m["warnings"] = r.warnings;
  m["report"] = to_json(r.report, s.g_factor());
  m["curve"] = {{"protocol", to_string(r.curve.protocol)},
                {"frame", to_string(r.curve.frame)},
                {"method", r.curve.method},
                {"metadata", r.curve.metadata}};
  m["files"] = {"curve.csv"};
  return r;
}

void write_result(const ScenarioResult& r, const std::filesystem::path& dir) {
  io::write_text(dir / "curve.csv", curve_csv(r.curve));
  io::write_json(dir / "manifest.json", r.manifest);
}

}  // namespace hfgrad
