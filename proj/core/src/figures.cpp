#include "hfgrad/figures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hfgrad/analysis.hpp"
#include "hfgrad/error.hpp"
#include "hfgrad/io.hpp"

namespace hfgrad {

using nlohmann::json;

namespace {

Scenario base(const std::string& material, DeviceKind kind, int d, double q, double r0,
              double l, double nuclei, double gradient) {
  Scenario s;
  s.material_name = material;
  s.material = preset(material);
  s.geometry.kind = kind;
  s.geometry.dim = d;
  s.geometry.q = q;
  s.geometry.bohr_radius_nm = r0;
  s.geometry.spacing_nm = l;
  s.geometry.nuclei = nuclei;
  s.gradient_T_per_um = gradient;
  return s;
}

units::Quantity nev(double v) { return {v, units::Unit::NanoElectronVolt}; }

Scenario configured(Scenario s, Protocol p, StateKind k, Method m, double field_mT) {
  s.protocol = p;
  s.state.kind = k;
  s.method = m;
  s.field_mT = field_mT;
  return s;
}

Scenario timed(Scenario s, double t_max, int points) {
  s.time.t_max = t_max;
  s.time.points = points;
  s.time.spacing = Spacing::Linear;
  return s;
}

TimescaleReport report_of(const Scenario& s) { return timescale_report(report_inputs(s)); }

double require(const std::optional<double>& v, const char* what) {
  if (!v) throw Error(std::string("figure recipe: ") + what + " is undefined");
  return *v;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  v.back() = hi;
  return v;
}

std::string mt_label(double v) {
  std::ostringstream os;
  os << v << "mT";
  return os.str();
}

// fig4a: A ~ N^{5/6} keeps N^{5/6} gamma b / A fixed.
Scenario rescaled_donor(const Scenario& s, double nuclei) {
  Scenario r = s;
  double scale = std::pow(nuclei / s.geometry.nuclei, 5.0 / 6.0);
  r.hyperfine->value *= scale;
  r.geometry.nuclei = nuclei;
  return r;
}

constexpr int kCurvePoints = 200;
constexpr int kExactPoints = 60;

void fig2a(FigurePlan& p) {
  p.title = "GaAs single dot: narrowed-state FID gradient rate vs B";
  RateTable t;
  t.panel = "a";
  t.name = "rate_vs_B";
  t.columns = {"inv_T2_gradient_per_s"};
  t.devices = {configured(gaas_single_dot(), Protocol::FID, StateKind::Narrowed,
                         Method::MagnusGaussian, 0.0)};
  t.field_mT = log_grid(100.0, 10000.0, 41);
  t.field_mT.push_back(4000.0);
  std::sort(t.field_mT.begin(), t.field_mT.end());
  p.tables.push_back(t);
  p.notes.push_back("flip-flop and dipolar comparison curves are external data: pass them as "
                    "reference files to have them copied alongside");
}

void fig2b(FigurePlan& p, const FigureOptions& o) {
  p.title = "GaAs S-T0 qubit: thermal Hahn echo at B = 45 mT";
  Scenario s = configured(gaas_st0_qubit(), Protocol::HahnEcho, StateKind::Thermal,
                          Method::MagnusGaussian, 45.0);
  double t_max = 4.0 * require(report_of(s).t2e_gradient, "T2e");
  p.curves.push_back({"b", "gaussian", timed(s, t_max, kCurvePoints)});
  Scenario st = s;
  st.method = Method::ShortTime;
  p.curves.push_back({"b", "short_time", timed(st, t_max, kCurvePoints)});
  if (o.include_exact && o.allow_large) {
    Scenario ex = s;
    ex.method = Method::Exact;
    ex.allow_large = true;
    p.curves.push_back({"b", "exact", timed(ex, t_max, kExactPoints)});
  } else {
    p.notes.push_back("exact series skipped: N = 4.4e6 needs allow_large");
  }
}

void fig2c(FigurePlan& p) {
  p.title = "GaAs S-T0 qubit: thermal Hahn echo for several B";
  Scenario s = configured(gaas_st0_qubit(), Protocol::HahnEcho, StateKind::Thermal,
                          Method::MagnusGaussian, 45.0);
  double t_max = 10.0 * require(report_of(s).t2e_gradient, "T2e");
  for (double b : {45.0, 95.0, 195.0, 495.0}) {
    Scenario x = s;
    x.field_mT = b;
    p.curves.push_back({"c", "gaussian_B" + mt_label(b), timed(x, t_max, kCurvePoints)});
  }
}

void fig3a(FigurePlan& p) {
  p.title = "Si quantum dots: narrowed-state FID gradient rate vs B";
  RateTable t;
  t.panel = "a";
  t.name = "rate_vs_B";
  t.columns = {"single_dot_inv_T2_gradient_per_s", "double_dot_inv_T2_gradient_per_s"};
  t.devices = {configured(si_single_dot(), Protocol::FID, StateKind::Narrowed,
                          Method::MagnusGaussian, 0.0),
               configured(si_double_dot(), Protocol::FID, StateKind::Narrowed,
                          Method::MagnusGaussian, 0.0)};
  t.field_mT = log_grid(30.0, 10000.0, 41);
  p.tables.push_back(t);
}

void fig3b(FigurePlan& p, const FigureOptions& o) {
  p.title = "Si single dot: narrowed-state FID at B = 100 and 30 mT";
  for (double b : {100.0, 30.0}) {
    Scenario s = configured(si_single_dot(), Protocol::FID, StateKind::Narrowed,
                            Method::MagnusGaussian, b);
    double t_max = 3.0 * require(report_of(s).t2_gradient, "T2");
    p.curves.push_back({"b", "gaussian_B" + mt_label(b), timed(s, t_max, kCurvePoints)});
    if (o.include_exact) {
      s.method = Method::Exact;
      p.curves.push_back({"b", "exact_B" + mt_label(b), timed(s, t_max, kCurvePoints)});
    }
  }
}

void fig3c(FigurePlan& p, const FigureOptions& o) {
  p.title = "Si dots: thermal Hahn echo at B -> 0 (1 mT) for several Delta B^x";
  p.notes.push_back("B -> 0 is evaluated at B = 1 mT");
  for (double dbx : {20.0, 80.0, 400.0}) {
    Scenario single = configured(si_single_dot(), Protocol::HahnEcho, StateKind::Thermal,
                                 Method::MagnusGaussian, 1.0);
    single.gradient_T_per_um = dbx * 1e-3 / (single.geometry.bohr_radius_nm * 1e-3);
    Scenario dbl = configured(si_double_dot(), Protocol::HahnEcho, StateKind::Thermal,
                              Method::MagnusGaussian, 1.0);
    dbl.gradient_T_per_um = dbx * 1e-3 / (dbl.geometry.spacing_nm * 1e-3);
    TimescaleReport r = report_of(single);
    double slow = require(r.t2e_gradient, "T2e");
    if (r.t2_markov) slow = std::max(slow, *r.t2_markov);
    double t_max = 5.0 * slow;
    std::string tag = "_dBx" + mt_label(dbx);
    for (auto [dev, s] : {std::pair<std::string, Scenario>{"single", single}, {"double", dbl}}) {
      p.curves.push_back({"c", dev + "_gaussian" + tag, timed(s, t_max, kCurvePoints)});
      if (o.include_exact) {
        s.method = Method::Exact;
        p.curves.push_back({"c", dev + "_exact" + tag, timed(s, t_max, kExactPoints)});
      }
    }
  }
}

void fig4a(FigurePlan& p, const FigureOptions& o) {
  p.title = "Si:P donor: narrowed-state FID at B = 200 mT";
  Scenario s = configured(sip_donor(), Protocol::FID, StateKind::Narrowed,
                          Method::MagnusGaussian, 200.0);
  double t_max = 4.0 * require(report_of(s).t2_gradient, "T2");
  p.curves.push_back({"a", "gaussian_N250", timed(s, t_max, kCurvePoints)});
  Scenario ng = s;
  ng.method = Method::MagnusNonGaussian;
  p.curves.push_back({"a", "nongaussian_N250", timed(ng, t_max, kCurvePoints)});
  if (o.include_exact) {
    Scenario ex = s;
    ex.method = Method::Exact;
    p.curves.push_back({"a", "exact_N250", timed(ex, t_max, kCurvePoints)});
    for (double n : {125.0, 500.0, 2000.0}) {
      Scenario x = rescaled_donor(ex, n);
      std::string tag = "_N" + std::to_string(static_cast<int>(n));
      p.curves.push_back({"a", "exact" + tag, timed(x, t_max, kCurvePoints)});
      x.method = Method::MagnusGaussian;
      p.curves.push_back({"a", "gaussian" + tag, timed(x, t_max, kCurvePoints)});
    }
  }
}

void fig4b(FigurePlan& p, const FigureOptions& o) {
  p.title = "Si:P donor: thermal Hahn echo for several B";
  Scenario s = configured(sip_donor(), Protocol::HahnEcho, StateKind::Thermal,
                          Method::MagnusGaussian, 0.0);
  double t_max = 5.0 * require(report_of(s).t2e_gradient, "T2e");
  for (double b : {0.0, 10.0, 20.0, 100.0}) {
    Scenario x = s;
    x.field_mT = b;
    p.curves.push_back({"b", "gaussian_B" + mt_label(b), timed(x, t_max, kCurvePoints)});
    if (o.include_exact) {
      x.method = Method::Exact;
      p.curves.push_back({"b", "exact_B" + mt_label(b), timed(x, t_max, kExactPoints)});
    }
  }
}

std::string rate_table_csv(const RateTable& t) {
  std::ostringstream os;
  os << "B_mT,B_T";
  for (const auto& c : t.columns) os << ',' << c;
  os << '\n';
  for (double b : t.field_mT) {
    os << io::format_double(b) << ',' << io::format_double(b * 1e-3);
    for (std::size_t d = 0; d < t.devices.size(); ++d) {
      Scenario s = t.devices[d];
      s.field_mT = b;
      double rate = 1.0 / require(report_of(s).t2_gradient, "T2");
      os << ',' << io::format_double(rate);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace

Scenario gaas_single_dot() {
  return base("GaAs", DeviceKind::SingleDot, 2, 2.0, 40.0, 0.0, 1e6, 1.0);
}

Scenario gaas_st0_qubit() {
  Scenario s = base("GaAs", DeviceKind::DoubleDotST0, 2, 2.0, 25.0, 200.0, 4.4e6, 0.25);
  s.field_mT = 45.0;
  return s;
}

Scenario si_single_dot() {
  Scenario s = base("Si-natural", DeviceKind::SingleDot, 2, 2.0, 15.0, 0.0, 1e4, 1.0);
  s.hyperfine = nev(210.0);
  return s;
}

Scenario si_double_dot() {
  Scenario s = base("Si-natural", DeviceKind::DoubleDotDelocalized, 2, 2.0, 15.0, 80.0, 1e4, 1.0);
  s.hyperfine = nev(210.0);
  return s;
}

Scenario sip_donor() {
  Scenario s = base("Si:P", DeviceKind::SingleDot, 3, 1.0, 3.0, 0.0, 250.0, 1.0);
  s.hyperfine = nev(210.0);
  return s;
}

std::vector<std::string> figure_recipes() {
  return {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b"};
}

FigurePlan figure_plan(const std::string& recipe, const FigureOptions& o) {
  FigurePlan p;
  p.recipe = recipe;
  if (recipe == "fig2a") fig2a(p);
  else if (recipe == "fig2b") fig2b(p, o);
  else if (recipe == "fig2c") fig2c(p);
  else if (recipe == "fig3a") fig3a(p);
  else if (recipe == "fig3b") fig3b(p, o);
  else if (recipe == "fig3c") fig3c(p, o);
  else if (recipe == "fig4a") fig4a(p, o);
  else if (recipe == "fig4b") fig4b(p, o);
  else {
    std::string known;
    for (const auto& r : figure_recipes()) known += (known.empty() ? "" : ", ") + r;
    throw ConfigError("unknown figure recipe '" + recipe + "' (expected one of " + known + ")");
  }
  for (auto& c : p.curves) {
    c.scenario.seed = o.seed;
    auto problems = validate(c.scenario);
    if (!problems.empty()) throw Error("figure recipe " + recipe + ": " + problems.front());
  }
  return p;
}

json run_figure(const std::string& recipe, const std::filesystem::path& out,
                const FigureOptions& o) {
  FigurePlan plan = figure_plan(recipe, o);
  for (const auto& f : o.reference_files) {
    if (recipe != "fig2a") throw ConfigError("reference files are only accepted by fig2a");
    if (!std::filesystem::is_regular_file(f))
      throw ConfigError("reference file '" + f.string() + "' does not exist");
  }
  std::filesystem::create_directories(out);
  json m;
  m["tool"] = "hfgrad";
  m["recipe"] = recipe;
  m["title"] = plan.title;
  m["seed"] = o.seed;
  m["notes"] = plan.notes;
  m["curves"] = json::array();
  m["tables"] = json::array();
  m["reference_files"] = json::array();

  for (const auto& t : plan.tables) {
    std::string file = t.name + ".csv";
    io::write_text(out / file, rate_table_csv(t));
    json devices = json::array();
    for (const auto& d : t.devices) devices.push_back(to_json(d));
    m["tables"].push_back({{"panel", t.panel},
                           {"name", t.name},
                           {"file", file},
                           {"columns", t.columns},
                           {"devices", devices}});
  }

  RunOptions ro;
  ro.workers = o.workers;
  for (std::size_t i = 0; i < plan.curves.size(); ++i) {
    const FigureCurve& c = plan.curves[i];
    ScenarioResult r = run_scenario(c.scenario, ro);
    std::string file = c.name + ".csv";
    io::write_text(out / file, curve_csv(r.curve));
    json entry = r.manifest;
    entry["panel"] = c.panel;
    entry["name"] = c.name;
    entry["files"] = {file};
    m["curves"].push_back(entry);
  }

  for (const auto& f : o.reference_files) {
    auto dest = out / ("reference_" + f.filename().string());
    std::filesystem::copy_file(f, dest, std::filesystem::copy_options::overwrite_existing);
    m["reference_files"].push_back(dest.filename().string());
  }
  io::write_json(out / "manifest.json", m);
  return m;
}

}  // namespace hfgrad
