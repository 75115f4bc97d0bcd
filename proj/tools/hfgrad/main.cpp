#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hfgrad/analysis.hpp"
#include "hfgrad/error.hpp"
#include "hfgrad/figures.hpp"
#include "hfgrad/io.hpp"
#include "hfgrad/magnus_fields.hpp"
#include "hfgrad/runner.hpp"
#include "hfgrad/scenario.hpp"
#include "hfgrad/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitPartialSweep = 4;

struct Overrides {
  std::optional<std::string> method;
  std::optional<std::string> protocol;
  std::optional<std::string> frame;
  std::optional<std::uint64_t> seed;
  bool allow_large = false;

  void add(CLI::App* app) {
    app->add_option("--method", method,
                    "exact | magnus_gaussian | magnus_nongaussian | short_time");
    app->add_option("--protocol", protocol, "FID | HE");
    app->add_option("--frame", frame, "rotating | lab");
    app->add_option("--seed", seed, "RNG seed");
    app->add_flag("--allow-large", allow_large, "allow exact runs above N = 1e5");
  }

  void apply(json& j) const {
    if (method) j["method"] = *method;
    if (protocol) j["protocol"] = *protocol;
    if (frame) j["frame"] = *frame;
    if (seed) j["seed"] = *seed;
    if (allow_large) j["allow_large"] = true;
  }
};

json load(const std::string& path) {
  try {
    return hfgrad::io::read_json(path);
  } catch (const json::exception& e) {
    throw hfgrad::ConfigError(path + ": " + e.what());
  }
}

hfgrad::Scenario load_scenario(const std::string& path, const Overrides& o) {
  json j = load(path);
  o.apply(j);
  return hfgrad::scenario_from_json(j);
}

void print_warnings(const std::vector<std::string>& w) {
  for (const auto& s : w) std::cerr << "warning: " << s << '\n';
}

int cmd_simulate(const std::string& config, const Overrides& o, const std::string& out,
                 unsigned workers) {
  hfgrad::Scenario s = load_scenario(config, o);
  hfgrad::ScenarioResult r = hfgrad::run_scenario(s, {workers});
  print_warnings(r.warnings);
  fs::create_directories(out);
  hfgrad::write_result(r, out);
  std::cout << "wrote " << (fs::path(out) / "curve.csv").string() << " (" << r.curve.size()
            << " points, " << r.manifest["sites"] << " sites, M = " << r.manifest["realizations"]
            << ")\n";
  return kExitOk;
}

int cmd_timescales(const std::string& config, const Overrides& o, const std::string& out,
                   bool as_json) {
  hfgrad::Scenario s = load_scenario(config, o);
  hfgrad::TimescaleReport r = hfgrad::timescale_report(hfgrad::report_inputs(s));
  json j = hfgrad::to_json(r, s.g_factor());
  if (as_json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << hfgrad::format_report(r, s.g_factor());
  print_warnings(hfgrad::scenario_warnings(s, r));
  if (!out.empty()) {
    fs::create_directories(out);
    hfgrad::io::write_json(fs::path(out) / "timescales.json", j);
  }
  return kExitOk;
}

int cmd_validate(const std::string& config, const Overrides& o) {
  hfgrad::Scenario s = load_scenario(config, o);
  std::cout << "ok: " << hfgrad::to_string(s.protocol) << ", " << hfgrad::to_string(s.method)
            << ", " << hfgrad::to_string(s.state.kind) << " state, bath "
            << hfgrad::to_string(s.resolved_bath_model()) << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& config, const Overrides& o, const std::string& out,
              unsigned workers) {
  json j = load(config);
  if (j.is_object() && j.contains("base")) o.apply(j["base"]);
  hfgrad::SweepSpec spec = hfgrad::sweep_from_json(j);
  hfgrad::SweepResult r = hfgrad::run_sweep(spec, out, {workers});
  std::size_t failed = 0;
  for (const auto& e : r.entries) {
    if (e.ok) continue;
    ++failed;
    std::cerr << "entry " << e.index << " (" << e.value.dump() << ") failed: " << e.error << '\n';
  }
  std::cout << "wrote " << (fs::path(out) / "summary.csv").string() << " ("
            << r.entries.size() - failed << "/" << r.entries.size() << " ok)\n";
  return failed ? kExitPartialSweep : kExitOk;
}

int cmd_figure(const std::string& recipe, const Overrides& o, const std::string& out,
               bool no_exact, const std::vector<std::string>& refs, unsigned workers) {
  hfgrad::FigureOptions fo;
  if (o.seed) fo.seed = *o.seed;
  fo.allow_large = o.allow_large;
  fo.include_exact = !no_exact;
  fo.workers = workers;
  for (const auto& r : refs) fo.reference_files.emplace_back(r);
  json m = hfgrad::run_figure(recipe, out, fo);
  for (const auto& c : m["curves"]) print_warnings(c["warnings"].get<std::vector<std::string>>());
  std::cout << "wrote " << recipe << " to " << out << " (" << m["curves"].size() << " curves, "
            << m["tables"].size() << " tables)\n";
  return kExitOk;
}

int cmd_fields(const std::string& config, const Overrides& o, const std::string& out,
               std::size_t count) {
  hfgrad::Scenario s = load_scenario(config, o);
  hfgrad::SiteTable all = hfgrad::build_sites(s);
  hfgrad::SiteTable sites;
  for (std::size_t k = 0; k < std::min(count, all.size()); ++k)
    sites.push_back(all.coupling[k], all.transverse[k], all.theta[k], all.phi[k], all.species[k],
                    all.spin[k], all.gyro[k], all.weight[k]);
  hfgrad::EffectiveField field(s.protocol, s.zeeman());
  fs::create_directories(out);
  std::ofstream os(fs::path(out) / "fields.csv");
  hfgrad::write_fields_csv(os, sites, field, s.evaluation_times());
  if (!os) throw hfgrad::Error("cannot write " + (fs::path(out) / "fields.csv").string());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electron-spin coherence in a nuclear-spin bath under a field gradient"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HFGRAD_VERSION);

  std::string config, out = "hfgrad-out", recipe;
  unsigned workers = 0;
  bool as_json = false, no_exact = false;
  std::size_t field_sites = 10;
  std::vector<std::string> refs;
  Overrides o;

  auto common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config) sub->add_option("--config", config, "scenario JSON")->required();
    sub->add_option("--workers", workers, "worker threads (default: HFGRAD_WORKERS or all cores)");
    o.add(sub);
  };

  auto* simulate = app.add_subcommand("simulate", "run one scenario, write curve.csv and manifest.json");
  common(simulate, true);
  simulate->add_option("--out", out, "output directory");

  auto* timescales = app.add_subcommand("timescales", "print the analytic timescale report");
  common(timescales, true);
  timescales->add_flag("--json", as_json, "print JSON instead of a table");
  timescales->add_option("--out", out, "also write timescales.json here");

  auto* validate = app.add_subcommand("validate", "check a scenario and list every problem");
  common(validate, true);

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  common(sweep, true);
  sweep->add_option("--out", out, "output directory");

  auto* figure = app.add_subcommand("figure", "reproduce a figure's curves");
  common(figure, false);
  figure->add_option("recipe", recipe, "fig2a | fig2b | fig2c | fig3a | fig3b | fig3c | fig4a | fig4b")
      ->required();
  figure->add_option("--out", out, "output directory");
  figure->add_flag("--no-exact", no_exact, "skip exact-engine series");
  figure->add_option("--reference", refs, "fig2a comparison data files to copy");

  auto* fields = app.add_subcommand("fields", "dump effective Magnus fields for the first sites");
  common(fields, true);
  fields->add_option("--out", out, "output directory");
  fields->add_option("--sites", field_sites, "number of sites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*simulate) return cmd_simulate(config, o, out, workers);
    if (*timescales) return cmd_timescales(config, o, timescales->count("--out") ? out : "", as_json);
    if (*validate) return cmd_validate(config, o);
    if (*sweep) return cmd_sweep(config, o, out, workers);
    if (*figure) return cmd_figure(recipe, o, out, no_exact, refs, workers);
    if (*fields) return cmd_fields(config, o, out, field_sites);
  } catch (const hfgrad::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const hfgrad::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (M = " << e.realizations() << ")\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
