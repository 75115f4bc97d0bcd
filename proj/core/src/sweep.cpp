#include "hfgrad/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hfgrad/curve_fit.hpp"
#include "hfgrad/error.hpp"
#include "hfgrad/io.hpp"
#include "hfgrad/parallel.hpp"

namespace hfgrad {

using nlohmann::json;

namespace {

json::json_pointer pointer_of(const std::string& dotted) {
  if (dotted.empty()) throw ConfigError("sweep parameter path is empty");
  std::string p;
  std::stringstream ss(dotted);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (part.empty()) throw ConfigError("malformed sweep parameter path '" + dotted + "'");
    p += "/" + part;
  }
  return json::json_pointer(p);
}

json normalized_base(const SweepSpec& spec) { return to_json(scenario_from_json(spec.base)); }

bool same_kind(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) return true;
  if (a.is_null() || b.is_null()) return true;
  return a.type() == b.type();
}

void check_finite(const json& v, const std::string& where) {
  if (v.is_number_float() && !std::isfinite(v.get<double>()))
    throw ConfigError(where + ": swept values must be finite");
  if (v.is_object() || v.is_array())
    for (const auto& x : v) check_finite(x, where);
}

std::string dir_name(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? io::format_double(*v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c == '\n' ? ' ' : c;
  }
  return q + "\"";
}

std::string value_text(const json& v) {
  if (v.is_number()) return io::format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

bool SweepResult::all_ok() const {
  for (const auto& e : entries)
    if (!e.ok) return false;
  return true;
}

SweepSpec sweep_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep: expected an object");
  for (const auto& [k, v] : j.items())
    if (k != "base" && k != "parameter" && k != "values" && k != "keep_magnus_ratio")
      throw ConfigError("sweep: unknown key '" + k + "'");
  SweepSpec s;
  try {
    s.base = j.at("base");
    s.parameter = j.at("parameter").get<std::string>();
    const json& vals = j.at("values");
    if (!vals.is_array()) throw ConfigError("sweep.values: expected an array");
    s.values.assign(vals.begin(), vals.end());
    s.keep_magnus_ratio = j.value("keep_magnus_ratio", false);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("sweep: ") + e.what());
  }
  validate_sweep(s);
  return s;
}

json to_json(const SweepSpec& s) {
  return {{"base", s.base},
          {"parameter", s.parameter},
          {"values", s.values},
          {"keep_magnus_ratio", s.keep_magnus_ratio}};
}

void validate_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep.values: the value list is empty");
  json base = normalized_base(spec);
  auto ptr = pointer_of(spec.parameter);
  if (!base.contains(ptr))
    throw ConfigError("sweep.parameter: '" + spec.parameter + "' is not a scenario field");
  const json& current = base.at(ptr);
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    std::string where = "sweep.values[" + std::to_string(i) + "]";
    check_finite(spec.values[i], where);
    if (!same_kind(current, spec.values[i]))
      throw ConfigError(where + ": expected a value of type " + std::string(current.type_name()) +
                        ", got " + spec.values[i].type_name());
  }
  if (spec.keep_magnus_ratio) {
    if (spec.parameter != "geometry.N")
      throw ConfigError("sweep.keep_magnus_ratio: only applies to the parameter geometry.N");
    if (base.at("composition") != "effective")
      throw ConfigError("sweep.keep_magnus_ratio: needs the effective composition");
  }
}

json sweep_point(const SweepSpec& spec, const json& value) {
  json base = normalized_base(spec);
  auto ptr = pointer_of(spec.parameter);
  if (spec.keep_magnus_ratio) {
    Scenario s0 = scenario_from_json(base);
    double n0 = s0.geometry.nuclei;
    double n = value.get<double>();
    if (!(n > 0.0)) throw ConfigError("geometry.N: must be positive");
    double scale = std::pow(n / n0, 5.0 / 6.0);
    if (s0.hyperfine)
      base["hyperfine"]["value"] = s0.hyperfine->value * scale;
    else
      base["hyperfine"] = {{"value", s0.effective_species().hyperfine * scale}, {"unit", "rad/s"}};
  }
  base[ptr] = value;
  return base;
}

SweepResult run_sweep(const SweepSpec& spec, const std::filesystem::path& out,
                      const RunOptions& opts) {
  validate_sweep(spec);
  std::filesystem::create_directories(out);
  io::write_json(out / "sweep.json", to_json(spec));

  std::size_t n = spec.values.size();
  unsigned total = worker_count(opts.workers);
  unsigned outer = static_cast<unsigned>(std::min<std::size_t>(total, n));
  RunOptions inner;
  inner.workers = std::max(1u, total / std::max(1u, outer));

  SweepResult res;
  res.entries.resize(n);
  parallel_for(n, outer, [&](std::size_t i) {
    SweepEntry& e = res.entries[i];
    e.index = i;
    e.value = spec.values[i];
    try {
      Scenario s = scenario_from_json(sweep_point(spec, spec.values[i]));
      ScenarioResult r = run_scenario(s, inner);
      write_result(r, out / dir_name(i));
      auto mag = r.curve.magnitude();
      e.sites = r.manifest.at("sites").get<std::size_t>();
      e.realizations = r.manifest.at("realizations").get<std::size_t>();
      e.one_over_e = fit::one_over_e_time(r.curve.tau, mag);
      e.stretch_exponent = fit::stretch_exponent(r.curve.tau, mag);
      e.plateau = fit::plateau_level(mag);
      e.t2_gradient = r.report.t2_gradient;
      e.t2e_gradient = r.report.t2e_gradient;
      e.warnings = r.warnings;
      e.ok = true;
    } catch (const ConfigError& x) {
      e.error = x.what();
      e.error_kind = 2;
    } catch (const std::exception& x) {
      e.error = x.what();
      e.error_kind = 3;
    }
  });
  io::write_text(out / "summary.csv", summary_csv(res));
  return res;
}

std::string summary_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "index,value,status,sites,realizations,one_over_e_s,stretch_exponent,plateau,"
        "T2_gradient_s,T2e_gradient_s,error\n";
  for (const auto& e : r.entries) {
    os << e.index << ',' << csv_field(value_text(e.value)) << ',' << (e.ok ? "ok" : "failed")
       << ',' << e.sites << ',' << e.realizations << ',' << opt(e.one_over_e) << ','
       << opt(e.stretch_exponent) << ',' << opt(e.plateau) << ',' << opt(e.t2_gradient) << ','
       << opt(e.t2e_gradient) << ',' << csv_field(e.error) << '\n';
  }
  return os.str();
}

}  // namespace hfgrad
