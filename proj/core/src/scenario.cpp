#include "hfgrad/scenario.hpp"

#include <cmath>
#include <set>

#include "hfgrad/error.hpp"

namespace hfgrad {

using nlohmann::json;

std::string to_string(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::MagnusGaussian: return "magnus_gaussian";
    case Method::MagnusNonGaussian: return "magnus_nongaussian";
    case Method::ShortTime: return "short_time";
  }
  return "?";
}

std::string to_string(StateKind k) { return k == StateKind::Narrowed ? "narrowed" : "thermal"; }

std::string to_string(Composition c) {
  return c == Composition::Effective ? "effective" : "isotopes";
}

std::string to_string(BathModel m) {
  switch (m) {
    case BathModel::Auto: return "auto";
    case BathModel::Sampled: return "sampled";
    case BathModel::Quadrature: return "quadrature";
  }
  return "?";
}

std::string to_string(Spacing s) { return s == Spacing::Linear ? "linear" : "log"; }

Method parse_method(const std::string& s) {
  if (s == "exact") return Method::Exact;
  if (s == "magnus_gaussian" || s == "gaussian") return Method::MagnusGaussian;
  if (s == "magnus_nongaussian" || s == "nongaussian") return Method::MagnusNonGaussian;
  if (s == "short_time") return Method::ShortTime;
  throw ConfigError("unknown method '" + s +
                    "' (expected exact, magnus_gaussian, magnus_nongaussian or short_time)");
}

namespace {

StateKind parse_state_kind(const std::string& s) {
  if (s == "narrowed") return StateKind::Narrowed;
  if (s == "thermal") return StateKind::Thermal;
  throw ConfigError("unknown state '" + s + "' (expected narrowed or thermal)");
}

Composition parse_composition(const std::string& s) {
  if (s == "effective") return Composition::Effective;
  if (s == "isotopes") return Composition::Isotopes;
  throw ConfigError("unknown composition '" + s + "' (expected effective or isotopes)");
}

BathModel parse_bath_model(const std::string& s) {
  if (s == "auto") return BathModel::Auto;
  if (s == "sampled") return BathModel::Sampled;
  if (s == "quadrature") return BathModel::Quadrature;
  throw ConfigError("unknown bath_model '" + s + "' (expected auto, sampled or quadrature)");
}

Spacing parse_spacing(const std::string& s) {
  if (s == "linear") return Spacing::Linear;
  if (s == "log") return Spacing::Log;
  throw ConfigError("unknown spacing '" + s + "' (expected linear or log)");
}

// Collects every parse problem instead of stopping at the first.
struct Reader {
  std::vector<std::string> errors;

  template <class F>
  void field(const std::string& where, F&& f) {
    try {
      f();
    } catch (const json::exception& e) {
      errors.push_back(where + ": " + e.what());
    } catch (const Error& e) {
      errors.push_back(where + ": " + e.what());
    }
  }

  void unknown_keys(const json& j, const std::string& where, std::set<std::string> known) {
    if (!j.is_object()) {
      errors.push_back(where + ": expected an object");
      return;
    }
    for (const auto& [k, v] : j.items())
      if (!known.count(k)) errors.push_back(where + ": unknown key '" + k + "'");
  }
};

bool spin_half_only(const Scenario& s) {
  if (s.composition == Composition::Effective) return s.effective_species().spin == 0.5;
  for (const auto& sp : s.material.species)
    if (sp.spin != 0.5) return false;
  return true;
}

double max_spin(const Scenario& s) {
  if (s.composition == Composition::Effective) return s.effective_species().spin;
  double m = 0.0;
  for (const auto& sp : s.material.species) m = std::max(m, sp.spin);
  return m;
}

}  // namespace

std::vector<double> TimeGrid::values() const {
  if (points < 2) throw ConfigError("time grid needs at least 2 points");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be positive");
  std::vector<double> t(static_cast<std::size_t>(points));
  if (spacing == Spacing::Linear) {
    for (int i = 0; i < points; ++i) t[i] = t_max * i / (points - 1);
    return t;
  }
  if (!(t_min > 0.0 && t_min < t_max))
    throw ConfigError("log spacing needs 0 < t_min < t_max");
  double r = std::log(t_max / t_min);
  for (int i = 0; i < points; ++i) t[i] = t_min * std::exp(r * i / (points - 1));
  t.back() = t_max;
  return t;
}

double Scenario::zeeman() const { return field().zeeman(g_factor()); }

double Scenario::delta_bx() const {
  return field().transverse_variation(g_factor(), geometry.bohr_radius_nm);
}

double Scenario::device_bx() const {
  return geometry.is_double_dot() ? field().transverse_variation(g_factor(), geometry.spacing_nm)
                                  : delta_bx();
}

NuclearSpecies Scenario::effective_species() const {
  NuclearSpecies e = material.effective;
  if (hyperfine) e.hyperfine = hyperfine->angular();
  return e;
}

std::vector<double> Scenario::evaluation_times() const {
  auto t = time.values();
  if (protocol == Protocol::HahnEcho)
    for (double& x : t) x *= 0.5;
  return t;
}

BathModel Scenario::resolved_bath_model() const {
  if (bath_model != BathModel::Auto) return bath_model;
  if (method == Method::Exact || method == Method::MagnusNonGaussian ||
      state.kind == StateKind::Narrowed)
    return BathModel::Sampled;
  return geometry.nuclei <= kExactNucleiCap ? BathModel::Sampled : BathModel::Quadrature;
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> e;
  auto check = [&](const std::string& where, auto&& f) {
    try {
      f();
    } catch (const Error& x) {
      e.push_back(where + ": " + x.what());
    }
  };
  check("material", [&] { s.material.validate(); });
  if (s.hyperfine) {
    if (s.composition == Composition::Isotopes)
      e.push_back("hyperfine: an override only applies to the effective composition");
    else if (!(s.hyperfine->angular() > 0.0))
      e.push_back("hyperfine: must be positive");
  }
  check("geometry", [&] { s.geometry.validate(); });
  if (!(s.field_mT >= 0.0) || !std::isfinite(s.field_mT)) e.push_back("field.B_mT: must be >= 0");
  if (!(s.gradient_T_per_um >= 0.0) || !std::isfinite(s.gradient_T_per_um))
    e.push_back("field.gradient_T_per_um: must be >= 0");
  check("time", [&] { s.time.values(); });
  if (s.state.kind == StateKind::Thermal) {
    if (!(s.state.tolerance >= 0.0)) e.push_back("state.tolerance: must be >= 0");
    if (s.state.realizations == 0 && s.state.cap < 50)
      e.push_back("state.cap: must allow at least one doubling from M = 25");
  }
  if (s.protocol == Protocol::HahnEcho && s.frame == Frame::Lab)
    e.push_back("frame: the echo refocuses the electron Zeeman phase; use the rotating frame");
  BathModel model = s.resolved_bath_model();
  switch (s.method) {
    case Method::Exact:
      if (model == BathModel::Quadrature)
        e.push_back("bath_model: the exact engine needs sampled nuclei, not quadrature");
      if (max_spin(s) > 4.5) e.push_back("method: the exact engine supports I <= 9/2");
      if (s.geometry.nuclei > kExactNucleiCap && !s.allow_large)
        e.push_back("geometry.N: exact runs above N = 1e5 need allow_large");
      break;
    case Method::MagnusNonGaussian:
      if (s.state.kind != StateKind::Narrowed)
        e.push_back("method: magnus_nongaussian needs a narrowed state");
      if (!spin_half_only(s)) e.push_back("method: magnus_nongaussian needs I = 1/2 on every site");
      break;
    case Method::ShortTime:
      if (s.protocol != Protocol::HahnEcho) e.push_back("method: short_time is a Hahn-echo form");
      if (s.state.kind != StateKind::Thermal) e.push_back("method: short_time needs a thermal state");
      break;
    case Method::MagnusGaussian: break;
  }
  if (s.state.kind == StateKind::Narrowed && model == BathModel::Quadrature)
    e.push_back("bath_model: narrowed states need sampled nuclei");
  if (model == BathModel::Quadrature && s.composition == Composition::Isotopes &&
      s.geometry.nuclei <= 0.0)
    e.push_back("geometry.N: must be positive");
  return e;
}

Scenario scenario_from_json(const json& j) {
  Reader r;
  Scenario s;
  r.unknown_keys(j, "scenario",
                 {"material", "composition", "hyperfine", "geometry", "field", "protocol", "state",
                  "method", "bath_model", "time", "seed", "frame", "allow_large",
                  "correlation_time_s", "quadrature"});
  if (!j.is_object()) throw ConfigError("invalid scenario:\n  - scenario: expected an object");

  r.field("material", [&] {
    const json& m = j.at("material");
    if (m.is_string()) {
      s.material_name = m.get<std::string>();
      s.material = preset(s.material_name);
    } else {
      s.material = m.get<MaterialPreset>();
    }
  });
  r.field("composition", [&] {
    s.composition = parse_composition(j.value("composition", std::string("effective")));
  });
  r.field("hyperfine", [&] {
    if (!j.contains("hyperfine") || j["hyperfine"].is_null()) return;
    const json& h = j["hyperfine"];
    units::Quantity q;
    q.value = h.at("value").get<double>();
    q.unit = units::parse_unit(h.value("unit", std::string("rad/s")));
    s.hyperfine = q;
  });
  r.field("geometry", [&] {
    const json& g = j.at("geometry");
    r.unknown_keys(g, "geometry", {"kind", "parity", "d", "q", "r0_nm", "l_nm", "N"});
    s.geometry.kind = parse_device_kind(g.value("kind", std::string("single_dot")));
    s.geometry.parity = g.value("parity", 1);
    s.geometry.dim = g.value("d", 2);
    s.geometry.q = g.value("q", 2.0);
    s.geometry.bohr_radius_nm = g.at("r0_nm").get<double>();
    s.geometry.spacing_nm = g.value("l_nm", 0.0);
    s.geometry.nuclei = g.at("N").get<double>();
  });
  r.field("field", [&] {
    const json& f = j.at("field");
    r.unknown_keys(f, "field", {"B_mT", "gradient_T_per_um"});
    s.field_mT = f.at("B_mT").get<double>();
    s.gradient_T_per_um = f.value("gradient_T_per_um", 0.0);
  });
  r.field("protocol", [&] { s.protocol = parse_protocol(j.value("protocol", std::string("FID"))); });
  r.field("state", [&] {
    if (!j.contains("state")) return;
    const json& st = j["state"];
    if (st.is_string()) {
      s.state.kind = parse_state_kind(st.get<std::string>());
      return;
    }
    r.unknown_keys(st, "state", {"kind", "realizations", "tolerance", "cap"});
    s.state.kind = parse_state_kind(st.value("kind", std::string("thermal")));
    s.state.realizations = st.value("realizations", std::size_t{0});
    s.state.tolerance = st.value("tolerance", 0.01);
    s.state.cap = st.value("cap", std::size_t{6400});
  });
  r.field("method", [&] { s.method = parse_method(j.value("method", std::string("exact"))); });
  r.field("bath_model", [&] {
    s.bath_model = parse_bath_model(j.value("bath_model", std::string("auto")));
  });
  r.field("time", [&] {
    const json& t = j.at("time");
    r.unknown_keys(t, "time", {"t_max_s", "t_min_s", "points", "spacing"});
    s.time.t_max = t.at("t_max_s").get<double>();
    s.time.t_min = t.value("t_min_s", 0.0);
    s.time.points = t.value("points", 200);
    s.time.spacing = parse_spacing(t.value("spacing", std::string("linear")));
  });
  r.field("seed", [&] { s.seed = j.value("seed", kDefaultSeed); });
  r.field("frame", [&] { s.frame = parse_frame(j.value("frame", std::string("rotating"))); });
  r.field("allow_large", [&] { s.allow_large = j.value("allow_large", false); });
  r.field("correlation_time_s", [&] {
    if (j.contains("correlation_time_s") && !j["correlation_time_s"].is_null())
      s.correlation_time_s = j["correlation_time_s"].get<double>();
  });
  r.field("quadrature", [&] {
    if (!j.contains("quadrature")) return;
    const json& q = j["quadrature"];
    s.quadrature.radial_panels = q.value("radial_panels", s.quadrature.radial_panels);
    s.quadrature.angular_nodes = q.value("angular_nodes", s.quadrature.angular_nodes);
    if (s.quadrature.radial_panels < 1 || s.quadrature.angular_nodes < 2)
      throw ConfigError("needs radial_panels >= 1 and angular_nodes >= 2");
  });

  std::vector<std::string> errors = std::move(r.errors);
  if (errors.empty()) {
    auto more = validate(s);
    errors.insert(errors.end(), more.begin(), more.end());
  }
  if (!errors.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
  return s;
}

json to_json(const Scenario& s) {
  json j;
  if (s.material_name.empty())
    j["material"] = s.material;
  else
    j["material"] = s.material_name;
  j["composition"] = to_string(s.composition);
  if (s.hyperfine)
    j["hyperfine"] = {{"value", s.hyperfine->value},
                      {"unit", std::string(units::unit_tag(s.hyperfine->unit))}};
  else
    j["hyperfine"] = nullptr;
  j["geometry"] = {{"kind", to_string(s.geometry.kind)},
                   {"parity", s.geometry.parity},
                   {"d", s.geometry.dim},
                   {"q", s.geometry.q},
                   {"r0_nm", s.geometry.bohr_radius_nm},
                   {"l_nm", s.geometry.spacing_nm},
                   {"N", s.geometry.nuclei}};
  j["field"] = {{"B_mT", s.field_mT}, {"gradient_T_per_um", s.gradient_T_per_um}};
  j["protocol"] = to_string(s.protocol);
  j["state"] = {{"kind", to_string(s.state.kind)},
                {"realizations", s.state.realizations},
                {"tolerance", s.state.tolerance},
                {"cap", s.state.cap}};
  j["method"] = to_string(s.method);
  j["bath_model"] = to_string(s.bath_model);
  j["time"] = {{"t_max_s", s.time.t_max},
               {"t_min_s", s.time.t_min},
               {"points", s.time.points},
               {"spacing", to_string(s.time.spacing)}};
  j["seed"] = s.seed;
  j["frame"] = to_string(s.frame);
  j["allow_large"] = s.allow_large;
  j["correlation_time_s"] = s.correlation_time_s ? json(*s.correlation_time_s) : json(nullptr);
  j["quadrature"] = {{"radial_panels", s.quadrature.radial_panels},
                     {"angular_nodes", s.quadrature.angular_nodes}};
  return j;
}

}  // namespace hfgrad
