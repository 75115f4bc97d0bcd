#include "hfgrad/materials.hpp"

#include <cmath>

#include "hfgrad/error.hpp"
#include "hfgrad/units.hpp"

namespace hfgrad {

namespace {

double ueV(double v) {
  return units::to_angular_frequency(v, units::Unit::MicroElectronVolt);
}

MaterialPreset make_gaas() {
  MaterialPreset m;
  m.name = "GaAs";
  m.g_factor = -0.44;
  m.species = {
      {"69Ga", 0.302, 1.5, 6.4389e7, ueV(74.0)},
      {"71Ga", 0.198, 1.5, 8.1812e7, ueV(96.0)},
      {"75As", 0.500, 1.5, 4.5961e7, ueV(86.0)},
  };
  m.effective = {"GaAs-aggregate", 1.0, 1.5, 60e6, 1.3e11};
  m.reference_nuclei = 4.4e6;
  return m;
}

MaterialPreset make_si(std::string name, double n_ref) {
  MaterialPreset m;
  m.name = std::move(name);
  m.g_factor = 2.0;
  m.species = {{"29Si", 0.047, 0.5, 5.319e7, ueV(2.15)}};
  m.effective = {"Si-aggregate", 1.0, 0.5, 53e6, 320e6};
  m.reference_nuclei = n_ref;
  return m;
}

bool is_half_integer(double spin) {
  double twice = 2.0 * spin;
  return twice >= 1.0 && std::abs(twice - std::round(twice)) < 1e-12;
}

}  // namespace

double NuclearSpecies::gyro(double g_factor) const {
  return gyromagnetic / units::electron_gyromagnetic(g_factor);
}

void NuclearSpecies::validate() const {
  if (!(abundance > 0.0 && abundance <= 1.0))
    throw ConfigError("species '" + name + "': abundance must lie in (0, 1]");
  if (!is_half_integer(spin))
    throw ConfigError("species '" + name + "': 2I must be a positive integer");
  if (!(hyperfine >= 0.0)) throw ConfigError("species '" + name + "': hyperfine must be >= 0");
  if (!std::isfinite(gyromagnetic))
    throw ConfigError("species '" + name + "': gyromagnetic ratio must be finite");
}

double MaterialPreset::total_abundance() const {
  double s = 0.0;
  for (const auto& sp : species) s += sp.abundance;
  return s;
}

void MaterialPreset::validate() const {
  if (species.empty()) throw ConfigError("material '" + name + "' has no species");
  for (const auto& s : species) s.validate();
  if (total_abundance() > 1.0 + 1e-12)
    throw ConfigError("material '" + name + "': abundances sum above 1");
  effective.validate();
  units::electron_gyromagnetic(g_factor);
}

MaterialPreset preset(std::string_view name) {
  if (name == "GaAs") return make_gaas();
  if (name == "Si-natural") return make_si("Si-natural", 1e4);
  if (name == "Si:P") return make_si("Si:P", 250.0);
  throw ConfigError("unknown material preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() { return {"GaAs", "Si-natural", "Si:P"}; }

double FieldConfig::zeeman(double g_factor) const {
  return units::electron_zeeman(field_tesla, g_factor);
}

double FieldConfig::transverse_variation(double g_factor, double length_nm) const {
  double tesla = gradient_tesla_per_um * length_nm * 1e-3;
  return units::electron_zeeman(tesla, g_factor);
}

void to_json(nlohmann::json& j, const NuclearSpecies& s) {
  j = {{"name", s.name},
       {"abundance", s.abundance},
       {"spin", s.spin},
       {"gyromagnetic_rad_s_T", s.gyromagnetic},
       {"hyperfine_rad_s", s.hyperfine}};
}

void from_json(const nlohmann::json& j, NuclearSpecies& s) {
  s.name = j.value("name", std::string("custom"));
  s.abundance = j.value("abundance", 1.0);
  s.spin = j.at("spin").get<double>();
  s.gyromagnetic = j.at("gyromagnetic_rad_s_T").get<double>();
  s.hyperfine = j.at("hyperfine_rad_s").get<double>();
}

void to_json(nlohmann::json& j, const MaterialPreset& m) {
  j = {{"name", m.name},
       {"g_factor", m.g_factor},
       {"species", m.species},
       {"effective", m.effective},
       {"reference_nuclei", m.reference_nuclei}};
}

void from_json(const nlohmann::json& j, MaterialPreset& m) {
  m.name = j.value("name", std::string("custom"));
  m.g_factor = j.at("g_factor").get<double>();
  m.species = j.at("species").get<std::vector<NuclearSpecies>>();
  if (j.contains("effective")) {
    m.effective = j.at("effective").get<NuclearSpecies>();
  } else if (m.species.size() == 1) {
    m.effective = m.species.front();
    m.effective.hyperfine *= m.effective.abundance;
    m.effective.abundance = 1.0;
  } else {
    throw ConfigError("inline material with several species needs an 'effective' entry");
  }
  m.reference_nuclei = j.value("reference_nuclei", 0.0);
}

}  // namespace hfgrad
