#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace hfgrad {

struct NuclearSpecies {
  std::string name;
  double abundance = 1.0;     // fraction of lattice sites carrying this isotope
  double spin = 0.5;          // I, multiple of 1/2
  double gyromagnetic = 0.0;  // gamma^I in rad/(s T)
  double hyperfine = 0.0;     // A_s in rad/s

  // gamma^I / (|g| mu_B / hbar)
  double gyro(double g_factor) const;
  void validate() const;
};

struct MaterialPreset {
  std::string name;
  double g_factor = 2.0;
  std::vector<NuclearSpecies> species;
  // Aggregate single-species description; abundance is 1 and N counts spinful nuclei.
  NuclearSpecies effective;
  double reference_nuclei = 0.0;

  double total_abundance() const;
  void validate() const;
};

MaterialPreset preset(std::string_view name);
std::vector<std::string> preset_names();

struct FieldConfig {
  double field_tesla = 0.0;
  double gradient_tesla_per_um = 0.0;

  // Angular frequencies for an electron with the given g-factor.
  double zeeman(double g_factor) const;
  double transverse_variation(double g_factor, double length_nm) const;
};

void to_json(nlohmann::json& j, const NuclearSpecies& s);
void from_json(const nlohmann::json& j, NuclearSpecies& s);
void to_json(nlohmann::json& j, const MaterialPreset& m);
void from_json(const nlohmann::json& j, MaterialPreset& m);

}  // namespace hfgrad
