#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hfgrad/curve.hpp"
#include "hfgrad/geometry.hpp"
#include "hfgrad/materials.hpp"
#include "hfgrad/units.hpp"

namespace hfgrad {

enum class Method { Exact, MagnusGaussian, MagnusNonGaussian, ShortTime };
enum class StateKind { Narrowed, Thermal };
// effective: the material's aggregate single species, N counts spinful nuclei.
// isotopes: per-site species draws, N counts lattice sites.
enum class Composition { Effective, Isotopes };
enum class BathModel { Auto, Sampled, Quadrature };
enum class Spacing { Linear, Log };

std::string to_string(Method m);
std::string to_string(StateKind k);
std::string to_string(Composition c);
std::string to_string(BathModel m);
std::string to_string(Spacing s);
Method parse_method(const std::string& s);

inline constexpr std::uint64_t kDefaultSeed = 20130715;
inline constexpr double kExactNucleiCap = 1e5;

// Times are total evolution times tau; a Hahn echo with tau = 2t has its
// pulse at t.
struct TimeGrid {
  double t_max = 0.0;
  double t_min = 0.0;  // first nonzero point for log spacing
  int points = 200;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;
};

struct StateSpec {
  StateKind kind = StateKind::Thermal;
  std::size_t realizations = 0;  // 0: grow M until converged
  double tolerance = 0.01;
  std::size_t cap = 6400;
};

struct Scenario {
  std::string material_name;  // preset name, or empty for an inline material
  MaterialPreset material;
  Composition composition = Composition::Effective;
  std::optional<units::Quantity> hyperfine;  // overrides the effective total hyperfine
  DeviceGeometry geometry;
  double field_mT = 0.0;
  double gradient_T_per_um = 0.0;
  Protocol protocol = Protocol::FID;
  StateSpec state;
  Method method = Method::Exact;
  BathModel bath_model = BathModel::Auto;
  TimeGrid time;
  std::uint64_t seed = kDefaultSeed;
  Frame frame = Frame::Rotating;
  bool allow_large = false;
  std::optional<double> correlation_time_s;
  QuadratureOrder quadrature;

  FieldConfig field() const { return {field_mT * 1e-3, gradient_T_per_um}; }
  double g_factor() const { return material.g_factor; }
  double zeeman() const;
  double delta_bx() const;   // r0 * gradient
  double device_bx() const;  // l * gradient for double dots, r0 * gradient otherwise
  NuclearSpecies effective_species() const;
  // Pulse times for a Hahn echo, tau otherwise.
  std::vector<double> evaluation_times() const;
  BathModel resolved_bath_model() const;
};

// Every violated rule, one message each; empty when valid.
std::vector<std::string> validate(const Scenario& s);

// Parses and validates; throws ConfigError listing every problem found.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Scenario& s);

}  // namespace hfgrad
