#include "hfgrad/units.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "hfgrad/error.hpp"

namespace hfgrad::units {

namespace {

struct UnitInfo {
  Unit unit;
  std::string_view tag;
  double to_rad_s;
};

constexpr double kTwoPi = 2.0 * kPi;

const std::array<UnitInfo, 10>& table() {
  static const std::array<UnitInfo, 10> t{{
      {Unit::RadPerSecond, "rad/s", 1.0},
      {Unit::MegaRadPerSecond, "Mrad/s", 1e6},
      {Unit::Hertz, "Hz", kTwoPi},
      {Unit::KiloHertz, "kHz", kTwoPi * 1e3},
      {Unit::MegaHertz, "MHz", kTwoPi * 1e6},
      {Unit::ElectronVolt, "eV", 1.0 / kHbarEv},
      {Unit::MilliElectronVolt, "meV", 1e-3 / kHbarEv},
      {Unit::MicroElectronVolt, "ueV", 1e-6 / kHbarEv},
      {Unit::NanoElectronVolt, "neV", 1e-9 / kHbarEv},
      {Unit::TeslaMhzPerTesla, "T*MHz/T", kTwoPi * 1e6},
  }};
  return t;
}

const UnitInfo& info(Unit u) {
  for (const auto& e : table())
    if (e.unit == u) return e;
  throw ConfigError("unknown unit enumerator");
}

}  // namespace

Unit parse_unit(std::string_view tag) {
  for (const auto& e : table())
    if (e.tag == tag) return e.unit;
  if (tag == "µeV") return Unit::MicroElectronVolt;
  throw ConfigError("unknown unit tag '" + std::string(tag) + "'");
}

std::string_view unit_tag(Unit u) { return info(u).tag; }

double to_angular_frequency(double value, Unit unit) {
  if (!std::isfinite(value)) throw ConfigError("non-finite quantity");
  return value * info(unit).to_rad_s;
}

double from_angular_frequency(double omega, Unit unit) {
  return omega / info(unit).to_rad_s;
}

double electron_gyromagnetic(double g_factor) {
  if (!(std::abs(g_factor) > 0.0)) throw ConfigError("g-factor must be nonzero");
  return std::abs(g_factor) * kBohrMagneton / kHbar;
}

double electron_zeeman(double field_tesla, double g_factor) {
  return electron_gyromagnetic(g_factor) * field_tesla;
}

double field_from_zeeman(double omega, double g_factor) {
  return omega / electron_gyromagnetic(g_factor);
}

}  // namespace hfgrad::units
