#pragma once

#include <string>
#include <string_view>

namespace hfgrad::units {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kHbarEv = 6.582119569e-16;      // eV s
inline constexpr double kBohrMagneton = 9.2740100783e-24;  // J/T

enum class Unit {
  RadPerSecond,
  MegaRadPerSecond,
  Hertz,       // ordinary frequency h*f
  KiloHertz,
  MegaHertz,
  ElectronVolt,
  MilliElectronVolt,
  MicroElectronVolt,
  NanoElectronVolt,
  TeslaMhzPerTesla,  // B [T] times gamma/2pi [MHz/T]
};

Unit parse_unit(std::string_view tag);
std::string_view unit_tag(Unit u);

// Everything internal is an angular frequency in rad/s.
double to_angular_frequency(double value, Unit unit);
double from_angular_frequency(double omega, Unit unit);

struct Quantity {
  double value = 0.0;
  Unit unit = Unit::RadPerSecond;

  double angular() const { return to_angular_frequency(value, unit); }
};

// |g| mu_B / hbar in rad/(s T).
double electron_gyromagnetic(double g_factor);

// b = |g| mu_B B / hbar.
double electron_zeeman(double field_tesla, double g_factor);
double field_from_zeeman(double omega, double g_factor);

inline constexpr double millitesla(double v) { return v * 1e-3; }
inline constexpr double nanometre(double v) { return v * 1e-9; }

}  // namespace hfgrad::units
