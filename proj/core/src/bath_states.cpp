#include "hfgrad/bath_states.hpp"

#include <algorithm>
#include <cmath>

#include "hfgrad/error.hpp"
#include "hfgrad/random.hpp"
#include "hfgrad/units.hpp"

namespace hfgrad {

double NarrowedState::overhauser_of(const SiteTable& sites, const std::vector<double>& m) {
  double h = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) h += sites.coupling[k] * m[k];
  return h;
}

Vec3 ThermalEnsemble::direction(std::size_t j, std::size_t k) const {
  double z = 2.0 * rng::uniform(seed, rng::kThermalZ, k, j) - 1.0;
  double az = 2.0 * units::kPi * rng::uniform(seed, rng::kThermalAzimuth, k, j);
  double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(az), r * std::sin(az), z};
}

NarrowedState sample_narrowed(const SiteTable& sites, std::uint64_t seed) {
  NarrowedState s;
  s.m.resize(sites.size());
  for (std::size_t k = 0; k < sites.size(); ++k) {
    auto levels = static_cast<std::uint64_t>(std::lround(2.0 * sites.spin[k])) + 1;
    auto idx = static_cast<std::uint64_t>(rng::uniform(seed, rng::kNarrowed, k) * levels);
    idx = std::min(idx, levels - 1);
    s.m[k] = -sites.spin[k] + static_cast<double>(idx);
  }
  s.overhauser = NarrowedState::overhauser_of(sites, s.m);
  return s;
}

ThermalEnsemble sample_thermal(const SiteTable&, std::size_t realizations,
                               std::uint64_t seed) {
  if (realizations < 1) throw ConfigError("thermal ensemble needs M >= 1");
  ThermalEnsemble e;
  e.realizations = realizations;
  e.seed = seed;
  return e;
}

namespace {

double sup_abs(const std::vector<std::complex<double>>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<std::complex<double>> scaled(const std::vector<std::complex<double>>& s,
                                         std::size_t n) {
  std::vector<std::complex<double>> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] / static_cast<double>(n);
  return out;
}

}  // namespace

ConvergedEnsemble converge_ensemble(const RealizationSum& sum, ConvergenceOptions opts) {
  if (!(opts.tolerance >= 0.0)) throw ConfigError("convergence tolerance must be >= 0");
  if (opts.start < 1) throw ConfigError("initial realization count must be >= 1");
  std::size_t M = opts.start;
  auto total = sum(0, M);
  auto current = scaled(total, M);
  std::vector<std::complex<double>> previous;
  for (;;) {
    if (2 * M > opts.cap) {
      throw NonConvergenceError("thermal ensemble did not converge within M = " +
                                    std::to_string(M) + " realizations (cap " +
                                    std::to_string(opts.cap) + ")",
                                M, std::move(previous), std::move(current));
    }
    auto more = sum(M, 2 * M);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += more[i];
    auto next = scaled(total, 2 * M);
    double diff = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i)
      diff = std::max(diff, std::abs(next[i] - current[i]));
    if (diff < opts.tolerance * sup_abs(current)) return {2 * M, std::move(next)};
    previous = std::move(current);
    current = std::move(next);
    M *= 2;
  }
}

nlohmann::json to_json(const NarrowedState& s) {
  return {{"kind", "narrowed"}, {"m", s.m}, {"overhauser_rad_s", s.overhauser}};
}

nlohmann::json to_json(const ThermalEnsemble& e, std::size_t sites, bool include_directions) {
  nlohmann::json j{{"kind", "thermal"},
                   {"realizations", e.realizations},
                   {"seed", e.seed},
                   {"tolerance", e.tolerance}};
  if (include_directions) {
    auto dirs = nlohmann::json::array();
    for (std::size_t r = 0; r < e.realizations; ++r) {
      auto row = nlohmann::json::array();
      for (std::size_t k = 0; k < sites; ++k) row.push_back(e.direction(r, k));
      dirs.push_back(std::move(row));
    }
    j["directions"] = std::move(dirs);
  }
  return j;
}

NarrowedState narrowed_from_json(const nlohmann::json& j) {
  NarrowedState s;
  s.m = j.at("m").get<std::vector<double>>();
  s.overhauser = j.value("overhauser_rad_s", 0.0);
  return s;
}

ThermalEnsemble thermal_from_json(const nlohmann::json& j) {
  ThermalEnsemble e;
  e.realizations = j.at("realizations").get<std::size_t>();
  e.seed = j.at("seed").get<std::uint64_t>();
  e.tolerance = j.value("tolerance", 0.01);
  return e;
}

}  // namespace hfgrad
