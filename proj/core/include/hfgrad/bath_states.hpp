#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hfgrad/geometry.hpp"

namespace hfgrad {

using Vec3 = std::array<double, 3>;

struct NarrowedState {
  std::vector<double> m;
  double overhauser = 0.0;  // h_z^n = sum_k A_k m_k

  static double overhauser_of(const SiteTable& sites, const std::vector<double>& m);
};

// Directions are not stored; realization j, site k is a pure function of the
// seed, so ensembles of any size cost nothing to hold.
struct ThermalEnsemble {
  std::size_t realizations = 1;
  std::uint64_t seed = 0;
  double tolerance = 0.01;

  Vec3 direction(std::size_t j, std::size_t k) const;
  double weight() const { return 1.0 / static_cast<double>(realizations); }
};

using BathState = std::variant<NarrowedState, ThermalEnsemble>;

NarrowedState sample_narrowed(const SiteTable& sites, std::uint64_t seed);
ThermalEnsemble sample_thermal(const SiteTable& sites, std::size_t realizations,
                               std::uint64_t seed);

// Sum over realizations j in [first, last) of C_j(t) on a fixed grid.
using RealizationSum =
    std::function<std::vector<std::complex<double>>(std::size_t first, std::size_t last)>;

struct ConvergedEnsemble {
  std::size_t realizations = 0;
  std::vector<std::complex<double>> value;
};

struct ConvergenceOptions {
  double tolerance = 0.01;
  std::size_t start = 25;
  std::size_t cap = 6400;
};

// Doubles M until sup_t |C_2M - C_M| < tol * sup_t |C_M|. Realizations are
// reused across doublings, so the total work is that of the final M.
ConvergedEnsemble converge_ensemble(const RealizationSum& sum, ConvergenceOptions opts = {});

nlohmann::json to_json(const NarrowedState& s);
nlohmann::json to_json(const ThermalEnsemble& e, std::size_t sites,
                       bool include_directions = false);
NarrowedState narrowed_from_json(const nlohmann::json& j);
ThermalEnsemble thermal_from_json(const nlohmann::json& j);

}  // namespace hfgrad
