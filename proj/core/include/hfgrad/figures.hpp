#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hfgrad/runner.hpp"
#include "hfgrad/scenario.hpp"

namespace hfgrad {

struct FigureOptions {
  std::uint64_t seed = kDefaultSeed;
  bool allow_large = false;   // enables exact series above N = 1e5 (fig2b)
  bool include_exact = true;  // exact series where the recipe has them
  unsigned workers = 0;
  std::vector<std::filesystem::path> reference_files;  // fig2a comparison data, copied verbatim
};

// One coherence curve of a figure panel.
struct FigureCurve {
  std::string panel;
  std::string name;
  Scenario scenario;
};

// One rate-versus-field table: 1/T2 (narrowed FID, gradient) per device.
struct RateTable {
  std::string panel;
  std::string name;
  std::vector<std::string> columns;
  std::vector<Scenario> devices;  // field_mT is replaced by each grid value
  std::vector<double> field_mT;
};

struct FigurePlan {
  std::string recipe;
  std::string title;
  std::vector<FigureCurve> curves;
  std::vector<RateTable> tables;
  std::vector<std::string> notes;
};

std::vector<std::string> figure_recipes();

// Builds the scenarios of a recipe without running them.
FigurePlan figure_plan(const std::string& recipe, const FigureOptions& opts = {});

// Runs every series, writing <name>.csv per curve or table plus manifest.json.
// Returns the manifest.
nlohmann::json run_figure(const std::string& recipe, const std::filesystem::path& out,
                          const FigureOptions& opts = {});

// The scenario of each material preset used by the recipes.
Scenario gaas_single_dot();   // r0 = 40 nm, N = 1e6, 1 T/um
Scenario gaas_st0_qubit();    // r0 = 25 nm, l = 200 nm, N = 4.4e6, 0.25 T/um, B = 45 mT
Scenario si_single_dot();     // A = 210 neV, N = 1e4, r0 = 15 nm, 1 T/um
Scenario si_double_dot();     // as above, l = 80 nm
Scenario sip_donor();         // A = 210 neV, N = 250, r0 = 3 nm, d = 3, q = 1, 1 T/um

}  // namespace hfgrad
