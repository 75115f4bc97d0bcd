#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hfgrad/analysis.hpp"
#include "hfgrad/curve.hpp"
#include "hfgrad/geometry.hpp"
#include "hfgrad/scenario.hpp"

namespace hfgrad {

struct RunOptions {
  unsigned workers = 0;
};

struct ScenarioResult {
  CoherenceCurve curve;
  TimescaleReport report;
  std::vector<std::string> warnings;
  nlohmann::json manifest;
};

BathComposition composition_of(const Scenario& s);
SpeciesTerm aggregate_of(const Scenario& s);
ReportInputs report_inputs(const Scenario& s);
SiteTable build_sites(const Scenario& s);

// Advisory validity warnings for a scenario (never fatal).
std::vector<std::string> scenario_warnings(const Scenario& s, const TimescaleReport& report);

ScenarioResult run_scenario(const Scenario& s, const RunOptions& opts = {});

// Writes curve.csv and manifest.json into `dir`.
void write_result(const ScenarioResult& r, const std::filesystem::path& dir);

}  // namespace hfgrad
