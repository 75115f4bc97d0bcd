#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hfgrad/runner.hpp"

namespace hfgrad {

// `parameter` is a dotted path into the scenario JSON, e.g. "field.B_mT".
// With keep_magnus_ratio and parameter "geometry.N", the hyperfine total is
// rescaled as A ~ N^{5/6} so that N^{5/6} gamma b / A stays fixed.
struct SweepSpec {
  nlohmann::json base;
  std::string parameter;
  std::vector<nlohmann::json> values;
  bool keep_magnus_ratio = false;
};

struct SweepEntry {
  std::size_t index = 0;
  nlohmann::json value;
  bool ok = false;
  std::string error;
  int error_kind = 0;  // exit-code class of the failure: 2 config, 3 non-convergence
  std::size_t sites = 0;
  std::size_t realizations = 0;
  std::optional<double> one_over_e;
  std::optional<double> stretch_exponent;
  std::optional<double> plateau;
  std::optional<double> t2_gradient;
  std::optional<double> t2e_gradient;
  std::vector<std::string> warnings;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  bool all_ok() const;
};

SweepSpec sweep_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepSpec& s);

// Scenario JSON for one swept value, before validation.
nlohmann::json sweep_point(const SweepSpec& spec, const nlohmann::json& value);

// Throws ConfigError for an empty value list, an unknown parameter path,
// non-finite numbers or values whose JSON type differs from the base.
void validate_sweep(const SweepSpec& spec);

// Writes NNN/curve.csv, NNN/manifest.json per value, summary.csv and
// sweep.json into `out`. Failures are recorded per entry, never thrown.
SweepResult run_sweep(const SweepSpec& spec, const std::filesystem::path& out,
                      const RunOptions& opts = {});

std::string summary_csv(const SweepResult& r);

}  // namespace hfgrad
