#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hfgrad/geometry.hpp"
#include "hfgrad/materials.hpp"

namespace hfgrad {

// One spinful species in dimensionless form (gyro = gamma^I / |g| mu_B).
struct SpeciesTerm {
  std::string name;
  double abundance = 1.0;
  double spin = 0.5;
  double gyro = 0.0;
  double hyperfine = 0.0;  // A_s, rad/s
};

struct BathComposition {
  std::vector<SpeciesTerm> species;
  double g_factor = 2.0;

  // A single spinful species with abundance 1 (N counts spinful nuclei).
  static BathComposition effective(const MaterialPreset& m, double hyperfine_override = 0.0);
  // The isotope list of the material (N counts lattice sites).
  static BathComposition isotopes(const MaterialPreset& m);

  const SpeciesTerm& single() const;
};

// sum_k (A_k b_k^x)^2 for one species, angular-averaged (rad/s)^4.
double sigma_squared(const DeviceGeometry& geom, double hyperfine, double delta_bx);

// Narrowed-state FID: 1/T2 = (1/b) sqrt((1/6) sum_s nu_s I_s(I_s+1) Sigma_s^2).
double t2_gradient(const BathComposition& bath, const DeviceGeometry& geom, double zeeman,
                   double delta_bx);
// Thermal Hahn echo, short time: (1/T2e)^4 = (1/6) sum_s nu_s I_s(I_s+1) gamma_s^2 Sigma_s^2.
double t2e_gradient(const BathComposition& bath, const DeviceGeometry& geom, double delta_bx);
// b_c = (sum_s nu_s I_s(I_s+1) Sigma_s^2 / gamma_s^2)^{1/4}, rad/s.
double critical_zeeman(const BathComposition& bath, const DeviceGeometry& geom,
                       double delta_bx);

// Long-time exponential Hahn-echo decay at b -> 0 for single dots:
// 1/T2M = c(d, q) sum_s nu_s I_s(I_s+1) A_s^2 / (gamma_s delta_bx N).
double markov_coefficient(const DeviceGeometry& geom);
double markov_t2(const BathComposition& bath, const DeviceGeometry& geom, double delta_bx);
// Gradient above which the exponential regime sets in, from T2e = T2M with the
// crossover coefficient; for a homonuclear Gaussian 2D dot this is
// (1/(2 sqrt 3)) (pi/2)^{1/3} sqrt(I(I+1)) A / (gamma sqrt N).
double markov_crossover_gradient(const BathComposition& bath, const DeviceGeometry& geom);
double markov_crossover_closed_form(const SpeciesTerm& s, double nuclei);

struct MagnusValidity {
  double t1_large = 0, t2_large = 0, t3_large = 0;
  double t1_small = 0, t2_small = 0, t3_small = 0;
  bool large_field = false;
  double t_crit = 0;
  double b_min = 0;  // rad/s
  double lambda = 0;
  bool fid_criterion = false;  // lambda < N^{5/6} gamma b / A
  bool advisory = true;
};

// Order-of-magnitude estimates; unit prefactors.
MagnusValidity magnus_validity(const SpeciesTerm& s, double nuclei, double zeeman,
                               double device_bx);

struct GaussianValidity {
  double ratio_fid = 0;  // N^{1/4}
  double ratio_he = 0;   // N^{1/8}
  bool marginal = false;
  double lambda = 0;
  bool motional_criterion = false;  // lambda < sqrt(N) gamma b / A
  bool advisory = true;
};

inline constexpr double kGaussianMarginalRatio = 5.0;

GaussianValidity gaussian_validity(const SpeciesTerm& s, double nuclei, double zeeman,
                                   double device_bx);

struct LeakageEstimate {
  double plateau = 0;
  double onset = 0;  // s
  std::optional<double> trust_horizon;  // s
  bool advisory = true;
};

LeakageEstimate st0_leakage_estimate(double zeeman, double device_bx, double nuclei,
                                     double hyperfine, std::optional<double> correlation_time);

struct TimescaleReport {
  std::optional<double> t2_gradient;
  std::optional<double> t2e_gradient;
  std::optional<double> t2_markov;
  std::optional<double> critical_zeeman;
  std::optional<double> critical_field_tesla;
  std::optional<double> markov_gradient;
  std::optional<double> markov_gradient_tesla;
  std::optional<MagnusValidity> magnus;
  std::optional<double> b_min_tesla;
  std::optional<GaussianValidity> gaussian;
  std::optional<LeakageEstimate> leakage;
  std::vector<std::string> notes;
};

struct ReportInputs {
  BathComposition bath;
  SpeciesTerm aggregate;  // used for the order-of-magnitude criteria
  DeviceGeometry geom;
  double zeeman = 0;
  double delta_bx = 0;   // r0 * gradient
  double device_bx = 0;  // l * gradient for double dots, delta_bx otherwise
  std::optional<double> correlation_time;
};

TimescaleReport timescale_report(const ReportInputs& in);

nlohmann::json to_json(const TimescaleReport& r, double g_factor);
std::string format_report(const TimescaleReport& r, double g_factor);

}  // namespace hfgrad
