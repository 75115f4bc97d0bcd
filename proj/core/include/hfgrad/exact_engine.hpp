#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hfgrad/bath_states.hpp"
#include "hfgrad/curve.hpp"
#include "hfgrad/geometry.hpp"

namespace hfgrad {

struct SiteOperators {
  double spin = 0.5;
  double tilt_up = 0.0, tilt_down = 0.0;  // phi^{up/down}
  double freq_up = 0.0, freq_down = 0.0;  // h^{up/down}
  Eigen::MatrixXd rot_up, rot_down;       // R^{up/down}
  Eigen::MatrixXd rel_up, rel_down;       // Q^{up/down}

  Eigen::VectorXcd phases_up(double t) const;  // diagonal of E^{up}(t)
  Eigen::VectorXcd phases_down(double t) const;
};

SiteOperators site_operators(double coupling, double transverse, double gyro, double zeeman,
                             double spin);

// Single-site matrix elements, straight from the operator products.
std::complex<double> fid_site_factor(const SiteOperators& op, const Eigen::VectorXcd& psi,
                                     double t);
std::complex<double> hahn_site_factor(const SiteOperators& op, const Eigen::VectorXcd& psi,
                                      double t);

struct EngineOptions {
  Frame frame = Frame::Rotating;
  std::size_t block_size = 4096;  // fixed site blocks -> thread-count independent results
  unsigned workers = 0;
};

inline constexpr double kLogUnderflow = -200.0;

// Sum over realizations [first, last) of C_j at the given times (FID: tau,
// HE: pulse times). Narrowed states have a single realization.
std::vector<std::complex<double>> exact_realization_sum(const SiteTable& sites,
                                                        const BathState& state, double zeeman,
                                                        Protocol protocol,
                                                        const std::vector<double>& times,
                                                        std::size_t first, std::size_t last,
                                                        const EngineOptions& opts = {});

CoherenceCurve fid_exact(const SiteTable& sites, const BathState& state, double zeeman,
                         const std::vector<double>& times, const EngineOptions& opts = {});
CoherenceCurve hahn_exact(const SiteTable& sites, const BathState& state, double zeeman,
                          const std::vector<double>& pulse_times,
                          const EngineOptions& opts = {});

// Dense evolution of the full electron + bath Hamiltonian (K <= 8, I = 1/2).
CoherenceCurve brute_force_oracle(const SiteTable& sites, const BathState& state,
                                  double zeeman, Protocol protocol,
                                  const std::vector<double>& times,
                                  Frame frame = Frame::Rotating);

}  // namespace hfgrad
