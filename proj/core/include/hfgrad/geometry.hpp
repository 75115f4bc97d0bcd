#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hfgrad/materials.hpp"

namespace hfgrad {

enum class DeviceKind { SingleDot, DoubleDotDelocalized, DoubleDotST0 };

std::string to_string(DeviceKind kind);
DeviceKind parse_device_kind(const std::string& s);

struct DeviceGeometry {
  DeviceKind kind = DeviceKind::SingleDot;
  int parity = +1;  // bonding (+) or antibonding (-) delocalized state
  int dim = 2;
  double q = 2.0;
  double bohr_radius_nm = 1.0;
  double spacing_nm = 0.0;
  double nuclei = 1.0;

  double eta() const;
  bool is_double_dot() const { return kind != DeviceKind::SingleDot; }
  void validate() const;
};

// Sites are listed in increasing r_k/r0 = (k/N)^{1/d}. Extra site weights are
// only used by deterministic quadrature tables; sampled baths have weight 1.
struct SiteTable {
  std::vector<double> coupling;    // A_k or dA_k, rad/s
  std::vector<double> transverse;  // b_k^x, rad/s
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<int> species;  // index into the material species list, -1 = effective
  std::vector<double> spin;
  std::vector<double> gyro;  // dimensionless
  std::vector<double> weight;

  std::size_t size() const { return coupling.size(); }
  bool empty() const { return coupling.empty(); }
  bool unit_weights() const;
  void reserve(std::size_t n);
  void push_back(double a, double bx, double th, double ph, int sp, double I, double g,
                 double w = 1.0);
  void check_consistent() const;
};

struct SiteAngles {
  std::vector<double> theta;
  std::vector<double> phi;
  // Cosine of the angle between the site and the gradient (and dot) axis;
  // +-1 by parity for d = 1.
  std::vector<double> axis_cosine;
};

// Number of generated sites, so that the envelope has fallen by 1e-6
// relative to its maximum.
std::size_t tail_cutoff(const DeviceGeometry& geom, double relative_cut = 1e-6);

SiteAngles draw_angles(const DeviceGeometry& geom, std::size_t count, std::uint64_t seed);

double single_dot_coupling(const DeviceGeometry& geom, double total, double x);
double double_dot_coupling(const DeviceGeometry& geom, double total, double x,
                           double axis_cosine);
double st0_coupling(const DeviceGeometry& geom, double total, double x, double axis_cosine);

std::vector<double> single_dot_couplings(const DeviceGeometry& geom, double total,
                                         std::size_t count);
std::vector<double> double_dot_couplings(const DeviceGeometry& geom, double total,
                                         const SiteAngles& angles);
std::vector<double> st0_couplings(const DeviceGeometry& geom, double total,
                                  const SiteAngles& angles);
std::vector<double> gradient_fields(const DeviceGeometry& geom, double delta_bx,
                                    const SiteAngles& angles);

// Homogeneous bath of one spinful species on every generated site.
SiteTable generate_sites(const DeviceGeometry& geom, double total_hyperfine, double delta_bx,
                         double spin, double gyro, std::uint64_t seed,
                         std::size_t count = 0);

// `shape` must carry couplings per unit total hyperfine (generate_sites with
// total_hyperfine = 1). Each site becomes species s with probability nu_s and
// coupling A_s * shape_k; spin-zero sites are dropped.
SiteTable assign_species(const SiteTable& shape, const MaterialPreset& material,
                         std::uint64_t seed);

struct QuadratureOrder {
  int radial_panels = 24;
  int angular_nodes = 192;
};

// Weighted pseudo-sites approximating the site sum for large N: Gauss-Legendre
// in r/r0 and an equal-weight rule in angle.
SiteTable quadrature_sites(const DeviceGeometry& geom, double total_hyperfine,
                           double delta_bx, double spin, double gyro,
                           QuadratureOrder order = {});

void write_sites_csv(std::ostream& os, const SiteTable& sites);

}  // namespace hfgrad
