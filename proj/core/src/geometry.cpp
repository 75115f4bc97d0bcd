#include "hfgrad/geometry.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <ostream>

#include "hfgrad/error.hpp"
#include "hfgrad/io.hpp"
#include "hfgrad/random.hpp"
#include "hfgrad/units.hpp"

namespace hfgrad {

namespace {

constexpr double kTwoPi = 2.0 * units::kPi;

void require_double_dot_plane(const DeviceGeometry& g) {
  if (g.dim != 2 || g.q != 2.0)
    throw UnsupportedError("double-dot couplings are only defined for d = q = 2");
}

double radius_fraction(const DeviceGeometry& g, double x) {
  if (x <= 0.0) return 0.0;
  return std::pow(x, 1.0 / g.dim);
}

double envelope_log_range(double relative_cut) {
  if (!(relative_cut > 0.0 && relative_cut < 1.0))
    throw ConfigError("tail cutoff must lie in (0, 1)");
  return -std::log(relative_cut);
}

double x_max(const DeviceGeometry& g, double relative_cut) {
  double L = envelope_log_range(relative_cut);
  if (g.kind == DeviceKind::SingleDot) return std::pow(L, g.dim / g.q);
  double r = g.eta() + std::sqrt(L);
  return r * r;
}

}  // namespace

std::string to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::SingleDot: return "single_dot";
    case DeviceKind::DoubleDotDelocalized: return "double_dot";
    case DeviceKind::DoubleDotST0: return "double_dot_st0";
  }
  return "?";
}

DeviceKind parse_device_kind(const std::string& s) {
  if (s == "single_dot") return DeviceKind::SingleDot;
  if (s == "double_dot") return DeviceKind::DoubleDotDelocalized;
  if (s == "double_dot_st0") return DeviceKind::DoubleDotST0;
  throw ConfigError("unknown geometry kind '" + s + "'");
}

double DeviceGeometry::eta() const {
  return is_double_dot() ? spacing_nm / (2.0 * bohr_radius_nm) : 0.0;
}

void DeviceGeometry::validate() const {
  if (!(nuclei >= 1.0)) throw ConfigError("geometry: N must be >= 1");
  if (!(bohr_radius_nm > 0.0)) throw ConfigError("geometry: r0 must be positive");
  if (dim < 1 || dim > 3) throw ConfigError("geometry: d must be 1, 2 or 3");
  if (!(q > 0.0)) throw ConfigError("geometry: q must be positive");
  if (is_double_dot()) {
    if (!(spacing_nm > 0.0)) throw ConfigError("geometry: double dots need l > 0");
    require_double_dot_plane(*this);
  }
  if (parity != 1 && parity != -1) throw ConfigError("geometry: parity must be +1 or -1");
}

bool SiteTable::unit_weights() const {
  for (double w : weight)
    if (w != 1.0) return false;
  return true;
}

void SiteTable::reserve(std::size_t n) {
  coupling.reserve(n);
  transverse.reserve(n);
  theta.reserve(n);
  phi.reserve(n);
  species.reserve(n);
  spin.reserve(n);
  gyro.reserve(n);
  weight.reserve(n);
}

void SiteTable::push_back(double a, double bx, double th, double ph, int sp, double I,
                          double g, double w) {
  coupling.push_back(a);
  transverse.push_back(bx);
  theta.push_back(th);
  phi.push_back(ph);
  species.push_back(sp);
  spin.push_back(I);
  gyro.push_back(g);
  weight.push_back(w);
}

void SiteTable::check_consistent() const {
  std::size_t n = coupling.size();
  if (transverse.size() != n || theta.size() != n || phi.size() != n ||
      species.size() != n || spin.size() != n || gyro.size() != n || weight.size() != n)
    throw ConfigError("site table columns have inconsistent lengths");
}

std::size_t tail_cutoff(const DeviceGeometry& geom, double relative_cut) {
  geom.validate();
  return static_cast<std::size_t>(std::ceil(geom.nuclei * x_max(geom, relative_cut)));
}

SiteAngles draw_angles(const DeviceGeometry& geom, std::size_t count, std::uint64_t seed) {
  SiteAngles a;
  a.theta.resize(count);
  a.phi.assign(count, 0.0);
  a.axis_cosine.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    switch (geom.dim) {
      case 1:
        a.theta[k] = (k % 2 == 0) ? 0.0 : units::kPi;
        a.axis_cosine[k] = (k % 2 == 0) ? 1.0 : -1.0;
        break;
      case 2: {
        double th = kTwoPi * rng::uniform(seed, rng::kTheta, k);
        a.theta[k] = th;
        a.axis_cosine[k] = std::cos(th);
        break;
      }
      default: {
        double c = 2.0 * rng::uniform(seed, rng::kTheta, k) - 1.0;
        a.theta[k] = std::acos(c);
        a.phi[k] = kTwoPi * rng::uniform(seed, rng::kPhi, k);
        a.axis_cosine[k] = c;
        break;
      }
    }
  }
  return a;
}

double single_dot_coupling(const DeviceGeometry& geom, double total, double x) {
  double s = geom.dim / geom.q;
  double norm = geom.nuclei * s * std::tgamma(s);
  if (!std::isfinite(norm) || norm <= 0.0)
    throw ConfigError("single-dot normalization overflows for d/q = " + io::format_double(s));
  double decay = x > 0.0 ? std::exp(-std::pow(x, geom.q / geom.dim)) : 1.0;
  return total / norm * decay;
}

double double_dot_coupling(const DeviceGeometry& geom, double total, double x,
                           double axis_cosine) {
  require_double_dot_plane(geom);
  double eta = geom.eta();
  double p = geom.parity;
  double y = std::abs(2.0 * eta * std::sqrt(x) * axis_cosine);
  // [cosh(y) + p] e^{-x} / (e^{eta^2} + p), arranged to avoid overflow.
  double e2 = eta * eta;
  double num = 0.5 * std::exp(y - x - e2) * (1.0 + std::exp(-2.0 * y)) + p * std::exp(-x - e2);
  double den = 1.0 + p * std::exp(-e2);
  return total / geom.nuclei * num / den;
}

double st0_coupling(const DeviceGeometry& geom, double total, double x, double axis_cosine) {
  require_double_dot_plane(geom);
  double eta = geom.eta();
  double y = 2.0 * eta * std::sqrt(x) * axis_cosine;
  double ay = std::abs(y);
  double mag = std::exp(ay - x - eta * eta) * -std::expm1(-2.0 * ay);
  return total / geom.nuclei * std::copysign(mag, y);
}

std::vector<double> single_dot_couplings(const DeviceGeometry& geom, double total,
                                         std::size_t count) {
  if (geom.kind != DeviceKind::SingleDot)
    throw ConfigError("single_dot_couplings needs a single-dot geometry");
  std::vector<double> a(count);
  for (std::size_t k = 0; k < count; ++k)
    a[k] = single_dot_coupling(geom, total, static_cast<double>(k) / geom.nuclei);
  return a;
}

std::vector<double> double_dot_couplings(const DeviceGeometry& geom, double total,
                                         const SiteAngles& angles) {
  if (geom.kind != DeviceKind::DoubleDotDelocalized)
    throw ConfigError("double_dot_couplings needs a delocalized double-dot geometry");
  std::vector<double> a(angles.axis_cosine.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] = double_dot_coupling(geom, total, static_cast<double>(k) / geom.nuclei,
                               angles.axis_cosine[k]);
  return a;
}

std::vector<double> st0_couplings(const DeviceGeometry& geom, double total,
                                  const SiteAngles& angles) {
  if (geom.kind != DeviceKind::DoubleDotST0)
    throw ConfigError("st0_couplings needs a singlet-triplet double-dot geometry");
  std::vector<double> a(angles.axis_cosine.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] = st0_coupling(geom, total, static_cast<double>(k) / geom.nuclei,
                        angles.axis_cosine[k]);
  return a;
}

std::vector<double> gradient_fields(const DeviceGeometry& geom, double delta_bx,
                                    const SiteAngles& angles) {
  if (!(delta_bx >= 0.0)) throw ConfigError("gradient must be nonnegative");
  std::vector<double> b(angles.axis_cosine.size());
  for (std::size_t k = 0; k < b.size(); ++k)
    b[k] = radius_fraction(geom, static_cast<double>(k) / geom.nuclei) * delta_bx *
           angles.axis_cosine[k];
  return b;
}

namespace {

double coupling_at(const DeviceGeometry& geom, double total, double x, double c) {
  switch (geom.kind) {
    case DeviceKind::SingleDot: return single_dot_coupling(geom, total, x);
    case DeviceKind::DoubleDotDelocalized: return double_dot_coupling(geom, total, x, c);
    case DeviceKind::DoubleDotST0: return st0_coupling(geom, total, x, c);
  }
  return 0.0;
}

}  // namespace

SiteTable generate_sites(const DeviceGeometry& geom, double total_hyperfine, double delta_bx,
                         double spin, double gyro, std::uint64_t seed, std::size_t count) {
  geom.validate();
  if (count == 0) count = tail_cutoff(geom);
  SiteAngles angles = draw_angles(geom, count, seed);
  std::vector<double> a;
  switch (geom.kind) {
    case DeviceKind::SingleDot: a = single_dot_couplings(geom, total_hyperfine, count); break;
    case DeviceKind::DoubleDotDelocalized:
      a = double_dot_couplings(geom, total_hyperfine, angles);
      break;
    case DeviceKind::DoubleDotST0: a = st0_couplings(geom, total_hyperfine, angles); break;
  }
  std::vector<double> bx = gradient_fields(geom, delta_bx, angles);
  SiteTable t;
  t.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    t.push_back(a[k], bx[k], angles.theta[k], angles.phi[k], -1, spin, gyro);
  return t;
}

SiteTable assign_species(const SiteTable& shape, const MaterialPreset& material,
                         std::uint64_t seed) {
  if (material.total_abundance() > 1.0 + 1e-12)
    throw ConfigError("species abundances sum above 1");
  double g = material.g_factor;
  SiteTable t;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    double u = rng::uniform(seed, rng::kSpecies, k);
    double acc = 0.0;
    for (std::size_t s = 0; s < material.species.size(); ++s) {
      const auto& sp = material.species[s];
      acc += sp.abundance;
      if (u < acc) {
        t.push_back(shape.coupling[k] * sp.hyperfine, shape.transverse[k], shape.theta[k],
                    shape.phi[k], static_cast<int>(s), sp.spin, sp.gyro(g), shape.weight[k]);
        break;
      }
    }
  }
  return t;
}

SiteTable quadrature_sites(const DeviceGeometry& geom, double total_hyperfine,
                           double delta_bx, double spin, double gyro, QuadratureOrder order) {
  geom.validate();
  if (order.radial_panels < 1 || order.angular_nodes < 1)
    throw ConfigError("quadrature order must be positive");
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto& nodes = rule::abscissa();
  const auto& weights = rule::weights();

  // Full symmetric node list on [-1, 1].
  std::vector<double> gx, gw;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    gx.push_back(nodes[i]);
    gw.push_back(weights[i]);
    if (nodes[i] != 0.0) {
      gx.push_back(-nodes[i]);
      gw.push_back(weights[i]);
    }
  }

  std::vector<double> ang_theta, ang_cos, ang_w;
  if (geom.dim == 1) {
    ang_theta = {0.0, units::kPi};
    ang_cos = {1.0, -1.0};
    ang_w = {0.5, 0.5};
  } else if (geom.dim == 2) {
    int n = order.angular_nodes;
    for (int j = 0; j < n; ++j) {
      double th = kTwoPi * (j + 0.5) / n;
      ang_theta.push_back(th);
      ang_cos.push_back(std::cos(th));
      ang_w.push_back(1.0 / n);
    }
  } else {
    int panels = std::max(1, order.angular_nodes / static_cast<int>(gx.size()));
    double h = 2.0 / panels;
    for (int p = 0; p < panels; ++p) {
      double mid = -1.0 + (p + 0.5) * h;
      for (std::size_t i = 0; i < gx.size(); ++i) {
        double c = mid + 0.5 * h * gx[i];
        ang_theta.push_back(std::acos(c));
        ang_cos.push_back(c);
        ang_w.push_back(0.5 * 0.5 * h * gw[i]);
      }
    }
  }

  double rho_max = std::pow(x_max(geom, 1e-6), 1.0 / geom.dim);
  double h = rho_max / order.radial_panels;
  SiteTable t;
  t.reserve(static_cast<std::size_t>(order.radial_panels) * gx.size() * ang_w.size());
  for (int p = 0; p < order.radial_panels; ++p) {
    double mid = (p + 0.5) * h;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      double rho = mid + 0.5 * h * gx[i];
      double x = std::pow(rho, geom.dim);
      double radial_w = geom.nuclei * geom.dim * std::pow(rho, geom.dim - 1) * 0.5 * h * gw[i];
      for (std::size_t j = 0; j < ang_w.size(); ++j) {
        double c = ang_cos[j];
        t.push_back(coupling_at(geom, total_hyperfine, x, c), rho * delta_bx * c, ang_theta[j],
                    0.0, -1, spin, gyro, radial_w * ang_w[j]);
      }
    }
  }
  return t;
}

void write_sites_csv(std::ostream& os, const SiteTable& sites) {
  bool weighted = !sites.unit_weights();
  os << "k,A_k,b_k_x,theta_k,species,I,gamma" << (weighted ? ",weight" : "") << '\n';
  for (std::size_t k = 0; k < sites.size(); ++k) {
    os << k << ',' << io::format_double(sites.coupling[k]) << ','
       << io::format_double(sites.transverse[k]) << ',' << io::format_double(sites.theta[k])
       << ',' << sites.species[k] << ',' << io::format_double(sites.spin[k]) << ','
       << io::format_double(sites.gyro[k]);
    if (weighted) os << ',' << io::format_double(sites.weight[k]);
    os << '\n';
  }
}

}  // namespace hfgrad
