#include "hfgrad/closed_forms.hpp"

#include <cmath>

#include "hfgrad/error.hpp"
#include "hfgrad/parallel.hpp"
#include "hfgrad/units.hpp"

namespace hfgrad {

using cplx = std::complex<double>;

namespace {

double electron_phase(const EffectiveField& field, Frame frame, double t) {
  return field.protocol() == Protocol::FID && frame == Frame::Lab ? field.zeeman() * t : 0.0;
}

void require_unit_weights(const SiteTable& sites, const char* what) {
  if (!sites.unit_weights())
    throw ConfigError(std::string(what) + " needs a sampled site table (all weights 1)");
}

void require_state(const SiteTable& sites, const NarrowedState& state) {
  if (state.m.size() != sites.size())
    throw ConfigError("narrowed state does not match the site table");
}

double norm2(const Vec3& h) { return h[0] * h[0] + h[1] * h[1] + h[2] * h[2]; }

}  // namespace

double thermal_exponent(const SiteTable& sites, const EffectiveField& field, double t) {
  double g = 0.0;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    double I = sites.spin[k];
    g += sites.weight[k] * I * (I + 1.0) * norm2(field.at(sites, k, t));
  }
  return g / 6.0;
}

double transverse_exponent(const SiteTable& sites, const EffectiveField& field, double t) {
  double g = 0.0;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    double I = sites.spin[k];
    Vec3 h = field.at(sites, k, t);
    g += sites.weight[k] * I * (I + 1.0) * (h[0] * h[0] + h[1] * h[1]);
  }
  return g / 6.0;
}

double hahn_thermal_exponent(const SiteTable& sites, double zeeman, double t) {
  double g = 0.0;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    double I = sites.spin[k];
    double gx = sites.gyro[k] * sites.transverse[k];
    if (gx == 0.0) continue;
    double w = std::abs(sites.gyro[k]) * std::hypot(sites.transverse[k], zeeman);
    double s = std::sin(0.5 * w * t);
    double amp = sites.coupling[k] * gx / (w * w);
    g += sites.weight[k] * I * (I + 1.0) * amp * amp * s * s * s * s;
  }
  return 8.0 / 3.0 * g;
}

double short_time_rate4(const SiteTable& sites) {
  double r = 0.0;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    double I = sites.spin[k];
    double v = sites.coupling[k] * sites.gyro[k] * sites.transverse[k];
    r += sites.weight[k] * I * (I + 1.0) * v * v;
  }
  return r / 6.0;
}

double short_time_t2e(const SiteTable& sites) {
  double r = short_time_rate4(sites);
  if (!(r > 0.0)) throw UndefinedQuantityError("T2e is infinite without a gradient");
  return std::pow(r, -0.25);
}

CoherenceCurve thermal_gaussian(const SiteTable& sites, const EffectiveField& field,
                                const std::vector<double>& times, Frame frame,
                                unsigned workers) {
  sites.check_consistent();
  CoherenceCurve c = make_curve(field.protocol(), frame, "gaussian", times);
  parallel_for(times.size(), workers, [&](std::size_t i) {
    double t = times[i];
    c.value[i] = std::polar(std::exp(-thermal_exponent(sites, field, t)),
                            electron_phase(field, c.frame, t));
  });
  return c;
}

CoherenceCurve narrowed_gaussian(const SiteTable& sites, const NarrowedState& state,
                                 const EffectiveField& field, const std::vector<double>& times,
                                 Frame frame, unsigned workers) {
  sites.check_consistent();
  require_unit_weights(sites, "narrowed_gaussian");
  require_state(sites, state);
  CoherenceCurve c = make_curve(field.protocol(), frame, "gaussian", times);
  parallel_for(times.size(), workers, [&](std::size_t i) {
    double t = times[i];
    double g = 0.0, phase = 0.0;
    for (std::size_t k = 0; k < sites.size(); ++k) {
      double I = sites.spin[k];
      Vec3 h = field.at(sites, k, t);
      g += I * (I + 1.0) * (h[0] * h[0] + h[1] * h[1]);
      phase += h[2] * state.m[k];
    }
    c.value[i] = std::polar(std::exp(-g / 6.0), phase + electron_phase(field, c.frame, t));
  });
  return c;
}

CoherenceCurve hahn_short_time(const SiteTable& sites, const std::vector<double>& pulse_times) {
  sites.check_consistent();
  CoherenceCurve c = make_curve(Protocol::HahnEcho, Frame::Rotating, "short_time", pulse_times);
  double r4 = short_time_rate4(sites);
  for (std::size_t i = 0; i < pulse_times.size(); ++i) {
    double t = pulse_times[i];
    c.value[i] = std::exp(-r4 * t * t * t * t);
  }
  return c;
}

cplx half_spin_factor(const Vec3& h, double m) {
  double a = std::sqrt(norm2(h));
  if (a == 0.0) return 1.0;
  return {std::cos(0.5 * a), 2.0 * m * h[2] / a * std::sin(0.5 * a)};
}

CoherenceCurve nongaussian_half_spin(const SiteTable& sites, const NarrowedState& state,
                                     const EffectiveField& field,
                                     const std::vector<double>& times, Frame frame,
                                     unsigned workers) {
  sites.check_consistent();
  require_unit_weights(sites, "nongaussian_half_spin");
  require_state(sites, state);
  for (double I : sites.spin)
    if (I != 0.5) throw UnsupportedError("the non-Gaussian product needs I = 1/2 on every site");
  CoherenceCurve c = make_curve(field.protocol(), frame, "nongaussian", times);
  const double two_pi = 2.0 * units::kPi;
  parallel_for(times.size(), workers, [&](std::size_t i) {
    double t = times[i];
    double logm = 0.0, phase = 0.0;
    bool zero = false;
    for (std::size_t k = 0; k < sites.size() && !zero; ++k) {
      Vec3 h = field.at(sites, k, t);
      cplx f = half_spin_factor(h, state.m[k]);
      if (h[0] == 0.0 && h[1] == 0.0) {
        phase = std::remainder(phase + std::arg(f), two_pi);
        continue;
      }
      double a = std::abs(f);
      if (a == 0.0) {
        zero = true;
        break;
      }
      logm += std::log(a);
      phase = std::remainder(phase + std::arg(f), two_pi);
    }
    phase += electron_phase(field, c.frame, t);
    c.value[i] = (zero || logm < -200.0) ? cplx(0.0) : std::polar(std::exp(logm), phase);
  });
  return c;
}

}  // namespace hfgrad
