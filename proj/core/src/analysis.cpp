#include "hfgrad/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hfgrad/error.hpp"
#include "hfgrad/io.hpp"
#include "hfgrad/units.hpp"

namespace hfgrad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double spin_weight(const SpeciesTerm& s) { return s.abundance * s.spin * (s.spin + 1.0); }

void require_single_dot(const DeviceGeometry& geom) {
  if (geom.kind != DeviceKind::SingleDot)
    throw UnsupportedError(
        "the exponential (Markovian) Hahn-echo regime does not occur for double dots: "
        "nuclei near the midplane are not coupled strongly enough to dominate, so the "
        "echo saturates at a plateau instead");
  if (geom.dim == 1)
    throw UnsupportedError("no Markovian regime in d = 1: no site has b_k^x = 0 at r > 0");
}

}  // namespace

BathComposition BathComposition::effective(const MaterialPreset& m, double hyperfine_override) {
  BathComposition b;
  b.g_factor = m.g_factor;
  SpeciesTerm s{m.effective.name, 1.0, m.effective.spin, m.effective.gyro(m.g_factor),
                hyperfine_override > 0.0 ? hyperfine_override : m.effective.hyperfine};
  b.species.push_back(s);
  return b;
}

BathComposition BathComposition::isotopes(const MaterialPreset& m) {
  BathComposition b;
  b.g_factor = m.g_factor;
  for (const auto& sp : m.species)
    b.species.push_back({sp.name, sp.abundance, sp.spin, sp.gyro(m.g_factor), sp.hyperfine});
  return b;
}

const SpeciesTerm& BathComposition::single() const {
  if (species.size() != 1) throw ConfigError("expected a homonuclear bath");
  return species.front();
}

double sigma_squared(const DeviceGeometry& geom, double A, double db) {
  geom.validate();
  const double N = geom.nuclei;
  const double ad2 = (A * db) * (A * db);
  switch (geom.kind) {
    case DeviceKind::SingleDot: {
      double d = geom.dim, q = geom.q, s = d / q;
      double g = std::tgamma(s);
      return ad2 / d * std::tgamma((2.0 + d) / q) /
             (N * s * std::pow(2.0, (2.0 + d) / q) * g * g);
    }
    case DeviceKind::DoubleDotDelocalized: {
      double e2 = geom.eta() * geom.eta();
      double p = geom.parity;
      double den = 1.0 + p * std::exp(-e2);
      double bracket = 3.0 * std::exp(-2.0 * e2) + p * 4.0 * std::exp(-1.5 * e2) * (1.0 + e2) +
                       (1.0 + 4.0 * e2);
      return ad2 / (den * den) * bracket / (16.0 * N);
    }
    case DeviceKind::DoubleDotST0: {
      double e2 = geom.eta() * geom.eta();
      return ad2 * (1.0 + 4.0 * e2 - std::exp(-2.0 * e2)) / (4.0 * N);
    }
  }
  return 0.0;
}

double t2_gradient(const BathComposition& bath, const DeviceGeometry& geom, double zeeman,
                   double delta_bx) {
  if (!(zeeman > 0.0)) throw UndefinedQuantityError("T2 (narrowed FID) diverges as 1/b at b = 0");
  double sum = 0.0;
  for (const auto& s : bath.species)
    sum += spin_weight(s) * sigma_squared(geom, s.hyperfine, delta_bx);
  if (!(sum > 0.0)) throw UndefinedQuantityError("T2 is infinite without a gradient");
  return zeeman / std::sqrt(sum / 6.0);
}

double t2e_gradient(const BathComposition& bath, const DeviceGeometry& geom, double delta_bx) {
  double sum = 0.0;
  for (const auto& s : bath.species)
    sum += spin_weight(s) * s.gyro * s.gyro * sigma_squared(geom, s.hyperfine, delta_bx);
  if (!(sum > 0.0)) throw UndefinedQuantityError("T2e is infinite without a gradient");
  return std::pow(sum / 6.0, -0.25);
}

double critical_zeeman(const BathComposition& bath, const DeviceGeometry& geom,
                       double delta_bx) {
  if (!(delta_bx > 0.0)) throw UndefinedQuantityError("critical field needs a gradient");
  double sum = 0.0;
  for (const auto& s : bath.species)
    sum += spin_weight(s) * sigma_squared(geom, s.hyperfine, delta_bx) / (s.gyro * s.gyro);
  return std::pow(sum, 0.25);
}

double markov_coefficient(const DeviceGeometry& geom) {
  require_single_dot(geom);
  double d = geom.dim, q = geom.q, s = d / q;
  // density of the axis cosine at zero: 1/pi on the circle, 1/2 on the sphere
  double rho0 = geom.dim == 2 ? 1.0 / units::kPi : 0.5;
  double g = s * std::tgamma(s);
  double radial = s * std::tgamma((d - 1.0) / q) / std::pow(2.0, (d - 1.0) / q);
  return 2.0 * units::kPi / 3.0 * rho0 * radial / (g * g);
}

double markov_t2(const BathComposition& bath, const DeviceGeometry& geom, double delta_bx) {
  double c = markov_coefficient(geom);
  if (!(delta_bx > 0.0)) throw UndefinedQuantityError("T2M needs a gradient");
  double sum = 0.0;
  for (const auto& s : bath.species)
    sum += spin_weight(s) * s.hyperfine * s.hyperfine / std::abs(s.gyro);
  return geom.nuclei * delta_bx / (c * sum);
}

double markov_crossover_gradient(const BathComposition& bath, const DeviceGeometry& geom) {
  double c = markov_coefficient(geom) / (8.0 * std::sqrt(2.0));
  double ke = 0.0, km = 0.0;
  for (const auto& s : bath.species) {
    ke += spin_weight(s) * s.gyro * s.gyro * sigma_squared(geom, s.hyperfine, 1.0);
    km += spin_weight(s) * s.hyperfine * s.hyperfine / std::abs(s.gyro);
  }
  ke /= 6.0;
  km *= c / geom.nuclei;
  return std::pow(std::pow(km, 4) / ke, 1.0 / 6.0);
}

double markov_crossover_closed_form(const SpeciesTerm& s, double nuclei) {
  return 1.0 / (2.0 * std::sqrt(3.0)) * std::cbrt(units::kPi / 2.0) *
         std::sqrt(s.spin * (s.spin + 1.0)) * s.hyperfine / (std::abs(s.gyro) * std::sqrt(nuclei));
}

MagnusValidity magnus_validity(const SpeciesTerm& s, double N, double b, double db) {
  MagnusValidity v;
  double g = std::abs(s.gyro), A = s.hyperfine;
  v.large_field = b >= db && b > 0.0;
  if (b > 0.0 && db > 0.0) {
    v.t1_large = std::pow(g, 3) * std::pow(N, 3) * std::pow(b, 7) / (std::pow(A, 4) * std::pow(db, 4));
    v.t2_large = g * std::pow(N, 1.5) * std::pow(b, 3) / (A * A * db * db);
    v.t3_large = std::cbrt(g) * N * std::pow(b, 5.0 / 3.0) /
                 (std::pow(A, 4.0 / 3.0) * std::pow(db, 4.0 / 3.0));
  } else {
    v.t1_large = v.t2_large = v.t3_large = kInf;
  }
  v.t1_small = std::pow(g * N * db, 3) / std::pow(A, 4);
  v.t2_small = g * std::pow(N, 1.5) * db / (A * A);
  v.t3_small = N * std::cbrt(g * db) / std::pow(A, 4.0 / 3.0);
  if (v.large_field)
    v.t_crit = std::min({v.t1_large, v.t2_large, v.t3_large});
  else
    v.t_crit = db > 0.0 ? std::min({v.t1_small, v.t2_small, v.t3_small}) : kInf;
  v.b_min = A / (g * std::pow(N, 5.0 / 6.0));
  v.lambda = b > 0.0 ? db / b : kInf;
  v.fid_criterion = v.lambda < std::pow(N, 5.0 / 6.0) * g * b / A;
  return v;
}

GaussianValidity gaussian_validity(const SpeciesTerm& s, double N, double b, double db) {
  GaussianValidity v;
  v.ratio_fid = std::pow(N, 0.25);
  v.ratio_he = std::pow(N, 0.125);
  v.marginal = v.ratio_fid < kGaussianMarginalRatio;
  v.lambda = b > 0.0 ? db / b : kInf;
  v.motional_criterion = v.lambda < std::sqrt(N) * std::abs(s.gyro) * b / s.hyperfine;
  return v;
}

LeakageEstimate st0_leakage_estimate(double b, double db, double N, double A,
                                     std::optional<double> tau_c) {
  if (!(b > 0.0)) throw UndefinedQuantityError("leakage estimate needs b > 0");
  LeakageEstimate e;
  double r = db / b;
  e.plateau = r * r;
  e.onset = std::sqrt(N) / A;
  if (tau_c) e.trust_horizon = db > 0.0 ? *tau_c / (r * r) : kInf;
  return e;
}

TimescaleReport timescale_report(const ReportInputs& in) {
  TimescaleReport r;
  const double g = in.bath.g_factor;
  auto attempt = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      r.notes.push_back(std::string(what) + ": " + e.what());
    }
  };
  attempt("T2_gradient", [&] { r.t2_gradient = t2_gradient(in.bath, in.geom, in.zeeman, in.delta_bx); });
  attempt("T2e_gradient", [&] { r.t2e_gradient = t2e_gradient(in.bath, in.geom, in.delta_bx); });
  attempt("critical_field", [&] {
    r.critical_zeeman = critical_zeeman(in.bath, in.geom, in.delta_bx);
    r.critical_field_tesla = units::field_from_zeeman(*r.critical_zeeman, g);
  });
  attempt("markov", [&] {
    r.markov_gradient = markov_crossover_gradient(in.bath, in.geom);
    r.markov_gradient_tesla = units::field_from_zeeman(*r.markov_gradient, g);
    r.t2_markov = markov_t2(in.bath, in.geom, in.delta_bx);
  });
  r.magnus = magnus_validity(in.aggregate, in.geom.nuclei, in.zeeman, in.device_bx);
  r.b_min_tesla = units::field_from_zeeman(r.magnus->b_min, g);
  r.gaussian = gaussian_validity(in.aggregate, in.geom.nuclei, in.zeeman, in.device_bx);
  if (in.geom.kind == DeviceKind::DoubleDotST0) {
    attempt("leakage", [&] {
      r.leakage = st0_leakage_estimate(in.zeeman, in.device_bx, in.geom.nuclei,
                                       in.aggregate.hyperfine, in.correlation_time);
    });
  }
  return r;
}

namespace {

nlohmann::json num(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

}  // namespace

nlohmann::json to_json(const TimescaleReport& r, double) {
  nlohmann::json j;
  j["T2_gradient_s"] = num(r.t2_gradient);
  j["T2e_gradient_s"] = num(r.t2e_gradient);
  j["T2M_gradient_s"] = num(r.t2_markov);
  j["critical_zeeman_rad_s"] = num(r.critical_zeeman);
  j["critical_field_T"] = num(r.critical_field_tesla);
  j["markov_gradient_rad_s"] = num(r.markov_gradient);
  j["markov_gradient_T"] = num(r.markov_gradient_tesla);
  if (r.magnus) {
    const auto& m = *r.magnus;
    j["magnus"] = {{"advisory", m.advisory},
                   {"regime", m.large_field ? "large_b" : "small_b"},
                   {"t1_large_s", num(m.t1_large)},
                   {"t2_large_s", num(m.t2_large)},
                   {"t3_large_s", num(m.t3_large)},
                   {"t1_small_s", num(m.t1_small)},
                   {"t2_small_s", num(m.t2_small)},
                   {"t3_small_s", num(m.t3_small)},
                   {"t_crit_s", num(m.t_crit)},
                   {"b_min_rad_s", num(m.b_min)},
                   {"B_min_T", num(r.b_min_tesla)},
                   {"lambda", num(m.lambda)},
                   {"fid_criterion_met", m.fid_criterion}};
  }
  if (r.gaussian) {
    const auto& gv = *r.gaussian;
    j["gaussian"] = {{"advisory", gv.advisory},
                     {"ratio_fid", gv.ratio_fid},
                     {"ratio_he", gv.ratio_he},
                     {"marginal", gv.marginal},
                     {"lambda", num(gv.lambda)},
                     {"motional_criterion_met", gv.motional_criterion}};
  }
  if (r.leakage) {
    j["leakage"] = {{"advisory", r.leakage->advisory},
                    {"plateau", r.leakage->plateau},
                    {"onset_s", r.leakage->onset},
                    {"trust_horizon_s", num(r.leakage->trust_horizon)}};
  }
  j["notes"] = r.notes;
  return j;
}

std::string format_report(const TimescaleReport& r, double) {
  std::ostringstream os;
  auto row = [&](const std::string& name, std::optional<double> v, const std::string& unit) {
    os << name;
    for (std::size_t i = name.size(); i < 28; ++i) os << ' ';
    if (v && std::isfinite(*v))
      os << io::format_double(*v) << ' ' << unit;
    else
      os << "n/a";
    os << '\n';
  };
  row("T2_gradient", r.t2_gradient, "s");
  row("T2e_gradient", r.t2e_gradient, "s");
  row("T2M_gradient", r.t2_markov, "s");
  row("B_c", r.critical_field_tesla, "T");
  row("dB_M", r.markov_gradient_tesla, "T");
  if (r.magnus) {
    row("t_crit (advisory)", r.magnus->t_crit, "s");
    row("B_min (advisory)", r.b_min_tesla, "T");
  }
  if (r.gaussian) {
    row("N^{1/4}", r.gaussian->ratio_fid, r.gaussian->marginal ? "(marginal)" : "");
    row("N^{1/8}", r.gaussian->ratio_he, "");
  }
  if (r.leakage) {
    row("leakage plateau", r.leakage->plateau, "");
    row("leakage onset", r.leakage->onset, "s");
    row("leakage trust horizon", r.leakage->trust_horizon, "s");
  }
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  return os.str();
}

}  // namespace hfgrad
