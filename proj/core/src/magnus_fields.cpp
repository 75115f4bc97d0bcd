#include "hfgrad/magnus_fields.hpp"

#include <cmath>
#include <ostream>

#include "hfgrad/io.hpp"

namespace hfgrad {

namespace {

// (t - sin(wt)/w) / w^2
double s3(double w, double t) {
  double x = w * t;
  if (std::abs(x) < kSeriesThreshold) {
    double x2 = x * x;
    return t * t * t * (1.0 / 6 - x2 * (1.0 / 120 - x2 * (1.0 / 5040 - x2 / 362880)));
  }
  return (t - std::sin(x) / w) / (w * w);
}

// (1 - cos(wt)) / w^2
double c2(double w, double t) {
  double x = w * t;
  if (std::abs(x) < kSeriesThreshold) {
    double x2 = x * x;
    return t * t * (0.5 - x2 * (1.0 / 24 - x2 * (1.0 / 720 - x2 / 40320)));
  }
  double h = std::sin(0.5 * x);
  return 2.0 * h * h / (w * w);
}

// (2 cos x - cos 2x - 1) / w^2
double f2y(double w, double t) {
  double x = w * t;
  if (std::abs(x) < kSeriesThreshold) {
    double x2 = x * x;
    return t * t * (1.0 - x2 * (7.0 / 12 - x2 * (31.0 / 360 - x2 * 254.0 / 40320)));
  }
  double h = std::sin(0.5 * x);
  return 4.0 * std::cos(x) * h * h / (w * w);
}

// (sin 2x - 2 sin x) / w^3
double f3z(double w, double t) {
  double x = w * t;
  if (std::abs(x) < kSeriesThreshold) {
    double x2 = x * x;
    return t * t * t * (-1.0 + x2 * (0.25 - x2 * (1.0 / 40 - x2 * 510.0 / 362880)));
  }
  double h = std::sin(0.5 * x);
  return -4.0 * std::sin(x) * h * h / (w * w * w);
}

}  // namespace

KinematicSite kinematics(double gyro, double zeeman, double transverse) {
  KinematicSite s;
  double gx = gyro * transverse, gz = gyro * zeeman;
  s.omega = std::hypot(gx, gz);
  if (s.omega > 0.0) s.n = {gx / s.omega, 0.0, gz / s.omega};
  s.omega = std::abs(s.omega);
  return s;
}

Vec3 fid_field(double coupling, double transverse, double gyro, double zeeman, double t) {
  double w = std::abs(gyro) * std::hypot(transverse, zeeman);
  double gx = gyro * transverse, gz = gyro * zeeman;
  double a = s3(w, t);
  return {coupling * gx * gz * a, coupling * gx * c2(w, t), coupling * (t - gx * gx * a)};
}

Vec3 hahn_field(double coupling, double transverse, double gyro, double zeeman, double t) {
  double w = std::abs(gyro) * std::hypot(transverse, zeeman);
  double gx = gyro * transverse, gz = gyro * zeeman;
  double pre = coupling * gx;
  double f3 = f3z(w, t);
  return {pre * gz * f3, -pre * f2y(w, t), -pre * gx * f3};
}

void write_fields_csv(std::ostream& os, const SiteTable& sites, const EffectiveField& field,
                      const std::vector<double>& times) {
  os << "k,t_s,h_x,h_y,h_z\n";
  for (std::size_t k = 0; k < sites.size(); ++k) {
    for (double t : times) {
      Vec3 h = field.at(sites, k, t);
      os << k << ',' << io::format_double(t) << ',' << io::format_double(h[0]) << ','
         << io::format_double(h[1]) << ',' << io::format_double(h[2]) << '\n';
    }
  }
}

}  // namespace hfgrad
