#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hfgrad/magnus_fields.hpp"
#include "hfgrad/units.hpp"
#include "oracles.hpp"

using namespace hfgrad;

namespace {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

double dist(const Vec3& a, const Vec3& b) {
  return norm({a[0] - b[0], a[1] - b[1], a[2] - b[2]});
}

}  // namespace

TEST_CASE("fields match quadrature of the interaction-picture trajectory") {
  std::mt19937_64 g(31337);
  double worst_fid = 0.0, worst_he = 0.0;
  for (int set = 0; set < 100; ++set) {
    double A = oracle::uniform(g, -3.0, 3.0);
    double gyro = oracle::uniform(g, 0.05, 2.0);
    double b = oracle::uniform(g, 0.0, 3.0);
    double bx = oracle::uniform(g, -3.0, 3.0);
    double omega = gyro * std::hypot(b, bx);
    // Spread omega*t over 1e-3 .. 30 so both evaluation branches are hit.
    double x = std::pow(10.0, oracle::uniform(g, -3.0, 1.5));
    double t = x / omega;
    Vec3 h = fid_field(A, bx, gyro, b, t);
    Vec3 hq = oracle::fid_field_quadrature(A, bx, gyro, b, t);
    Vec3 e = hahn_field(A, bx, gyro, b, t);
    Vec3 eq = oracle::hahn_field_quadrature(A, bx, gyro, b, t);
    // Relative error, floored near the exact zeros of the echo field (revivals).
    double echo_scale = 4.0 * std::abs(A * gyro * bx) / (omega * omega);
    worst_fid = std::max(worst_fid, dist(h, hq) / (norm(hq) + 1e-14 * std::abs(A) * t));
    worst_he = std::max(worst_he, dist(e, eq) / (norm(eq) + 1e-12 * echo_scale));
  }
  CHECK(worst_fid < 1e-10);
  CHECK(worst_he < 1e-10);
}

TEST_CASE("series branch joins the trigonometric branch continuously") {
  double A = 1.3, gyro = 0.7, b = 0.4, bx = 0.9;
  double omega = gyro * std::hypot(b, bx);
  double below = (kSeriesThreshold * (1 - 1e-9)) / omega;
  double above = (kSeriesThreshold * (1 + 1e-9)) / omega;
  Vec3 lo = hahn_field(A, bx, gyro, b, below), hi = hahn_field(A, bx, gyro, b, above);
  CHECK(dist(lo, hi) / norm(hi) < 1e-7);
  Vec3 flo = fid_field(A, bx, gyro, b, below), fhi = fid_field(A, bx, gyro, b, above);
  CHECK(dist(flo, fhi) / norm(fhi) < 1e-7);
  for (double x : {1e-8, 1e-5, 3e-3}) {
    double t = x / omega;
    Vec3 e = hahn_field(A, bx, gyro, b, t);
    Vec3 eq = oracle::hahn_field_quadrature(A, bx, gyro, b, t);
    CHECK(dist(e, eq) / norm(eq) < 1e-8);
  }
}

TEST_CASE("zero time and zero transverse field") {
  Vec3 zero{0.0, 0.0, 0.0};
  CHECK(fid_field(1.0, 0.5, 0.3, 1.0, 0.0) == zero);
  CHECK(hahn_field(1.0, 0.5, 0.3, 1.0, 0.0) == zero);
  Vec3 h = fid_field(1.7, 0.0, 0.3, 2.0, 4.0);
  CHECK(h[0] == 0.0);
  CHECK(h[1] == 0.0);
  CHECK(h[2] == doctest::Approx(1.7 * 4.0));
  CHECK(hahn_field(1.7, 0.0, 0.3, 2.0, 4.0) == zero);
}

TEST_CASE("degenerate omega = 0") {
  Vec3 h = fid_field(2.0, 0.0, 0.5, 0.0, 3.0);
  CHECK(h[2] == doctest::Approx(6.0));
  CHECK(std::isfinite(h[0]));
  Vec3 e = hahn_field(2.0, 0.0, 0.5, 0.0, 3.0);
  for (double c : e) CHECK(c == 0.0);
  Vec3 g0 = fid_field(2.0, 1.0, 0.0, 1.0, 3.0);
  CHECK(g0[2] == doctest::Approx(6.0));
  for (double c : g0) CHECK(std::isfinite(c));
}

TEST_CASE("echo field is bounded and revives") {
  double A = 0.8, gyro = 0.4, b = 1.1, bx = -0.6;
  auto k = kinematics(gyro, b, bx);
  double bound = 8.0 * std::abs(A * gyro * bx) / (k.omega * k.omega);
  double sup = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    double t = 40.0 * i / 20000.0;
    sup = std::max(sup, norm(hahn_field(A, bx, gyro, b, t)));
  }
  CHECK(sup <= bound);
  // |h| = 2 (A gamma b^x / omega^2)(1 - cos omega t), so the sup is half the bound.
  CHECK(sup == doctest::Approx(0.5 * bound).epsilon(1e-6));
  for (int n = 1; n <= 3; ++n) {
    Vec3 e = hahn_field(A, bx, gyro, b, 2 * units::kPi * n / k.omega);
    CHECK(norm(e) < 1e-12 * bound);
  }
}

TEST_CASE("effective field provider and csv dump") {
  SiteTable s;
  s.push_back(1.0, 0.5, 0, 0, -1, 0.5, 0.2);
  EffectiveField f(Protocol::HahnEcho, 0.7);
  CHECK(f.at(s, 0, 2.0) == hahn_field(1.0, 0.5, 0.2, 0.7, 2.0));
  std::ostringstream os;
  write_fields_csv(os, s, f, {0.0, 1.0});
  CHECK(os.str().rfind("k,t_s,h_x,h_y,h_z\n0,0,0,0,0\n", 0) == 0);
}
