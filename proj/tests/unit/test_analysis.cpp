#include <doctest.h>

#include <cmath>

#include "hfgrad/analysis.hpp"
#include "hfgrad/closed_forms.hpp"
#include "hfgrad/error.hpp"
#include "hfgrad/geometry.hpp"
#include "hfgrad/units.hpp"

using namespace hfgrad;

namespace {

DeviceGeometry single(int d, double q, double N) {
  DeviceGeometry g;
  g.dim = d;
  g.q = q;
  g.nuclei = N;
  g.bohr_radius_nm = 10.0;
  return g;
}

DeviceGeometry dd(DeviceKind kind, double eta, int parity, double N) {
  DeviceGeometry g;
  g.kind = kind;
  g.parity = parity;
  g.nuclei = N;
  g.bohr_radius_nm = 10.0;
  g.spacing_nm = 2.0 * eta * g.bohr_radius_nm;
  return g;
}

double monte_carlo_sigma2(const DeviceGeometry& g, std::uint64_t seed) {
  auto t = generate_sites(g, 1.0, 1.0, 0.5, 0.0, seed);
  double s = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    double v = t.coupling[k] * t.transverse[k];
    s += v * v;
  }
  return s;
}

BathComposition homonuclear(double A, double gyro, double spin = 0.5) {
  BathComposition b;
  b.species = {{"x", 1.0, spin, gyro, A}};
  return b;
}

}  // namespace

TEST_CASE("sigma squared closed forms") {
  auto g = single(2, 2, 1000.0);
  CHECK(sigma_squared(g, 3.0, 2.0) == doctest::Approx(36.0 / 8000.0).epsilon(1e-14));
  CHECK(sigma_squared(g, 3.0, 0.0) == 0.0);
  auto st = dd(DeviceKind::DoubleDotST0, 1.0, +1, 100.0);
  CHECK(sigma_squared(st, 1.0, 1.0) == doctest::Approx((5.0 - std::exp(-2.0)) / 400.0));
}

TEST_CASE("sigma squared matches site-resolved Monte Carlo sums") {
  for (int d : {1, 2, 3})
    for (double q : {1.0, 2.0}) {
      auto g = single(d, q, 1e6 / std::pow(std::log(1e6), d / q));
      double mc = monte_carlo_sigma2(g, 100 + d);
      CHECK(mc == doctest::Approx(sigma_squared(g, 1.0, 1.0)).epsilon(0.01));
    }
  for (double eta : {0.5, 1.0, 2.0, 4.0}) {
    double span = eta + std::sqrt(std::log(1e6));
    double N = 1e6 / (span * span);
    for (int p : {+1, -1}) {
      auto g = dd(DeviceKind::DoubleDotDelocalized, eta, p, N);
      CHECK(monte_carlo_sigma2(g, 7) == doctest::Approx(sigma_squared(g, 1.0, 1.0)).epsilon(0.01));
    }
    auto st = dd(DeviceKind::DoubleDotST0, eta, +1, N);
    CHECK(monte_carlo_sigma2(st, 8) == doctest::Approx(sigma_squared(st, 1.0, 1.0)).epsilon(0.01));
  }
}

TEST_CASE("dephasing-time identities and scaling") {
  auto bath = homonuclear(2.0e6, 1e-3, 1.5);
  auto g = single(2, 2, 1e4);
  double db = 5e6;
  double T2 = t2_gradient(bath, g, 1e9, db);
  double T2e = t2e_gradient(bath, g, db);
  double nuclear_zeeman = bath.single().gyro * 1e9;
  CHECK(std::abs(nuclear_zeeman / T2 - 1.0 / (T2e * T2e)) <= 1e-12 / (T2e * T2e));
  CHECK(t2_gradient(bath, g, 2e9, db) == doctest::Approx(2.0 * T2).epsilon(1e-15));
  CHECK_THROWS_AS(t2_gradient(bath, g, 0.0, db), UndefinedQuantityError);
  CHECK_THROWS_AS(t2e_gradient(bath, g, 0.0), UndefinedQuantityError);
}

TEST_CASE("closed-form short-time T2e equals the site-resolved one") {
  auto g = single(2, 2, 2000.0);
  auto bath = homonuclear(3e6, 2e-3, 1.5);
  auto sites = quadrature_sites(g, 3e6, 4e6, 1.5, 2e-3);
  CHECK(short_time_t2e(sites) == doctest::Approx(t2e_gradient(bath, g, 4e6)).epsilon(1e-4));
}

TEST_CASE("critical field") {
  auto g = single(2, 2, 1e4);
  auto bath = homonuclear(1e6, 1e-3);
  double bc = critical_zeeman(bath, g, 1e7);
  double expected = std::pow(0.75 * sigma_squared(g, 1e6, 1e7) / 1e-6, 0.25);
  CHECK(bc == doctest::Approx(expected).epsilon(1e-14));
  CHECK_THROWS_AS(critical_zeeman(bath, g, 0.0), UndefinedQuantityError);
}

TEST_CASE("Markovian quantities") {
  CHECK(markov_coefficient(single(2, 2, 1.0)) ==
        doctest::Approx(std::sqrt(2 * units::kPi) / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(markov_coefficient(dd(DeviceKind::DoubleDotDelocalized, 1.0, 1, 10.0)),
                  UnsupportedError);
  CHECK_THROWS_AS(markov_coefficient(single(1, 2, 10.0)), UnsupportedError);
  auto g = single(2, 2, 1e4);
  SpeciesTerm s{"x", 1.0, 0.5, 2e-3, 3e8};
  BathComposition bath;
  bath.species = {s};
  CHECK(markov_crossover_gradient(bath, g) ==
        doctest::Approx(markov_crossover_closed_form(s, 1e4)).epsilon(1e-12));
  double T = markov_t2(bath, g, 1e9);
  CHECK(markov_t2(bath, g, 2e9) == doctest::Approx(2 * T));
}

TEST_CASE("Markovian rate from a brute-force site sum of the echo exponent") {
  // At b = 0 the sin^4 exponent grows linearly at long times with slope 1/T2M.
  for (auto [d, q] : {std::pair{2, 2.0}, std::pair{3, 1.0}, std::pair{3, 2.0}, std::pair{2, 1.0}}) {
    auto g = single(d, q, 1e4);
    double A = 1e6, gyro = 1e-3, db = 1e9;
    auto sites = quadrature_sites(g, A, db, 0.5, gyro, QuadratureOrder{48, 16384});
    auto bath = homonuclear(A, gyro);
    double t0 = 40.0 / (gyro * db);
    double slope = (hahn_thermal_exponent(sites, 0.0, 4 * t0) -
                    hahn_thermal_exponent(sites, 0.0, 2 * t0)) / (2 * t0);
    // Rate per pulse time t; the echo is read out at 2t.
    CHECK(slope == doctest::Approx(1.0 / markov_t2(bath, g, db)).epsilon(0.03));
  }
}

TEST_CASE("Magnus validity scales") {
  SpeciesTerm s{"x", 1.0, 0.5, 1e-3, 1e9};
  auto v = magnus_validity(s, 1e4, 0.0, 1e8);
  CHECK_FALSE(v.large_field);
  CHECK(v.b_min == doctest::Approx(1e9 / (1e-3 * std::pow(1e4, 5.0 / 6.0))));
  CHECK(v.t_crit == std::min({v.t1_small, v.t2_small, v.t3_small}));
  CHECK(std::isinf(v.t1_large));
  auto w = magnus_validity(s, 1e4, 1e9, 1e8);
  CHECK(w.large_field);
  CHECK(w.t_crit == std::min({w.t1_large, w.t2_large, w.t3_large}));
  CHECK(w.advisory);
}

TEST_CASE("Gaussian validity ratios") {
  SpeciesTerm s{"x", 1.0, 0.5, 1e-3, 1e9};
  auto a = gaussian_validity(s, 250, 1e9, 1e7);
  CHECK(a.ratio_fid == doctest::Approx(3.976).epsilon(1e-3));
  CHECK(a.marginal);
  auto b = gaussian_validity(s, 2000, 1e9, 1e7);
  CHECK(b.ratio_fid == doctest::Approx(6.687).epsilon(1e-3));
  CHECK_FALSE(b.marginal);
  CHECK(gaussian_validity(s, 1e12, 1e9, 1e7).motional_criterion);
}

TEST_CASE("singlet-triplet leakage estimate") {
  CHECK(st0_leakage_estimate(1.0, 0.0, 100, 1.0, std::nullopt).plateau == 0.0);
  CHECK(st0_leakage_estimate(2.0, 1.0, 100, 1.0, std::nullopt).plateau == 0.25);
  auto e = st0_leakage_estimate(2.0, 1.0, 4.4e6, 1.3e11, 100e-6);
  REQUIRE(e.trust_horizon);
  CHECK(*e.trust_horizon == doctest::Approx(400e-6));
  CHECK(e.onset == doctest::Approx(std::sqrt(4.4e6) / 1.3e11));
  CHECK_THROWS_AS(st0_leakage_estimate(0.0, 1.0, 1, 1, std::nullopt), UndefinedQuantityError);
}

TEST_CASE("timescale report tolerates undefined entries") {
  ReportInputs in;
  in.bath = homonuclear(1e9, 1e-3);
  in.aggregate = in.bath.single();
  in.geom = single(2, 2, 1e4);
  in.zeeman = 0.0;
  in.delta_bx = 1e8;
  in.device_bx = 1e8;
  auto r = timescale_report(in);
  CHECK_FALSE(r.t2_gradient);
  CHECK(r.t2e_gradient);
  CHECK(r.t2_markov);
  CHECK_FALSE(r.notes.empty());
  auto j = to_json(r, 2.0);
  CHECK(j["T2_gradient_s"].is_null());
  CHECK(j["T2e_gradient_s"].is_number());
  CHECK_FALSE(format_report(r, 2.0).empty());
}
