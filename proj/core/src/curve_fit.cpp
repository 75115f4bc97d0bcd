#include "hfgrad/curve_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

namespace hfgrad::fit {

namespace {

constexpr double kInvE = 0.36787944117144233;

std::optional<LineFit> least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = n;
  return f;
}

}  // namespace

std::optional<double> one_over_e_time(const std::vector<double>& t, const std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > kInvE) continue;
    if (i == 0) return t[0];
    double t0 = t[i - 1], t1 = t[i], y0 = y[i - 1], y1 = y[i];
    if (t0 > 0.0 && y0 < 1.0 && y1 > 0.0) {
      double x0 = std::log(t0), x1 = std::log(t1);
      double u0 = std::log(-std::log(y0)), u1 = std::log(-std::log(y1));
      if (u1 != u0) return std::exp(x0 + (0.0 - u0) * (x1 - x0) / (u1 - u0));
    }
    return t0 + (kInvE - y0) * (t1 - t0) / (y1 - y0);
  }
  return std::nullopt;
}

std::optional<double> stretch_exponent(const std::vector<double>& t, const std::vector<double>& y,
                                       double lo, double hi) {
  std::vector<double> xs, us;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 0.0 && y[i] > lo && y[i] < hi) {
      xs.push_back(std::log(t[i]));
      us.push_back(std::log(-std::log(y[i])));
    }
  }
  auto f = least_squares(xs, us);
  if (!f) return std::nullopt;
  return f->slope;
}

std::optional<double> stretch_exponent_window(const std::vector<double>& t,
                                              const std::vector<double>& y, double t_lo,
                                              double t_hi) {
  std::vector<double> xs, us;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t_lo && t[i] <= t_hi && t[i] > 0.0 && y[i] > 0.0 && y[i] < 1.0) {
      xs.push_back(std::log(t[i]));
      us.push_back(std::log(-std::log(y[i])));
    }
  }
  auto f = least_squares(xs, us);
  if (!f) return std::nullopt;
  return f->slope;
}

std::optional<LineFit> log_linear(const std::vector<double>& t, const std::vector<double>& y,
                                  double t_lo, double t_hi) {
  std::vector<double> xs, us;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t_lo && t[i] <= t_hi && y[i] > 0.0) {
      xs.push_back(t[i]);
      us.push_back(std::log(y[i]));
    }
  }
  return least_squares(xs, us);
}

double plateau_level(const std::vector<double>& y, double fraction) {
  if (y.empty()) return 0.0;
  std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * y.size())));
  double s = 0.0;
  for (std::size_t i = y.size() - n; i < y.size(); ++i) s += y[i];
  return s / n;
}

double final_decade_drift(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.empty()) return 0.0;
  double t_end = t.back();
  double lo = INFINITY, hi = -INFINITY, sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0.1 * t_end) continue;
    lo = std::min(lo, y[i]);
    hi = std::max(hi, y[i]);
    sum += y[i];
    ++n;
  }
  if (n == 0 || sum == 0.0) return 0.0;
  return (hi - lo) / (sum / n);
}

std::optional<TailFit> tail_fit(const std::vector<double>& t, const std::vector<double>& y,
                                double t_lo, double t_hi) {
  std::vector<double> xs, ls;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= t_lo && t[i] <= t_hi && t[i] > 0.0 && y[i] > 0.0) {
      xs.push_back(t[i] / t_hi);
      ls.push_back(std::log(y[i]));
    }
  }
  if (xs.size() < 4) return std::nullopt;
  auto line_at = [&](double p) {
    std::vector<double> u(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) u[i] = std::pow(xs[i], p);
    return least_squares(u, ls);
  };
  auto residual = [&](double p) {
    auto f = line_at(p);
    if (!f) return std::numeric_limits<double>::infinity();
    double r = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double e = ls[i] - (f->intercept + f->slope * std::pow(xs[i], p));
      r += e * e;
    }
    return r;
  };
  auto [p, r] = boost::math::tools::brent_find_minima(residual, 0.1, 6.0, 40);
  auto f = line_at(p);
  if (!f) return std::nullopt;
  TailFit out;
  out.exponent = p;
  out.rate = -f->slope / std::pow(t_hi, p);
  out.amplitude = f->intercept;
  out.rms = std::sqrt(r / xs.size());
  out.points = xs.size();
  return out;
}

}  // namespace hfgrad::fit
