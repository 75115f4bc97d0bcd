#pragma once

#include <optional>
#include <vector>

namespace hfgrad::fit {

// First time at which y falls to 1/e. Interpolates ln(-ln y) linearly in
// ln t, which is exact for y = exp(-(t/T)^p).
std::optional<double> one_over_e_time(const std::vector<double>& t, const std::vector<double>& y);

// Least-squares slope of ln(-ln y) against ln t over points with
// y in (lo, hi) and t > 0: the exponent p of exp(-(t/T)^p).
std::optional<double> stretch_exponent(const std::vector<double>& t, const std::vector<double>& y,
                                       double lo = 0.05, double hi = 0.95);

// Same, restricted to t in [t_lo, t_hi] (y must lie in (0, 1)).
std::optional<double> stretch_exponent_window(const std::vector<double>& t,
                                              const std::vector<double>& y, double t_lo,
                                              double t_hi);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  std::size_t points = 0;
};

// ln y = intercept + slope * t over t in [t_lo, t_hi].
std::optional<LineFit> log_linear(const std::vector<double>& t, const std::vector<double>& y,
                                  double t_lo, double t_hi);

// ln y = amplitude - rate * t^exponent over t in [t_lo, t_hi], amplitude free.
// An exponential tail a exp(-t/T) gives exponent 1 whatever its amplitude a.
struct TailFit {
  double exponent = 0;
  double rate = 0;
  double amplitude = 0;  // ln a
  double rms = 0;
  std::size_t points = 0;
};
std::optional<TailFit> tail_fit(const std::vector<double>& t, const std::vector<double>& y,
                                double t_lo, double t_hi);

// Mean of y over the final `fraction` of the samples.
double plateau_level(const std::vector<double>& y, double fraction = 0.1);

// (max - min) / mean of y over t in [t_end / 10, t_end].
double final_decade_drift(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace hfgrad::fit
