#pragma once

#include <vector>

#include "hfgrad/bath_states.hpp"
#include "hfgrad/curve.hpp"
#include "hfgrad/geometry.hpp"
#include "hfgrad/magnus_fields.hpp"

namespace hfgrad {

// Gaussian exponents (1/6) sum_k w_k I_k(I_k+1) |h_k|^2 and its transverse
// counterpart, evaluated at one time.
double thermal_exponent(const SiteTable& sites, const EffectiveField& field, double t);
double transverse_exponent(const SiteTable& sites, const EffectiveField& field, double t);

// Hahn-echo thermal exponent from the sin^4 closed form.
double hahn_thermal_exponent(const SiteTable& sites, double zeeman, double t);

// (1/T2e)^4 = (1/6) sum_k I_k(I_k+1) (A_k gamma_k b_k^x)^2 and T2e itself.
double short_time_rate4(const SiteTable& sites);
double short_time_t2e(const SiteTable& sites);

CoherenceCurve thermal_gaussian(const SiteTable& sites, const EffectiveField& field,
                                const std::vector<double>& times,
                                Frame frame = Frame::Rotating, unsigned workers = 0);
CoherenceCurve narrowed_gaussian(const SiteTable& sites, const NarrowedState& state,
                                 const EffectiveField& field, const std::vector<double>& times,
                                 Frame frame = Frame::Rotating, unsigned workers = 0);
CoherenceCurve hahn_short_time(const SiteTable& sites, const std::vector<double>& pulse_times);

// <m| exp(i h . sigma/2) |m> for a spin-1/2 site.
std::complex<double> half_spin_factor(const Vec3& h, double m);

CoherenceCurve nongaussian_half_spin(const SiteTable& sites, const NarrowedState& state,
                                     const EffectiveField& field,
                                     const std::vector<double>& times,
                                     Frame frame = Frame::Rotating, unsigned workers = 0);

}  // namespace hfgrad
