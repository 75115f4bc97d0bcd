#pragma once

#include <iosfwd>
#include <vector>

#include "hfgrad/bath_states.hpp"
#include "hfgrad/curve.hpp"
#include "hfgrad/geometry.hpp"

namespace hfgrad {

struct KinematicSite {
  double omega = 0.0;  // gamma sqrt(b^2 + (b^x)^2)
  Vec3 n{0.0, 0.0, 1.0};
};

KinematicSite kinematics(double gyro, double zeeman, double transverse);

// Below this value of omega*t the trigonometric combinations are replaced by
// their Taylor series through x^6.
inline constexpr double kSeriesThreshold = 1e-2;

Vec3 fid_field(double coupling, double transverse, double gyro, double zeeman, double t);
// t is the pulse time; the echo is read out at 2t.
Vec3 hahn_field(double coupling, double transverse, double gyro, double zeeman, double t);

class EffectiveField {
 public:
  EffectiveField(Protocol protocol, double zeeman) : protocol_(protocol), zeeman_(zeeman) {}

  Protocol protocol() const { return protocol_; }
  double zeeman() const { return zeeman_; }

  Vec3 at(const SiteTable& sites, std::size_t k, double t) const {
    return protocol_ == Protocol::FID
               ? fid_field(sites.coupling[k], sites.transverse[k], sites.gyro[k], zeeman_, t)
               : hahn_field(sites.coupling[k], sites.transverse[k], sites.gyro[k], zeeman_, t);
  }

 private:
  Protocol protocol_;
  double zeeman_;
};

// Debug dump: k, t, h_x, h_y, h_z per site and time.
void write_fields_csv(std::ostream& os, const SiteTable& sites, const EffectiveField& field,
                      const std::vector<double>& times);

}  // namespace hfgrad
