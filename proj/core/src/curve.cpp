#include "hfgrad/curve.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "hfgrad/error.hpp"
#include "hfgrad/io.hpp"

namespace hfgrad {

std::string to_string(Protocol p) { return p == Protocol::FID ? "FID" : "HE"; }

std::string to_string(Frame f) { return f == Frame::Rotating ? "rotating" : "lab"; }

Protocol parse_protocol(const std::string& s) {
  if (s == "FID" || s == "fid") return Protocol::FID;
  if (s == "HE" || s == "he" || s == "hahn" || s == "HahnEcho") return Protocol::HahnEcho;
  throw ConfigError("unknown protocol '" + s + "' (expected FID or HE)");
}

Frame parse_frame(const std::string& s) {
  if (s == "rotating") return Frame::Rotating;
  if (s == "lab") return Frame::Lab;
  throw ConfigError("unknown frame '" + s + "' (expected rotating or lab)");
}

std::vector<double> CoherenceCurve::magnitude() const {
  std::vector<double> m(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) m[i] = std::abs(value[i]);
  return m;
}

CoherenceCurve make_curve(Protocol protocol, Frame frame, std::string method,
                          const std::vector<double>& times) {
  if (times.empty()) throw ConfigError("empty time grid");
  for (double t : times)
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("times must be finite and >= 0");
  CoherenceCurve c;
  c.protocol = protocol;
  c.frame = protocol == Protocol::HahnEcho ? Frame::Rotating : frame;
  c.method = std::move(method);
  if (protocol == Protocol::FID) {
    c.tau = times;
  } else {
    c.pulse = times;
    c.tau.reserve(times.size());
    for (double t : times) c.tau.push_back(2.0 * t);
  }
  c.value.assign(times.size(), {1.0, 0.0});
  return c;
}

void write_curve_csv(std::ostream& os, const CoherenceCurve& c) {
  bool he = c.protocol == Protocol::HahnEcho;
  os << "tau_s," << (he ? "t_pulse_s," : "") << "re_C,im_C,abs_C,method\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << io::format_double(c.tau[i]) << ',';
    if (he) os << io::format_double(c.pulse[i]) << ',';
    os << io::format_double(c.value[i].real()) << ',' << io::format_double(c.value[i].imag())
       << ',' << io::format_double(std::abs(c.value[i])) << ',' << c.method << '\n';
  }
}

std::string curve_csv(const CoherenceCurve& c) {
  std::ostringstream os;
  write_curve_csv(os, c);
  return os.str();
}

}  // namespace hfgrad
