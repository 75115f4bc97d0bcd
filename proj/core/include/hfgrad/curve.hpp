#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hfgrad {

enum class Protocol { FID, HahnEcho };
enum class Frame { Rotating, Lab };

std::string to_string(Protocol p);
std::string to_string(Frame f);
Protocol parse_protocol(const std::string& s);
Frame parse_frame(const std::string& s);

// For the Hahn echo, `tau` is the total time 2t and `pulse` the pulse time t.
struct CoherenceCurve {
  Protocol protocol = Protocol::FID;
  Frame frame = Frame::Rotating;
  std::string method;
  std::vector<double> tau;
  std::vector<double> pulse;
  std::vector<std::complex<double>> value;
  nlohmann::json metadata = nlohmann::json::object();

  std::size_t size() const { return tau.size(); }
  std::vector<double> magnitude() const;
};

// Builds the time axes from evaluation times: FID times are tau, Hahn-echo
// times are pulse times.
CoherenceCurve make_curve(Protocol protocol, Frame frame, std::string method,
                          const std::vector<double>& times);

void write_curve_csv(std::ostream& os, const CoherenceCurve& c);
std::string curve_csv(const CoherenceCurve& c);

}  // namespace hfgrad
