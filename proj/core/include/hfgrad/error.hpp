#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hfgrad {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent user input. Maps to CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Valid input that the current implementation does not cover
// (e.g. exact engine with I > 9/2, double dots outside d = q = 2).
class UnsupportedError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// A formula evaluated outside its domain (1/T2 at b = 0, ...).
class UndefinedQuantityError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::size_t realizations,
                      std::vector<std::complex<double>> previous,
                      std::vector<std::complex<double>> last)
      : Error(what),
        realizations_(realizations),
        previous_(std::move(previous)),
        last_(std::move(last)) {}

  std::size_t realizations() const { return realizations_; }
  const std::vector<std::complex<double>>& previous() const { return previous_; }
  const std::vector<std::complex<double>>& last() const { return last_; }

 private:
  std::size_t realizations_;
  std::vector<std::complex<double>> previous_;
  std::vector<std::complex<double>> last_;
};

}  // namespace hfgrad
