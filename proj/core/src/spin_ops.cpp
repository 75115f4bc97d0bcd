#include "hfgrad/spin_ops.hpp"

#include <algorithm>
#include <cmath>

#include "hfgrad/error.hpp"

namespace hfgrad {

namespace {

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

}  // namespace

int spin_dimension(double I) {
  double twice = 2.0 * I;
  if (!(twice >= 1.0) || std::abs(twice - std::round(twice)) > 1e-12)
    throw ConfigError("spin must be a positive multiple of 1/2");
  return static_cast<int>(std::lround(twice)) + 1;
}

SpinMatrices spin_matrices(double I) {
  int n = spin_dimension(I);
  SpinMatrices s;
  s.x = Eigen::MatrixXcd::Zero(n, n);
  s.y = Eigen::MatrixXcd::Zero(n, n);
  s.z = Eigen::MatrixXcd::Zero(n, n);
  const std::complex<double> i1(0.0, 1.0);
  for (int r = 0; r < n; ++r) {
    double m = I - r;
    s.z(r, r) = m;
    if (r + 1 < n) {
      // <m| I^+ |m-1>
      double mm = m - 1.0;
      double c = std::sqrt(I * (I + 1.0) - mm * (mm + 1.0));
      s.x(r, r + 1) = 0.5 * c;
      s.x(r + 1, r) = 0.5 * c;
      s.y(r, r + 1) = -0.5 * i1 * c;
      s.y(r + 1, r) = 0.5 * i1 * c;
    }
  }
  return s;
}

void wigner_small_d(double I, double beta, double* out) {
  int n = spin_dimension(I);
  int j2 = n - 1;  // 2I
  double c = std::cos(0.5 * beta);
  double s = std::sin(0.5 * beta);
  if (n == 2) {
    out[0] = c;
    out[1] = -s;
    out[2] = s;
    out[3] = c;
    return;
  }
  for (int r = 0; r < n; ++r) {
    int jp = j2 - r;  // j + m  (m row)
    int jm = r;       // j - m
    for (int col = 0; col < n; ++col) {
      int kp = j2 - col;  // j + m'
      int km = col;       // j - m'
      double pref = std::sqrt(factorial(jp) * factorial(jm) * factorial(kp) * factorial(km));
      // m - m' = col - r
      int diff = col - r;
      double sum = 0.0;
      for (int k = std::max(0, -diff); k <= std::min(kp, jm); ++k) {
        int a = kp - k, b = k + diff, d = jm - k;
        if (a < 0 || b < 0 || d < 0) continue;
        double term = pref / (factorial(a) * factorial(k) * factorial(b) * factorial(d));
        int pc = a + d;  // 2j + m' - m - 2k
        int ps = b + k;  // m - m' + 2k
        term *= std::pow(c, pc) * std::pow(s, ps);
        sum += (b % 2 == 0) ? term : -term;
      }
      out[r * n + col] = sum;
    }
  }
}

Eigen::MatrixXd wigner_small_d(double I, double beta) {
  int n = spin_dimension(I);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> d(n, n);
  wigner_small_d(I, beta, d.data());
  return d;
}

Eigen::VectorXcd coherent_state(double I, const Vec3& dir) {
  int n = spin_dimension(I);
  double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  if (!(norm > 0.0)) throw ConfigError("coherent state needs a nonzero direction");
  double theta = std::acos(std::clamp(dir[2] / norm, -1.0, 1.0));
  double phi = std::atan2(dir[1], dir[0]);
  Eigen::MatrixXd d = wigner_small_d(I, theta);
  Eigen::VectorXcd v(n);
  for (int r = 0; r < n; ++r) {
    double m = I - r;
    v(r) = d(r, 0) * std::polar(1.0, -m * phi);
  }
  return v;
}

}  // namespace hfgrad
