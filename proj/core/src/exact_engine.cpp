#include "hfgrad/exact_engine.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "hfgrad/error.hpp"
#include "hfgrad/parallel.hpp"
#include "hfgrad/spin_ops.hpp"
#include "hfgrad/units.hpp"

namespace hfgrad {

using cplx = std::complex<double>;

namespace {

constexpr int kMax = kMaxSpinDimension;
using RealMat = std::array<double, kMax * kMax>;
using CVec = std::array<cplx, kMax>;

struct Tilts {
  double up, down, h_up, h_down;
};

Tilts tilts(double coupling, double transverse, double gyro, double zeeman) {
  double x = gyro * transverse;
  double zu = gyro * zeeman + 0.5 * coupling;
  double zd = gyro * zeeman - 0.5 * coupling;
  return {std::atan2(x, zu), std::atan2(x, zd), std::hypot(x, zu), std::hypot(x, zd)};
}

Eigen::VectorXcd diagonal_phases(double spin, double h, double t) {
  int n = spin_dimension(spin);
  Eigen::VectorXcd e(n);
  for (int r = 0; r < n; ++r) e(r) = std::polar(1.0, -(spin - r) * h * t);
  return e;
}

// e^{-i m h t} for m = I, I-1, ..., -I.
inline void fill_phases(int n, double spin, double h, double t, cplx* out) {
  if (n == 2) {
    out[0] = std::polar(1.0, -0.5 * h * t);
    out[1] = std::conj(out[0]);
    return;
  }
  cplx top = std::polar(1.0, -spin * h * t);
  cplx step = std::polar(1.0, h * t);
  out[0] = top;
  for (int r = 1; r < n; ++r) out[r] = out[r - 1] * step;
}

inline void apply_transpose(int n, const RealMat& m, const cplx* in, cplx* out) {
  for (int c = 0; c < n; ++c) {
    cplx s = 0.0;
    for (int r = 0; r < n; ++r) s += m[r * n + c] * in[r];
    out[c] = s;
  }
}

// <psi| E_up^+ Q ... |psi> for one site and time; N > 0 fixes the dimension at
// compile time, N = 0 uses n.
template <int N>
inline cplx site_time_factor(int n, bool echo, const RealMat& qdn, const RealMat& qup,
                             const cplx* u, const cplx* w, const cplx* eu, const cplx* ed) {
  const int d = N > 0 ? N : n;
  cplx v[kMax], y[kMax];
  auto apply_n = [d](const RealMat& m, const cplx* in, cplx* out) {
    for (int r = 0; r < d; ++r) {
      cplx acc = 0.0;
      for (int c = 0; c < d; ++c) acc += m[r * d + c] * in[c];
      out[r] = acc;
    }
  };
  for (int r = 0; r < d; ++r) v[r] = ed[r] * w[r];
  apply_n(qdn, v, y);
  if (echo) {
    for (int r = 0; r < d; ++r) y[r] *= eu[r];
    apply_n(qup, y, v);
    for (int r = 0; r < d; ++r) v[r] *= std::conj(ed[r]);
    apply_n(qdn, v, y);
  }
  cplx f = 0.0;
  for (int r = 0; r < d; ++r) f += std::conj(u[r] * eu[r]) * y[r];
  return f;
}

// Site state |psi_k^j>: either an I^z eigenstate or a spin coherent state.
struct StateSource {
  const NarrowedState* narrowed = nullptr;
  const ThermalEnsemble* thermal = nullptr;

  void fill(std::size_t j, std::size_t k, double spin, int n, cplx* psi) const {
    for (int r = 0; r < n; ++r) psi[r] = 0.0;
    if (narrowed) {
      int r = static_cast<int>(std::lround(spin - narrowed->m[k]));
      psi[r] = 1.0;
      return;
    }
    Vec3 d = thermal->direction(j, k);
    double ch = std::sqrt(std::max(0.0, 0.5 * (1.0 + d[2])));
    double sh = std::sqrt(std::max(0.0, 0.5 * (1.0 - d[2])));
    double az = std::atan2(d[1], d[0]);
    if (n == 2) {
      psi[0] = std::polar(ch, -0.5 * az);
      psi[1] = std::polar(sh, 0.5 * az);
      return;
    }
    int twoI = n - 1;
    for (int r = 0; r < n; ++r) {
      // m = I - r: amplitude sqrt(C(2I, r)) cos^{2I-r} sin^{r} e^{-i m az}
      double binom = std::tgamma(twoI + 1.0) / (std::tgamma(r + 1.0) * std::tgamma(twoI - r + 1.0));
      double amp = std::sqrt(binom) * std::pow(ch, twoI - r) * std::pow(sh, r);
      psi[r] = std::polar(amp, -(spin - r) * az);
    }
  }
};

struct BlockResult {
  std::vector<double> log_mag;
  std::vector<cplx> unit;
};

void evaluate_block(const SiteTable& sites, const StateSource& src, std::size_t j,
                    std::size_t k0, std::size_t k1, double zeeman, Protocol protocol,
                    const std::vector<double>& times, BlockResult& out) {
  const std::size_t T = times.size();
  std::vector<cplx> prod(T, cplx(1.0, 0.0));
  std::vector<double> logacc(T, 0.0), phase(T, 0.0);
  RealMat rup{}, rdn{}, qdn{}, qup{};
  CVec psi{}, u{}, w{}, eu{}, ed{};
  const bool echo = protocol == Protocol::HahnEcho;

  std::size_t since_norm = 0;
  for (std::size_t k = k0; k < k1; ++k) {
    const double spin = sites.spin[k];
    const int n = static_cast<int>(std::lround(2.0 * spin)) + 1;
    // Collinear axes commute, so the echo refocuses this site exactly.
    bool refocused = echo && sites.gyro[k] * sites.transverse[k] == 0.0;
    // An I^z eigenstate under collinear axes only picks up a phase.
    bool pure_phase = !echo && src.narrowed && sites.gyro[k] * sites.transverse[k] == 0.0;
    Tilts tl = tilts(sites.coupling[k], sites.transverse[k], sites.gyro[k], zeeman);
    if (!refocused) {
      wigner_small_d(spin, tl.up, rup.data());
      wigner_small_d(spin, tl.down, rdn.data());
      wigner_small_d(spin, tl.down - tl.up, qdn.data());
      wigner_small_d(spin, tl.up - tl.down, qup.data());
      src.fill(j, k, spin, n, psi.data());
      apply_transpose(n, rup, psi.data(), u.data());
      apply_transpose(n, rdn, psi.data(), w.data());

      for (std::size_t i = 0; i < T; ++i) {
        const double t = times[i];
        fill_phases(n, spin, tl.h_down, t, ed.data());
        fill_phases(n, spin, tl.h_up, t, eu.data());
        cplx f = n == 2 ? site_time_factor<2>(n, echo, qdn, qup, u.data(), w.data(), eu.data(),
                                              ed.data())
                        : site_time_factor<0>(n, echo, qdn, qup, u.data(), w.data(), eu.data(),
                                              ed.data());
        if (pure_phase)
          phase[i] = std::remainder(phase[i] + std::arg(f), 2.0 * units::kPi);
        else
          prod[i] *= f;
      }
    }

    if (++since_norm == 16 || k + 1 == k1) {
      since_norm = 0;
      for (std::size_t i = 0; i < T; ++i) {
        double m = std::abs(prod[i]);
        if (m < 1e-100 && m > 0.0) {
          logacc[i] += std::log(m);
          prod[i] /= m;
        }
      }
    }
  }

  out.log_mag.resize(T);
  out.unit.resize(T);
  for (std::size_t i = 0; i < T; ++i) {
    double m = std::abs(prod[i]);
    if (m == 0.0) {
      out.log_mag[i] = -std::numeric_limits<double>::infinity();
      out.unit[i] = 1.0;
    } else {
      out.log_mag[i] = logacc[i] + std::log(m);
      out.unit[i] = prod[i] / m * std::polar(1.0, phase[i]);
    }
  }
}

void check_sites(const SiteTable& sites) {
  sites.check_consistent();
  if (!sites.unit_weights())
    throw ConfigError("the exact engine needs a sampled site table (all weights 1)");
  for (double I : sites.spin) {
    if (spin_dimension(I) > kMax)
      throw UnsupportedError("exact engine supports nuclear spins up to I = 9/2");
  }
}

}  // namespace

Eigen::VectorXcd SiteOperators::phases_up(double t) const {
  return diagonal_phases(spin, freq_up, t);
}

Eigen::VectorXcd SiteOperators::phases_down(double t) const {
  return diagonal_phases(spin, freq_down, t);
}

SiteOperators site_operators(double coupling, double transverse, double gyro, double zeeman,
                             double spin) {
  SiteOperators op;
  Tilts tl = tilts(coupling, transverse, gyro, zeeman);
  op.spin = spin;
  op.tilt_up = tl.up;
  op.tilt_down = tl.down;
  op.freq_up = tl.h_up;
  op.freq_down = tl.h_down;
  op.rot_up = wigner_small_d(spin, tl.up);
  op.rot_down = wigner_small_d(spin, tl.down);
  op.rel_down = op.rot_up.transpose() * op.rot_down;
  op.rel_up = op.rot_down.transpose() * op.rot_up;
  return op;
}

std::complex<double> fid_site_factor(const SiteOperators& op, const Eigen::VectorXcd& psi,
                                     double t) {
  Eigen::MatrixXcd Eu = op.phases_up(t).asDiagonal();
  Eigen::MatrixXcd Ed = op.phases_down(t).asDiagonal();
  Eigen::VectorXcd rhs = op.rot_up.cast<cplx>() * Eu.adjoint() * op.rel_down.cast<cplx>() *
                         Ed * op.rot_down.cast<cplx>().adjoint() * psi;
  return psi.dot(rhs);
}

std::complex<double> hahn_site_factor(const SiteOperators& op, const Eigen::VectorXcd& psi,
                                      double t) {
  Eigen::MatrixXcd Eu = op.phases_up(t).asDiagonal();
  Eigen::MatrixXcd Ed = op.phases_down(t).asDiagonal();
  Eigen::MatrixXcd Qd = op.rel_down.cast<cplx>();
  Eigen::MatrixXcd Qu = op.rel_up.cast<cplx>();
  Eigen::VectorXcd rhs = op.rot_up.cast<cplx>() * Eu.adjoint() * Qd * Ed.adjoint() * Qu * Eu *
                         Qd * Ed * op.rot_down.cast<cplx>().adjoint() * psi;
  return psi.dot(rhs);
}

std::vector<std::complex<double>> exact_realization_sum(const SiteTable& sites,
                                                        const BathState& state, double zeeman,
                                                        Protocol protocol,
                                                        const std::vector<double>& times,
                                                        std::size_t first, std::size_t last,
                                                        const EngineOptions& opts) {
  check_sites(sites);
  if (times.empty()) throw ConfigError("empty time grid");
  if (opts.block_size == 0) throw ConfigError("block size must be positive");
  StateSource src;
  if (const auto* n = std::get_if<NarrowedState>(&state)) {
    if (n->m.size() != sites.size())
      throw ConfigError("narrowed state does not match the site table");
    if (first != 0 || last != 1) throw ConfigError("a narrowed state has one realization");
    src.narrowed = n;
  } else {
    src.thermal = &std::get<ThermalEnsemble>(state);
  }

  const std::size_t T = times.size();
  std::vector<cplx> total(T, cplx(0.0, 0.0));
  if (last <= first) return total;

  const std::size_t K = sites.size();
  const std::size_t nblocks = std::max<std::size_t>(1, (K + opts.block_size - 1) / opts.block_size);
  const std::size_t chunk = std::max<std::size_t>(1, 4096 / nblocks);

  for (std::size_t j0 = first; j0 < last; j0 += chunk) {
    std::size_t j1 = std::min(last, j0 + chunk);
    std::size_t nreal = j1 - j0;
    std::vector<BlockResult> blocks(nreal * nblocks);
    parallel_for(nreal * nblocks, opts.workers, [&](std::size_t task) {
      std::size_t jj = task / nblocks;
      std::size_t b = task % nblocks;
      std::size_t k0 = b * opts.block_size;
      std::size_t k1 = std::min(K, k0 + opts.block_size);
      evaluate_block(sites, src, j0 + jj, k0, k1, zeeman, protocol, times, blocks[task]);
    });
    for (std::size_t jj = 0; jj < nreal; ++jj) {
      for (std::size_t i = 0; i < T; ++i) {
        double logm = 0.0;
        cplx unit(1.0, 0.0);
        for (std::size_t b = 0; b < nblocks; ++b) {
          const BlockResult& r = blocks[jj * nblocks + b];
          logm += r.log_mag[i];
          unit *= r.unit[i];
        }
        if (logm >= kLogUnderflow) total[i] += std::exp(logm) * (unit / std::abs(unit));
      }
    }
  }
  return total;
}

namespace {

CoherenceCurve run_exact(const SiteTable& sites, const BathState& state, double zeeman,
                         Protocol protocol, const std::vector<double>& times,
                         const EngineOptions& opts) {
  CoherenceCurve c = make_curve(protocol, opts.frame, "exact", times);
  std::size_t M = 1;
  if (const auto* th = std::get_if<ThermalEnsemble>(&state)) M = th->realizations;
  auto sum = exact_realization_sum(sites, state, zeeman, protocol, times, 0, M, opts);
  for (std::size_t i = 0; i < times.size(); ++i) {
    cplx v = sum[i] / static_cast<double>(M);
    if (times[i] == 0.0) v = 1.0;
    if (protocol == Protocol::FID && c.frame == Frame::Lab) v *= std::polar(1.0, zeeman * times[i]);
    c.value[i] = v;
  }
  c.metadata["sites"] = sites.size();
  c.metadata["realizations"] = M;
  c.metadata["block_size"] = opts.block_size;
  return c;
}

}  // namespace

CoherenceCurve fid_exact(const SiteTable& sites, const BathState& state, double zeeman,
                         const std::vector<double>& times, const EngineOptions& opts) {
  return run_exact(sites, state, zeeman, Protocol::FID, times, opts);
}

CoherenceCurve hahn_exact(const SiteTable& sites, const BathState& state, double zeeman,
                          const std::vector<double>& pulse_times, const EngineOptions& opts) {
  return run_exact(sites, state, zeeman, Protocol::HahnEcho, pulse_times, opts);
}

}  // namespace hfgrad
