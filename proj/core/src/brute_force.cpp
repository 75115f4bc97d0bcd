#include <Eigen/Eigenvalues>
#include <cmath>

#include "hfgrad/error.hpp"
#include "hfgrad/exact_engine.hpp"
#include "hfgrad/spin_ops.hpp"

namespace hfgrad {

using cplx = std::complex<double>;

namespace {

// Basis: electron bit is the most significant; nuclear bit k = 0 <-> m_k = +1/2.
Eigen::MatrixXcd hamiltonian(const SiteTable& s, double b) {
  const int K = static_cast<int>(s.size());
  const int nb = 1 << K;
  const int dim = 2 * nb;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  for (int e = 0; e < 2; ++e) {
    double sz = e == 0 ? 0.5 : -0.5;
    for (int n = 0; n < nb; ++n) {
      int row = e * nb + n;
      double hz = b;
      double diag = 0.0;
      for (int k = 0; k < K; ++k) {
        double m = ((n >> (K - 1 - k)) & 1) ? -0.5 : 0.5;
        hz += s.coupling[k] * m;
        diag += s.gyro[k] * b * m;
      }
      H(row, row) = hz * sz + diag;
      for (int k = 0; k < K; ++k) {
        int flipped = n ^ (1 << (K - 1 - k));
        H(row, e * nb + flipped) += 0.5 * s.gyro[k] * s.transverse[k];
      }
    }
  }
  return H;
}

Eigen::VectorXcd initial_state(const SiteTable& s, const BathState& state, std::size_t j) {
  const int K = static_cast<int>(s.size());
  Eigen::VectorXcd bath = Eigen::VectorXcd::Ones(1);
  for (int k = 0; k < K; ++k) {
    Eigen::VectorXcd psi(2);
    if (const auto* n = std::get_if<NarrowedState>(&state)) {
      psi << (n->m[k] > 0 ? 1.0 : 0.0), (n->m[k] > 0 ? 0.0 : 1.0);
    } else {
      psi = coherent_state(0.5, std::get<ThermalEnsemble>(state).direction(j, k));
    }
    Eigen::VectorXcd next(bath.size() * 2);
    for (Eigen::Index a = 0; a < bath.size(); ++a) {
      next(2 * a) = bath(a) * psi(0);
      next(2 * a + 1) = bath(a) * psi(1);
    }
    bath = next;
  }
  Eigen::VectorXcd full(2 * bath.size());
  full << bath / std::sqrt(2.0), bath / std::sqrt(2.0);
  return full;
}

Eigen::VectorXcd flip_electron(const Eigen::VectorXcd& v) {
  Eigen::Index nb = v.size() / 2;
  Eigen::VectorXcd out(v.size());
  out << v.tail(nb), v.head(nb);
  return out;
}

cplx raising(const Eigen::VectorXcd& v) {
  Eigen::Index nb = v.size() / 2;
  // <S^+> = sum conj(c_up) c_down
  return v.head(nb).dot(v.tail(nb));
}

}  // namespace

CoherenceCurve brute_force_oracle(const SiteTable& sites, const BathState& state,
                                  double zeeman, Protocol protocol,
                                  const std::vector<double>& times, Frame frame) {
  sites.check_consistent();
  if (sites.size() > 8) throw ConfigError("brute-force oracle is limited to K <= 8 sites");
  for (double I : sites.spin)
    if (I != 0.5) throw ConfigError("brute-force oracle handles spin-1/2 nuclei only");
  if (!sites.unit_weights()) throw ConfigError("brute-force oracle needs unit site weights");
  if (const auto* n = std::get_if<NarrowedState>(&state); n && n->m.size() != sites.size())
    throw ConfigError("narrowed state does not match the site table");

  CoherenceCurve c = make_curve(protocol, frame, "brute_force", times);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian(sites, zeeman));
  const Eigen::MatrixXcd& V = es.eigenvectors();
  const Eigen::VectorXd& lam = es.eigenvalues();

  auto evolve = [&](const Eigen::VectorXcd& v, double t) {
    Eigen::VectorXcd a = V.adjoint() * v;
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) *= std::polar(1.0, -lam(i) * t);
    return Eigen::VectorXcd(V * a);
  };

  std::size_t M = 1;
  if (const auto* th = std::get_if<ThermalEnsemble>(&state)) M = th->realizations;
  for (std::size_t i = 0; i < times.size(); ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
      Eigen::VectorXcd psi = initial_state(sites, state, j);
      double t = times[i];
      if (protocol == Protocol::FID) {
        psi = evolve(psi, t);
      } else {
        psi = flip_electron(evolve(flip_electron(evolve(psi, t)), t));
      }
      acc += raising(psi) / 0.5;
    }
    cplx v = acc / static_cast<double>(M);
    if (protocol == Protocol::FID && c.frame == Frame::Rotating)
      v *= std::polar(1.0, -zeeman * times[i]);
    c.value[i] = v;
  }
  return c;
}

}  // namespace hfgrad
