#pragma once

#include <Eigen/Dense>

#include "hfgrad/bath_states.hpp"

namespace hfgrad {

// Basis ordering throughout: index i <-> m = I - i.

struct SpinMatrices {
  Eigen::MatrixXcd x, y, z;
};

inline constexpr int kMaxSpinDimension = 10;  // I <= 9/2

int spin_dimension(double I);
SpinMatrices spin_matrices(double I);

// d^I_{m m'}(beta) = <I m| exp(-i beta I^y) |I m'>, written row-major into
// `out` (dim x dim).
void wigner_small_d(double I, double beta, double* out);
Eigen::MatrixXd wigner_small_d(double I, double beta);

// Rotation of |I, I> onto the direction n.
Eigen::VectorXcd coherent_state(double I, const Vec3& n);

}  // namespace hfgrad
