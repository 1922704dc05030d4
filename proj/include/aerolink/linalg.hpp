#pragma once

#include <Eigen/Dense>

namespace aerolink {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct SymmetricEigen {
  Vector values;   ///< ascending
  Matrix vectors;  ///< column k pairs with values[k]; orthonormal
  int sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a symmetric matrix.
///
/// Sweeps rotate every off-diagonal pair whose magnitude is above a
/// per-sweep threshold until the off-diagonal Frobenius norm falls to
/// 1e-12 of the total. Throws std::domain_error if the input is not square
/// or deviates from symmetry by more than 1e-12 (absolute).
SymmetricEigen eig_sym(const Matrix& a);

}  // namespace aerolink
