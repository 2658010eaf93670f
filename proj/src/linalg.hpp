#pragma once

// Internal dense linear algebra helpers (not installed).

#include <Eigen/Dense>
#include <complex>

namespace vortexlab::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense matrix exponential by scaling-and-squaring with a truncated Taylor
/// core.  Terms are added until they fall below 1e-13 relative to the
/// accumulated sum.
Matrix expm(const Matrix& a);

/// exp(i * H) for Hermitian H via eigendecomposition (exactly unitary up to
/// round-off).
Matrix exp_i_hermitian(const Matrix& h);

} // namespace vortexlab::linalg
