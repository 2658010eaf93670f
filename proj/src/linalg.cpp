#include "linalg.hpp"

#include <cmath>

namespace vortexlab::linalg {

Matrix expm(const Matrix& a) {
    const Eigen::Index n = a.rows();
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff(); // inf-norm
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const Matrix b = a / std::pow(2.0, squarings);

    Matrix result = Matrix::Identity(n, n);
    Matrix term = Matrix::Identity(n, n);
    for (int k = 1; k <= 64; ++k) {
        term = (term * b) / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-13 * result.cwiseAbs().maxCoeff()) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

Matrix exp_i_hermitian(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Eigen::Index n = h.rows();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phases[k] = std::exp(std::complex<double>(0.0, es.eigenvalues()[k]));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace vortexlab::linalg
