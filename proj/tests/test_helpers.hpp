#pragma once

#include <random>

#include "memskit/linalg.hpp"

namespace memskit::test {

inline CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    return m;
}

inline CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
    const CMatrix m = random_matrix(n, n, rng);
    return 0.5 * (m + m.adjoint().eval());
}

/// Haar-distributed unitary via QR of a Ginibre matrix with the usual
/// phase fix on the diagonal of R.
inline CMatrix haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
    const CMatrix g = random_matrix(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return q;
}

/// Independent oracle for states with nonzero entries only on the diagonal
/// and anti-diagonal: C = 2 max(0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)).
inline double x_state_concurrence(const CMatrix& r) {
    const double c1 = std::abs(r(0, 3)) - std::sqrt(std::max(0.0, r(1, 1).real() * r(2, 2).real()));
    const double c2 = std::abs(r(1, 2)) - std::sqrt(std::max(0.0, r(0, 0).real() * r(3, 3).real()));
    return 2.0 * std::max({0.0, c1, c2});
}

}  // namespace memskit::test
