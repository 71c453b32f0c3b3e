#include "memskit/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace memskit {

CMatrix identity(Eigen::Index n) {
    return CMatrix::Identity(n, n);
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix partial_trace(const CMatrix& m, Keep keep) {
    if (m.rows() != 4 || m.cols() != 4) {
        throw std::invalid_argument("partial_trace: expected a 4x4 matrix");
    }
    CMatrix out = CMatrix::Zero(2, 2);
    for (int k = 0; k < 2; ++k) {
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                if (keep == Keep::first) {
                    out(r, c) += m(2 * r + k, 2 * c + k);
                } else {
                    out(r, c) += m(2 * k + r, 2 * k + c);
                }
            }
        }
    }
    return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m, double tol) {
    if (!is_hermitian(m, tol)) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> out(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

std::vector<Complex> general_eigenvalues(const CMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("general_eigenvalues: matrix must be square");
    }
    Eigen::ComplexEigenSolver<CMatrix> solver(m, /*computeEigenvectors=*/false);
    return std::vector<Complex>(solver.eigenvalues().data(),
                                solver.eigenvalues().data() + solver.eigenvalues().size());
}

DensityMatrix::DensityMatrix(CMatrix mat, double tol) : mat_(std::move(mat)) {
    if (mat_.rows() != mat_.cols()) {
        throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    if (mat_.rows() != 2 && mat_.rows() != 4) {
        throw std::invalid_argument("DensityMatrix: dimension must be 2 or 4");
    }
    if (!mat_.allFinite()) {
        throw std::invalid_argument("DensityMatrix: entries must be finite");
    }
    if (!is_hermitian(mat_, tol)) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian within tolerance");
    }
    if (std::abs(mat_.trace().imag()) > tol) {
        throw std::invalid_argument("DensityMatrix: trace must be real");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(mat_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
    }
}

bool DensityMatrix::has_unit_trace(double tol) const {
    return std::abs(trace() - 1.0) <= tol;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Keep keep) {
    return DensityMatrix(partial_trace(rho.matrix(), keep));
}

nlohmann::json matrix_to_json(const CMatrix& m) {
    nlohmann::json data = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            data.push_back({m(r, c).real(), m(r, c).imag()});
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
        throw std::invalid_argument("matrix_from_json: expected {rows, cols, data}");
    }
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (rows <= 0 || cols <= 0 || rows > 16 || cols > 16) {
        throw std::invalid_argument("matrix_from_json: dimensions must lie in [1, 16]");
    }
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
        throw std::invalid_argument("matrix_from_json: data length must equal rows*cols");
    }
    CMatrix m(rows, cols);
    Eigen::Index k = 0;
    for (const auto& entry : data) {
        if (!entry.is_array() || entry.size() != 2 ||
            !entry[0].is_number() || !entry[1].is_number()) {
            throw std::invalid_argument("matrix_from_json: each entry must be a [re, im] pair");
        }
        const double re = entry[0].get<double>();
        const double im = entry[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw std::invalid_argument("matrix_from_json: entries must be finite");
        }
        m(k / cols, k % cols) = Complex(re, im);
        ++k;
    }
    return m;
}

}  // namespace memskit
