#include "memskit/mems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace memskit {

namespace {

void require_unit_trace(const DensityMatrix& rho, const char* who) {
    if (!rho.has_unit_trace()) {
        throw std::invalid_argument(std::string(who) + ": state must have unit trace");
    }
}

double clamp(double x, double lo, double hi) {
    return std::min(std::max(x, lo), hi);
}

/// Hermitian square root with tiny negative eigenvalues clamped to zero.
CMatrix hermitian_sqrt(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    Eigen::VectorXd vals = solver.eigenvalues().cwiseMax(0.0);
    return solver.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
           solver.eigenvectors().adjoint();
}

}  // namespace

DensityMatrix singlet() {
    CMatrix m = CMatrix::Zero(4, 4);
    m(1, 1) = 0.5;
    m(2, 2) = 0.5;
    m(1, 2) = -0.5;
    m(2, 1) = -0.5;
    return DensityMatrix(m);
}

DensityMatrix mems1_state(double p) {
    if (!(p >= 2.0 / 3.0 && p <= 1.0)) {
        throw std::domain_error("mems1_state: p must lie in [2/3, 1]");
    }
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = p / 2.0;
    m(0, 3) = p / 2.0;
    m(3, 0) = p / 2.0;
    m(3, 3) = p / 2.0;
    // 1 - p lands one ulp away from 1/3 at the representable 2/3; pin the
    // entry so the two families meet bit-exactly at the boundary.
    m(1, 1) = (p == 2.0 / 3.0) ? 1.0 / 3.0 : 1.0 - p;
    return DensityMatrix(m);
}

DensityMatrix mems2_state(double p) {
    if (!(p >= 0.0 && p <= 2.0 / 3.0)) {
        throw std::domain_error("mems2_state: p must lie in [0, 2/3]");
    }
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1.0 / 3.0;
    m(1, 1) = 1.0 / 3.0;
    m(3, 3) = 1.0 / 3.0;
    m(0, 3) = p / 2.0;
    m(3, 0) = p / 2.0;
    return DensityMatrix(m);
}

double concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("concurrence: expected a two-qubit state");
    }
    require_unit_trace(rho, "concurrence");
    const CMatrix yy = tensor(pauli_y(), pauli_y());
    const CMatrix tilde = yy * rho.matrix().conjugate() * yy;
    const auto eigenvalues = general_eigenvalues(rho.matrix() * tilde);
    std::array<double, 4> roots{};
    for (int i = 0; i < 4; ++i) {
        roots[i] = std::sqrt(std::max(0.0, eigenvalues[i].real()));
    }
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double linear_entropy(const DensityMatrix& rho) {
    require_unit_trace(rho, "linear_entropy");
    const double purity = (rho.matrix() * rho.matrix()).trace().real();
    return (4.0 / 3.0) * (1.0 - purity);
}

std::optional<MemsFamily> classify(const DensityMatrix& rho, double tol) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("classify: expected a two-qubit state");
    }
    require_unit_trace(rho, "classify");
    const CMatrix& m = rho.matrix();

    const double p1 = clamp(2.0 * m(0, 0).real(), 2.0 / 3.0, 1.0);
    if ((m - mems1_state(p1).matrix()).norm() <= tol) {
        return MemsFamily{MemsFamilyTag::I, p1};
    }
    const double p2 = clamp(2.0 * std::abs(m(0, 3)), 0.0, 2.0 / 3.0);
    if ((m - mems2_state(p2).matrix()).norm() <= tol) {
        return MemsFamily{MemsFamilyTag::II, p2};
    }
    return std::nullopt;
}

double locality_defect(const DensityMatrix& rho_in, const DensityMatrix& rho_out) {
    return (partial_trace(rho_out.matrix(), Keep::second) -
            partial_trace(rho_in.matrix(), Keep::second))
        .norm();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    const CMatrix root = hermitian_sqrt(a.matrix());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(root * b.matrix() * root,
                                                  Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        sum += std::sqrt(std::max(0.0, solver.eigenvalues()[i]));
    }
    return sum * sum;
}

MemsReport make_report(const DensityMatrix& rho) {
    MemsReport report;
    report.trace = rho.trace();
    report.concurrence = concurrence(rho);
    report.linear_entropy = linear_entropy(rho);
    report.family = classify(rho, 1e-9);

    const CMatrix& m = rho.matrix();
    const double p1 = clamp(2.0 * m(0, 0).real(), 2.0 / 3.0, 1.0);
    const double p2 = clamp(2.0 * std::abs(m(0, 3)), 0.0, 2.0 / 3.0);
    report.fidelity_to_reference =
        std::max(fidelity(rho, mems1_state(p1)), fidelity(rho, mems2_state(p2)));
    return report;
}

nlohmann::json report_to_json(const MemsReport& report) {
    nlohmann::json family = nullptr;
    if (report.family.has_value()) {
        family = {{"tag", report.family->tag == MemsFamilyTag::I ? "I" : "II"},
                  {"p", report.family->p}};
    }
    return {{"family", std::move(family)},
            {"concurrence", report.concurrence},
            {"linear_entropy", report.linear_entropy},
            {"trace", report.trace},
            {"fidelity_to_reference", report.fidelity_to_reference}};
}

DensityMatrix hs_random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(4, 4);
    for (Eigen::Index r = 0; r < 4; ++r) {
        for (Eigen::Index c = 0; c < 4; ++c) {
            g(r, c) = Complex(gauss(rng), gauss(rng));
        }
    }
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

DensityMatrix random_pure_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector2cd psi(Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng)));
    psi.normalize();
    return DensityMatrix(psi * psi.adjoint());
}

}  // namespace memskit
