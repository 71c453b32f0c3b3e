#include "memskit/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace memskit {

namespace {

void require_mems1_range(double p) {
    if (!(p >= 2.0 / 3.0 && p <= 1.0)) {
        throw std::domain_error("mems1 channel: p must lie in [2/3, 1]");
    }
}

void require_mems2_range(double p) {
    if (!(p >= 0.0 && p <= 2.0 / 3.0)) {
        throw std::domain_error("mems2 channel: p must lie in [0, 2/3]");
    }
}

CMatrix rotation_quarter() {
    CMatrix m(2, 2);
    m << 0, -1, 1, 0;
    return m;
}

}  // namespace

void validate(const KrausMap& map) {
    if (map.dim <= 0) {
        throw std::invalid_argument("KrausMap: dimension must be positive");
    }
    if (map.ops.empty()) {
        throw std::invalid_argument("KrausMap: needs at least one operator");
    }
    bool any_nonzero = false;
    for (const CMatrix& op : map.ops) {
        if (op.rows() != map.dim || op.cols() != map.dim) {
            throw std::invalid_argument("KrausMap: all operators must be dim x dim");
        }
        if (!op.allFinite()) {
            throw std::invalid_argument("KrausMap: operator entries must be finite");
        }
        if (op.cwiseAbs().maxCoeff() > 0.0) {
            any_nonzero = true;
        }
    }
    if (!any_nonzero) {
        throw std::invalid_argument("KrausMap: all operators are zero");
    }
}

KrausMap mems1_map(double p) {
    require_mems1_range(p);
    KrausMap map;
    map.label = "mems1";
    map.dim = 2;
    map.ops.push_back(CMatrix::Zero(2, 2));
    map.ops.push_back(CMatrix::Zero(2, 2));
    CMatrix a2(2, 2);
    a2 << std::sqrt(2.0 * (1.0 - p)), 0, 0, 0;
    map.ops.push_back(a2);
    map.ops.push_back(std::sqrt(p) * rotation_quarter());
    return map;
}

KrausMap mems2_map(double p) {
    require_mems2_range(p);
    KrausMap map;
    map.label = "mems2";
    map.dim = 2;
    CMatrix a0(2, 2);
    a0 << std::sqrt(2.0 / 3.0), 0, 0, 0;
    map.ops.push_back(a0);
    map.ops.push_back(CMatrix::Zero(2, 2));
    map.ops.push_back(std::sqrt(1.0 / 3.0 - p / 2.0) * pauli_x());
    map.ops.push_back(std::sqrt(1.0 / 3.0 + p / 2.0) * rotation_quarter());
    return map;
}

KrausMap lift_first_qubit(const KrausMap& map) {
    if (map.dim != 2) {
        throw std::invalid_argument("lift_first_qubit: expected a single-qubit map");
    }
    KrausMap lifted;
    lifted.label = map.label + " (x) I";
    lifted.dim = 4;
    lifted.ops.reserve(map.ops.size());
    for (const CMatrix& op : map.ops) {
        lifted.ops.push_back(tensor(op, identity(2)));
    }
    return lifted;
}

DensityMatrix apply(const KrausMap& map, const DensityMatrix& rho) {
    validate(map);
    if (rho.dim() != map.dim) {
        throw std::invalid_argument("apply: map and state dimensions differ");
    }
    CMatrix out = CMatrix::Zero(map.dim, map.dim);
    for (const CMatrix& op : map.ops) {
        out += op * rho.matrix() * op.adjoint();
    }
    return DensityMatrix(out);
}

CMatrix kraus_sum(const KrausMap& map) {
    CMatrix out = CMatrix::Zero(map.dim, map.dim);
    for (const CMatrix& op : map.ops) {
        out += op.adjoint() * op;
    }
    return out;
}

CMatrix kraus_dual_sum(const KrausMap& map) {
    CMatrix out = CMatrix::Zero(map.dim, map.dim);
    for (const CMatrix& op : map.ops) {
        out += op * op.adjoint();
    }
    return out;
}

CMatrix choi_matrix(const KrausMap& map) {
    const Eigen::Index d2 = map.dim * map.dim;
    CMatrix choi = CMatrix::Zero(d2, d2);
    for (const CMatrix& op : map.ops) {
        // Eigen stores column-major, so data() is already the
        // column-stacked vec(A).
        Eigen::Map<const Eigen::VectorXcd> v(op.data(), d2);
        choi += v * v.adjoint();
    }
    return choi;
}

ChannelAudit audit(const KrausMap& map) {
    validate(map);
    const CMatrix eye = identity(map.dim);
    ChannelAudit a;
    a.kraus_sum_defect = (kraus_sum(map) - eye).norm();
    a.unital_defect = (kraus_dual_sum(map) - eye).norm();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(choi_matrix(map), Eigen::EigenvaluesOnly);
    a.min_choi_eigenvalue = solver.eigenvalues().minCoeff();
    a.is_cp = a.min_choi_eigenvalue >= -kTol;
    return a;
}

DensityMatrix pauli_form_apply(const DensityMatrix& rho, double p) {
    require_mems1_range(p);
    if (rho.dim() != 2) {
        throw std::invalid_argument("pauli_form_apply: expected a single-qubit state");
    }
    const CMatrix& r = rho.matrix();
    const CMatrix sy = pauli_y();
    const CMatrix sz = pauli_z();
    const CMatrix out = 0.5 * ((1.0 - p) * r + 2.0 * p * (sy * r * sy) +
                               (1.0 - p) * (sz * r * sz) + (1.0 - p) * (r * sz + sz * r));
    return DensityMatrix(out);
}

nlohmann::json kraus_to_json(const KrausMap& map) {
    nlohmann::json ops = nlohmann::json::array();
    for (const CMatrix& op : map.ops) {
        ops.push_back(matrix_to_json(op));
    }
    return {{"label", map.label}, {"dim", map.dim}, {"ops", std::move(ops)}};
}

KrausMap kraus_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("label") || !j.contains("dim") || !j.contains("ops")) {
        throw std::invalid_argument("kraus_from_json: expected {label, dim, ops}");
    }
    KrausMap map;
    map.label = j.at("label").get<std::string>();
    map.dim = j.at("dim").get<Eigen::Index>();
    if (!j.at("ops").is_array()) {
        throw std::invalid_argument("kraus_from_json: ops must be an array");
    }
    for (const auto& op : j.at("ops")) {
        map.ops.push_back(matrix_from_json(op));
    }
    validate(map);
    return map;
}

nlohmann::json audit_to_json(const ChannelAudit& a) {
    return {{"kraus_sum_defect", a.kraus_sum_defect},
            {"unital_defect", a.unital_defect},
            {"is_cp", a.is_cp},
            {"min_choi_eigenvalue", a.min_choi_eigenvalue}};
}

}  // namespace memskit
