#pragma once

#include <string>
#include <vector>

#include "memskit/linalg.hpp"

namespace memskit {

/// An operator-sum map rho -> Σ_mu A_mu rho A_mu†. Operators keep their
/// defining order, zero operators included, so the mu index means the same
/// thing everywhere (construction, JSON, audits).
struct KrausMap {
    std::string label;
    Eigen::Index dim = 0;
    std::vector<CMatrix> ops;
};

/// Shape check plus "at least one nonzero operator". Throws
/// std::invalid_argument on violation.
void validate(const KrausMap& map);

/// The MEMS I channel. Four operators on a single qubit:
///   A0 = A1 = 0,  A2 = sqrt(2(1-p))·diag(1,0),  A3 = sqrt(p)·[[0,-1],[1,0]],
/// defined for 2/3 <= p <= 1. Deliberately neither trace-preserving nor
/// unital: Σ A†A = Σ AA† = diag(2-p, p).
KrausMap mems1_map(double p);

/// The MEMS II channel, defined for 0 <= p <= 2/3:
///   A0 = sqrt(2/3)·diag(1,0),  A1 = 0,
///   A2 = sqrt(1/3 - p/2)·[[0,1],[1,0]],  A3 = sqrt(1/3 + p/2)·[[0,-1],[1,0]].
/// Σ A†A = Σ AA† = (2/3)·diag(2,1) for every p in range.
KrausMap mems2_map(double p);

/// Tensor each operator with the single-qubit identity on the right, so the
/// lifted map acts on photon a of a two-qubit state and leaves photon b
/// untouched.
KrausMap lift_first_qubit(const KrausMap& map);

/// Σ_mu A_mu rho A_mu†. The result is Hermitian and PSD but its trace is
/// whatever the map makes it; normalization is a separate, explicit step.
DensityMatrix apply(const KrausMap& map, const DensityMatrix& rho);

CMatrix kraus_sum(const KrausMap& map);       // Σ A†A (trace-preservation witness)
CMatrix kraus_dual_sum(const KrausMap& map);  // Σ AA† (unitality witness)

/// Choi matrix Σ_mu vec(A_mu)·vec(A_mu)† with column-stacking vec. PSD iff
/// the map is completely positive.
CMatrix choi_matrix(const KrausMap& map);

struct ChannelAudit {
    double kraus_sum_defect = 0.0;      // ||Σ A†A - I||_F
    double unital_defect = 0.0;         // ||Σ AA† - I||_F
    bool is_cp = false;
    double min_choi_eigenvalue = 0.0;
};

ChannelAudit audit(const KrausMap& map);

/// The MEMS I channel written out in Pauli form,
///   (1/2)[(1-p)·rho + 2p·σy rho σy + (1-p)·σz rho σz + (1-p)·{rho, σz}],
/// used as an independent route against the operator-sum form. The
/// anti-commutator term is what breaks trace preservation.
DensityMatrix pauli_form_apply(const DensityMatrix& rho, double p);

// JSON schemas: {"label": s, "dim": n, "ops": [<matrix>, ...]} for maps,
// the four audit fields for audits.
nlohmann::json kraus_to_json(const KrausMap& map);
KrausMap kraus_from_json(const nlohmann::json& j);
nlohmann::json audit_to_json(const ChannelAudit& a);

}  // namespace memskit
