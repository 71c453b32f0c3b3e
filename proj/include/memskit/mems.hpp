#pragma once

#include <optional>
#include <random>

#include "memskit/channels.hpp"

namespace memskit {

enum class MemsFamilyTag { I, II };

struct MemsFamily {
    MemsFamilyTag tag;
    double p;
};

/// The singlet (|01> - |10>)/sqrt(2) as a density matrix.
DensityMatrix singlet();

/// MEMS I state for 2/3 <= p <= 1: corners p/2, entry (1,1) equal to 1-p.
/// Identical to pushing the singlet through the lifted mems1 channel.
DensityMatrix mems1_state(double p);

/// MEMS II state for 0 <= p <= 2/3: diagonal (1/3, 1/3, 0, 1/3), corners p/2.
/// The two families meet at p = 2/3.
DensityMatrix mems2_state(double p);

/// Wootters concurrence, C in [0, 1]. Computed from the eigenvalues of
/// rho·(σy⊗σy)·rho*·(σy⊗σy): real parts clamped at zero, square-rooted,
/// sorted descending, then C = max(0, l0 - l1 - l2 - l3). Requires unit
/// trace; callers normalize truncated states first.
double concurrence(const DensityMatrix& rho);

/// Linear entropy S_L = (4/3)(1 - Tr rho^2), in [0, 1]. Requires unit trace.
double linear_entropy(const DensityMatrix& rho);

/// Inverse lookup of the two state families. The candidate parameter is read
/// off designated entries (p = 2·rho(0,0) for family I, p = 2·|rho(0,3)| for
/// family II) and accepted if the Frobenius distance to the corresponding
/// closed-form state is within tol. Family I wins the tie at p = 2/3.
std::optional<MemsFamily> classify(const DensityMatrix& rho, double tol);

/// || Tr_a(rho_out) - Tr_a(rho_in) ||_F: how much the channel on photon a
/// moved photon b's reduced state. Zero for anything a local physical
/// channel can do; nonzero on the truncated states here.
double locality_defect(const DensityMatrix& rho_in, const DensityMatrix& rho_out);

/// Uhlmann fidelity F(a, b) = (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

struct MemsReport {
    std::optional<MemsFamily> family;
    double concurrence = 0.0;
    double linear_entropy = 0.0;
    double trace = 0.0;
    double fidelity_to_reference = 0.0;
};

/// Diagnostic bundle for a unit-trace two-qubit state. fidelity_to_reference
/// is taken against the nearest closed-form family candidate.
MemsReport make_report(const DensityMatrix& rho);

nlohmann::json report_to_json(const MemsReport& report);

/// Random two-qubit density matrix under the Hilbert-Schmidt measure
/// (normalized G·G† with complex standard-normal G).
DensityMatrix hs_random_state(std::mt19937_64& rng);

/// Haar-random single-qubit pure state as a rank-one density matrix.
DensityMatrix random_pure_qubit(std::mt19937_64& rng);

}  // namespace memskit
