#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace memskit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance for structural checks: Hermiticity, positivity, matching of
/// closed-form matrices.
inline constexpr double kTol = 1e-10;

// Basis conventions, fixed for the whole project:
//   * polarization H -> 0, V -> 1;
//   * two-qubit matrices are ordered |00>, |01>, |10>, |11> with photon a
//     as the left (first) qubit.
inline constexpr int kPolH = 0;
inline constexpr int kPolV = 1;

CMatrix identity(Eigen::Index n);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// Kronecker product. Block layout follows the basis convention above:
/// (a ⊗ b)(i*rows(b)+k, j*cols(b)+l) = a(i,j)·b(k,l).
CMatrix tensor(const CMatrix& a, const CMatrix& b);

/// Which subsystem survives a partial trace of a two-qubit matrix.
enum class Keep { first, second };

/// Partial trace of a 4x4 matrix down to 2x2. Keep::first keeps the left
/// qubit (photon a), Keep::second keeps the right qubit (photon b). The
/// trace of the result equals the trace of the input.
CMatrix partial_trace(const CMatrix& m, Keep keep);

bool is_hermitian(const CMatrix& m, double tol = kTol);

/// Real eigenvalues of a Hermitian matrix, sorted descending.
/// Throws std::invalid_argument if the input is not Hermitian within tol.
std::vector<double> hermitian_eigenvalues(const CMatrix& m, double tol = kTol);

/// Eigenvalues of an arbitrary square complex matrix, unordered.
std::vector<Complex> general_eigenvalues(const CMatrix& m);

/// A density operator: Hermitian, positive semidefinite and real-traced
/// within tol. The trace is deliberately NOT required to equal one:
/// truncated (post-selected) states carry their detection probability in
/// the trace.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix mat, double tol = kTol);

    const CMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }
    double trace() const { return mat_.trace().real(); }
    bool has_unit_trace(double tol = kTol) const;

private:
    CMatrix mat_;
};

DensityMatrix partial_trace(const DensityMatrix& rho, Keep keep);

// JSON wire format for matrices, used by every tool and file schema:
//   {"rows": n, "cols": n, "data": [[re, im], ...]}   (row-major)
// Values round-trip bit-exactly for anything representable in a double.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace memskit
