#pragma once

#include "memskit/linalg.hpp"

namespace memskit {

/// Single-photon amplitudes over (polarization {H,V}) ⊗ (path {1,2}),
/// ordered H1, H2, V1, V2. The device only ever removes amplitude, so the
/// norm never exceeds one.
class CompositeState {
public:
    explicit CompositeState(const Eigen::Vector4cd& amps, double tol = kTol);

    /// Photon entering port 1: (phi_h, phi_v) ⊗ path-1.
    static CompositeState port1(Complex phi_h, Complex phi_v);

    const Eigen::Vector4cd& amplitudes() const { return amps_; }
    Complex amplitude(int pol, int path) const { return amps_(2 * pol + path); }
    double norm() const { return amps_.norm(); }

private:
    Eigen::Vector4cd amps_;
};

/// The fixed optical elements of the two-port channel:
///   B — 50/50 beam splitter on path space, (1/sqrt2)·[[1,i],[i,1]];
///   H — horizontal polarizer, diag(1,0) on polarization space;
///   R — polarization rotator at theta = pi/2, [[0,-1],[1,0]];
///   P, Q — complementary path projectors diag(1,0) and diag(0,1).
struct OpticalElements {
    CMatrix B;
    CMatrix H;
    CMatrix R;
    CMatrix P;
    CMatrix Q;
};

OpticalElements standard_elements();

/// Attenuation exponent alpha >= 0; the element scales amplitude by
/// e^{-alpha}. +infinity is allowed and models a fully blocking attenuator.
class Attenuation {
public:
    explicit Attenuation(double alpha);
    double alpha() const { return alpha_; }
    double amplitude_factor() const { return std::exp(-alpha_); }
    double intensity_factor() const { return std::exp(-2.0 * alpha_); }

private:
    double alpha_;
};

/// The 4x4 transmission matrix R ⊗ (P·B) + e^{-alpha}·H ⊗ (Q·B) in the
/// polarization ⊗ path ordering. Not unitary for any alpha: the polarizer
/// discards V on path 2.
CMatrix transmission_matrix(const Attenuation& a);

/// One pass through the device. The input must enter through port 1 only
/// (vacuum on port 2); throws std::invalid_argument on path-2 support.
CompositeState propagate(const CompositeState& in, const Attenuation& a);

/// Detected single-qubit state: trace over the (detected but unresolved)
/// path degree of freedom. Trace < 1 in general; the deficit is the
/// probability of losing the photon in the attenuator.
DensityMatrix detected_state(const CompositeState& out);

/// Same detected state computed directly from a polarization density matrix,
///   J = (1/2)(R rho R† + e^{-2 alpha} H rho H†),
/// the linear extension needed for mixed inputs.
DensityMatrix detected_state(const DensityMatrix& rho_in, const Attenuation& a);

/// The device acting on photon a of a two-qubit state, photon b untouched:
///   (1/2)[(R⊗I) rho (R⊗I)† + e^{-2 alpha} (H⊗I) rho (H⊗I)†].
DensityMatrix detected_state_two_qubit(const DensityMatrix& rho, const Attenuation& a);

/// Attenuation that calibrates the device to the mems1 channel at parameter
/// p: solves p·e^{-2 alpha} / (2(1-p)) = 1. Defined for 2/3 <= p < 1; p = 1
/// needs infinite attenuation and is rejected (the unitary four-mode model
/// covers that endpoint at T = 0), p < 2/3 would need gain.
Attenuation alpha_for_p(double p);

/// || 2p·J_out - Σ M_mu rho M_mu† ||_F at alpha(p): zero when the device
/// realizes the mems1 channel up to the 1/(2p) detection factor.
double verify_channel_equivalence(const DensityMatrix& rho_in, double p);

// JSON: {"basis": "pol⊗path", "amps": [[re, im] x 4]}.
nlohmann::json composite_to_json(const CompositeState& s);
CompositeState composite_from_json(const nlohmann::json& j);

}  // namespace memskit
