#pragma once

#include <array>
#include <utility>

#include "memskit/linalg.hpp"

namespace memskit {

/// Transmission amplitude of the variable beam splitter that stands in for
/// the attenuator. The reflection amplitude R = sqrt(1 - T^2) is derived,
/// never stored independently, so T^2 + R^2 = 1 holds by construction.
class Transmissivity {
public:
    explicit Transmissivity(double t);
    double T() const { return t_; }
    double R() const { return r_; }

private:
    double t_;
    double r_;
};

/// Two-photon amplitudes over the basis a†(mode, pol_a)·b†(pol_b)|0>, with
/// spatial mode in {1,2,3,4} and polarizations in {0,1}. Photon b never
/// enters the channel, so it carries polarization only. Every element map
/// is unitary; subnormalized values only arise from mode restriction.
class TwoPhotonState {
public:
    TwoPhotonState() = default;  // vacuum

    Complex amplitude(int mode, int pol_a, int pol_b) const;
    void set_amplitude(int mode, int pol_a, int pol_b, Complex value);

    double norm_squared() const;
    double norm() const { return std::sqrt(norm_squared()); }

    /// Inner product <this|other>.
    Complex dot(const TwoPhotonState& other) const;

private:
    static int index(int mode, int pol_a, int pol_b);
    std::array<Complex, 16> amps_{};
};

/// l2 distance between amplitude tables.
double distance(const TwoPhotonState& x, const TwoPhotonState& y);

/// The singlet with photon a in spatial mode 1:
/// (1/sqrt2)(a†(1,0) b†(1) - a†(1,1) b†(0))|0>.
TwoPhotonState initial_singlet_fock();

/// 50/50 beam splitter coupling modes 1 and 2:
/// a†(1,pol) -> (a†(1,pol) + i a†(2,pol))/sqrt2 and the unitary completion
/// a†(2,pol) -> (i a†(1,pol) + a†(2,pol))/sqrt2.
TwoPhotonState apply_bs(const TwoPhotonState& s);

/// Polarization rotator on mode 1: a†(1,0) -> a†(1,1), a†(1,1) -> -a†(1,0).
TwoPhotonState apply_rotator(const TwoPhotonState& s);

/// Polarizing beam splitter coupling modes 2 and 3; transmits H, kicks V
/// across with a phase i. See pbs_matrix() for the explicit unitary.
TwoPhotonState apply_pbs(const TwoPhotonState& s);

/// The unitary applied by apply_pbs on (a†(2,0), a†(2,1), a†(3,0), a†(3,1)).
CMatrix pbs_matrix();

/// Attenuator as a variable beam splitter coupling modes 2 and 4:
/// a†(2,pol) -> T a†(2,pol) + i R a†(4,pol), and completion on mode 4.
TwoPhotonState apply_attenuator(const TwoPhotonState& s, const Transmissivity& t);

/// Full element chain (BS, rotator, PBS, attenuator) on the singlet.
TwoPhotonState channel_output(const Transmissivity& t);

struct ModeSplit {
    TwoPhotonState psi12;  // support on spatial modes 1 and 2
    TwoPhotonState psi34;  // support on spatial modes 3 and 4
};

/// Orthogonal decomposition by detected mode pair; psi12 + psi34 = s.
ModeSplit split_by_modes(const TwoPhotonState& s);

/// Trace over photon a's spatial mode: the (possibly truncated) two-qubit
/// polarization density matrix rho[(pol_a,pol_b),(pol_a',pol_b')] =
/// Σ_mode amp·conj(amp'). Unit trace for full pipeline states; less for
/// mode-restricted ones.
DensityMatrix trace_spatial(const TwoPhotonState& s);

/// Channel parameter realized at transmissivity T: p = 2/(2 + T^2), which
/// covers [2/3, 1] including the endpoint the two-port device cannot reach.
double p_of_T(const Transmissivity& t);

/// rho12 / Tr(rho12) for the pipeline at T: the mems1 state at p_of_T(T).
DensityMatrix normalized_mems_from_qed(const Transmissivity& t);

/// Single-photon reduced matrices of the two truncated states, e.g.
/// rho12_photon_b = rho12 with photon a's polarization traced out. Their
/// photon-wise sums equal I/2 exactly: truncation, not the channel, is what
/// disturbs the remote photon.
struct ReducedMatrices {
    DensityMatrix rho12_photon_a;
    DensityMatrix rho12_photon_b;
    DensityMatrix rho34_photon_a;
    DensityMatrix rho34_photon_b;
};

ReducedMatrices reduced_matrices(const Transmissivity& t);

// JSON: {"amps": [{"mode": i, "pol_a": a, "pol_b": b, "re": x, "im": y}, ...]},
// nonzero entries only.
nlohmann::json two_photon_to_json(const TwoPhotonState& s);
TwoPhotonState two_photon_from_json(const nlohmann::json& j);

}  // namespace memskit
