#include "memskit/qed.hpp"

#include <cmath>
#include <stdexcept>

namespace memskit {

namespace {
const Complex kI(0.0, 1.0);
}

Transmissivity::Transmissivity(double t) : t_(t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("Transmissivity: T must lie in [0, 1]");
    }
    r_ = std::sqrt(1.0 - t_ * t_);
}

int TwoPhotonState::index(int mode, int pol_a, int pol_b) {
    if (mode < 1 || mode > 4 || pol_a < 0 || pol_a > 1 || pol_b < 0 || pol_b > 1) {
        throw std::out_of_range("TwoPhotonState: index out of range");
    }
    return ((mode - 1) * 2 + pol_a) * 2 + pol_b;
}

Complex TwoPhotonState::amplitude(int mode, int pol_a, int pol_b) const {
    return amps_[index(mode, pol_a, pol_b)];
}

void TwoPhotonState::set_amplitude(int mode, int pol_a, int pol_b, Complex value) {
    amps_[index(mode, pol_a, pol_b)] = value;
}

double TwoPhotonState::norm_squared() const {
    double n = 0.0;
    for (const Complex& a : amps_) {
        n += std::norm(a);
    }
    return n;
}

Complex TwoPhotonState::dot(const TwoPhotonState& other) const {
    Complex d = 0.0;
    for (int i = 0; i < 16; ++i) {
        d += std::conj(amps_[i]) * other.amps_[i];
    }
    return d;
}

double distance(const TwoPhotonState& x, const TwoPhotonState& y) {
    double d = 0.0;
    for (int mode = 1; mode <= 4; ++mode) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                d += std::norm(x.amplitude(mode, a, b) - y.amplitude(mode, a, b));
            }
        }
    }
    return std::sqrt(d);
}

TwoPhotonState initial_singlet_fock() {
    TwoPhotonState s;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    s.set_amplitude(1, 0, 1, inv_sqrt2);
    s.set_amplitude(1, 1, 0, -inv_sqrt2);
    return s;
}

TwoPhotonState apply_bs(const TwoPhotonState& s) {
    TwoPhotonState out = s;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const Complex c1 = s.amplitude(1, a, b);
            const Complex c2 = s.amplitude(2, a, b);
            out.set_amplitude(1, a, b, inv_sqrt2 * (c1 + kI * c2));
            out.set_amplitude(2, a, b, inv_sqrt2 * (kI * c1 + c2));
        }
    }
    return out;
}

TwoPhotonState apply_rotator(const TwoPhotonState& s) {
    TwoPhotonState out = s;
    for (int b = 0; b < 2; ++b) {
        const Complex h = s.amplitude(1, 0, b);
        const Complex v = s.amplitude(1, 1, b);
        out.set_amplitude(1, 0, b, -v);
        out.set_amplitude(1, 1, b, h);
    }
    return out;
}

CMatrix pbs_matrix() {
    CMatrix u = CMatrix::Zero(4, 4);
    u(0, 0) = 1.0;
    u(1, 3) = kI;
    u(2, 2) = 1.0;
    u(3, 1) = kI;
    return u;
}

TwoPhotonState apply_pbs(const TwoPhotonState& s) {
    // The substitution tuple -> U·tuple rewrites amplitudes by U^T: a
    // creation operator's coefficient follows it to wherever it is sent.
    TwoPhotonState out = s;
    const CMatrix u = pbs_matrix();
    for (int b = 0; b < 2; ++b) {
        const Eigen::Vector4cd c(s.amplitude(2, 0, b), s.amplitude(2, 1, b),
                                 s.amplitude(3, 0, b), s.amplitude(3, 1, b));
        const Eigen::Vector4cd cp = u.transpose() * c;
        out.set_amplitude(2, 0, b, cp(0));
        out.set_amplitude(2, 1, b, cp(1));
        out.set_amplitude(3, 0, b, cp(2));
        out.set_amplitude(3, 1, b, cp(3));
    }
    return out;
}

TwoPhotonState apply_attenuator(const TwoPhotonState& s, const Transmissivity& t) {
    TwoPhotonState out = s;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const Complex c2 = s.amplitude(2, a, b);
            const Complex c4 = s.amplitude(4, a, b);
            out.set_amplitude(2, a, b, t.T() * c2 + kI * t.R() * c4);
            out.set_amplitude(4, a, b, kI * t.R() * c2 + t.T() * c4);
        }
    }
    return out;
}

TwoPhotonState channel_output(const Transmissivity& t) {
    return apply_attenuator(apply_pbs(apply_rotator(apply_bs(initial_singlet_fock()))), t);
}

ModeSplit split_by_modes(const TwoPhotonState& s) {
    ModeSplit split;
    for (int mode = 1; mode <= 4; ++mode) {
        TwoPhotonState& target = (mode <= 2) ? split.psi12 : split.psi34;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                target.set_amplitude(mode, a, b, s.amplitude(mode, a, b));
            }
        }
    }
    return split;
}

DensityMatrix trace_spatial(const TwoPhotonState& s) {
    CMatrix rho = CMatrix::Zero(4, 4);
    for (int mode = 1; mode <= 4; ++mode) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                for (int a2 = 0; a2 < 2; ++a2) {
                    for (int b2 = 0; b2 < 2; ++b2) {
                        rho(2 * a + b, 2 * a2 + b2) +=
                            s.amplitude(mode, a, b) * std::conj(s.amplitude(mode, a2, b2));
                    }
                }
            }
        }
    }
    return DensityMatrix(rho);
}

double p_of_T(const Transmissivity& t) {
    return 2.0 / (2.0 + t.T() * t.T());
}

DensityMatrix normalized_mems_from_qed(const Transmissivity& t) {
    const DensityMatrix rho12 = trace_spatial(split_by_modes(channel_output(t)).psi12);
    return DensityMatrix(rho12.matrix() / rho12.trace());
}

ReducedMatrices reduced_matrices(const Transmissivity& t) {
    const ModeSplit split = split_by_modes(channel_output(t));
    const DensityMatrix rho12 = trace_spatial(split.psi12);
    const DensityMatrix rho34 = trace_spatial(split.psi34);
    return ReducedMatrices{partial_trace(rho12, Keep::first), partial_trace(rho12, Keep::second),
                           partial_trace(rho34, Keep::first), partial_trace(rho34, Keep::second)};
}

nlohmann::json two_photon_to_json(const TwoPhotonState& s) {
    nlohmann::json amps = nlohmann::json::array();
    for (int mode = 1; mode <= 4; ++mode) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const Complex c = s.amplitude(mode, a, b);
                if (c.real() != 0.0 || c.imag() != 0.0) {
                    amps.push_back({{"mode", mode},
                                    {"pol_a", a},
                                    {"pol_b", b},
                                    {"re", c.real()},
                                    {"im", c.imag()}});
                }
            }
        }
    }
    return {{"amps", std::move(amps)}};
}

TwoPhotonState two_photon_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("amps") || !j.at("amps").is_array()) {
        throw std::invalid_argument("two_photon_from_json: expected {amps: [...]}");
    }
    TwoPhotonState s;
    for (const auto& entry : j.at("amps")) {
        if (!entry.is_object() || !entry.contains("mode") || !entry.contains("pol_a") ||
            !entry.contains("pol_b") || !entry.contains("re") || !entry.contains("im")) {
            throw std::invalid_argument(
                "two_photon_from_json: each entry needs {mode, pol_a, pol_b, re, im}");
        }
        s.set_amplitude(entry.at("mode").get<int>(), entry.at("pol_a").get<int>(),
                        entry.at("pol_b").get<int>(),
                        Complex(entry.at("re").get<double>(), entry.at("im").get<double>()));
    }
    return s;
}

}  // namespace memskit
