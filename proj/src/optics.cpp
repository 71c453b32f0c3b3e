#include "memskit/optics.hpp"

#include "memskit/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace memskit {

CompositeState::CompositeState(const Eigen::Vector4cd& amps, double tol) : amps_(amps) {
    if (!amps_.allFinite()) {
        throw std::invalid_argument("CompositeState: amplitudes must be finite");
    }
    if (amps_.norm() > 1.0 + tol) {
        throw std::invalid_argument("CompositeState: norm must not exceed 1");
    }
}

CompositeState CompositeState::port1(Complex phi_h, Complex phi_v) {
    return CompositeState(Eigen::Vector4cd(phi_h, 0.0, phi_v, 0.0));
}

OpticalElements standard_elements() {
    OpticalElements e;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    e.B = CMatrix(2, 2);
    e.B << inv_sqrt2, Complex(0, inv_sqrt2), Complex(0, inv_sqrt2), inv_sqrt2;
    e.H = CMatrix(2, 2);
    e.H << 1, 0, 0, 0;
    e.R = CMatrix(2, 2);
    e.R << 0, -1, 1, 0;
    e.P = CMatrix(2, 2);
    e.P << 1, 0, 0, 0;
    e.Q = CMatrix(2, 2);
    e.Q << 0, 0, 0, 1;
    return e;
}

Attenuation::Attenuation(double alpha) : alpha_(alpha) {
    if (std::isnan(alpha_) || alpha_ < 0.0) {
        throw std::domain_error("Attenuation: alpha must be >= 0");
    }
}

CMatrix transmission_matrix(const Attenuation& a) {
    const OpticalElements e = standard_elements();
    return tensor(e.R, e.P * e.B) + a.amplitude_factor() * tensor(e.H, e.Q * e.B);
}

CompositeState propagate(const CompositeState& in, const Attenuation& a) {
    if (std::abs(in.amplitude(kPolH, 1)) > kTol || std::abs(in.amplitude(kPolV, 1)) > kTol) {
        throw std::invalid_argument("propagate: input must enter through port 1 only");
    }
    return CompositeState(transmission_matrix(a) * in.amplitudes());
}

DensityMatrix detected_state(const CompositeState& out) {
    CMatrix j = CMatrix::Zero(2, 2);
    for (int path = 0; path < 2; ++path) {
        for (int pol = 0; pol < 2; ++pol) {
            for (int pol2 = 0; pol2 < 2; ++pol2) {
                j(pol, pol2) += out.amplitude(pol, path) * std::conj(out.amplitude(pol2, path));
            }
        }
    }
    return DensityMatrix(j);
}

DensityMatrix detected_state(const DensityMatrix& rho_in, const Attenuation& a) {
    if (rho_in.dim() != 2) {
        throw std::invalid_argument("detected_state: expected a single-qubit state");
    }
    const OpticalElements e = standard_elements();
    const CMatrix& r = rho_in.matrix();
    return DensityMatrix(0.5 * (e.R * r * e.R.adjoint() +
                                a.intensity_factor() * e.H * r * e.H.adjoint()));
}

DensityMatrix detected_state_two_qubit(const DensityMatrix& rho, const Attenuation& a) {
    if (rho.dim() != 4) {
        throw std::invalid_argument("detected_state_two_qubit: expected a two-qubit state");
    }
    const OpticalElements e = standard_elements();
    const CMatrix r2 = tensor(e.R, identity(2));
    const CMatrix h2 = tensor(e.H, identity(2));
    const CMatrix& r = rho.matrix();
    return DensityMatrix(0.5 * (r2 * r * r2.adjoint() +
                                a.intensity_factor() * h2 * r * h2.adjoint()));
}

Attenuation alpha_for_p(double p) {
    if (!(p >= 2.0 / 3.0)) {
        throw std::domain_error("alpha_for_p: p < 2/3 needs gain, not attenuation");
    }
    if (p >= 1.0) {
        throw std::domain_error(
            "alpha_for_p: p = 1 needs infinite attenuation; use the four-mode model at T = 0");
    }
    double alpha = -0.5 * std::log(2.0 * (1.0 - p) / p);
    if (alpha < 0.0 && alpha >= -kTol) {
        alpha = 0.0;  // p = 2/3 up to roundoff
    }
    return Attenuation(alpha);
}

double verify_channel_equivalence(const DensityMatrix& rho_in, double p) {
    const DensityMatrix j = detected_state(rho_in, alpha_for_p(p));
    const DensityMatrix k = apply(mems1_map(p), rho_in);
    return (2.0 * p * j.matrix() - k.matrix()).norm();
}

nlohmann::json composite_to_json(const CompositeState& s) {
    nlohmann::json amps = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
        amps.push_back({s.amplitudes()(i).real(), s.amplitudes()(i).imag()});
    }
    return {{"basis", "pol⊗path"}, {"amps", std::move(amps)}};
}

CompositeState composite_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("amps") || !j.at("amps").is_array() ||
        j.at("amps").size() != 4) {
        throw std::invalid_argument("composite_from_json: expected {basis, amps[4]}");
    }
    Eigen::Vector4cd amps;
    int i = 0;
    for (const auto& entry : j.at("amps")) {
        if (!entry.is_array() || entry.size() != 2) {
            throw std::invalid_argument("composite_from_json: each amplitude must be [re, im]");
        }
        amps(i++) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
    return CompositeState(amps);
}

}  // namespace memskit
