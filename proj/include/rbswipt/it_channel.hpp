#pragma once

// Information-transfer branch: carrier delivery to the photodiode, capture by
// the concentrator, shot + thermal noise and the intensity-channel rate bound.

#include <algorithm>
#include <cmath>

#include "rbswipt/constants.hpp"
#include "rbswipt/error.hpp"

namespace rbswipt::it {

struct ConcentratorSpec {
    double A_PD = 0.16e-6;         // detector area [m^2]
    double Psi_c = 30.0 * (kPi / 180.0);     // semi-angle field of view [rad]
    double n_c = 1.5;              // internal refractive index
    double T_s = 0.995;            // surface transmissivity (angle independent)
    double psi = 0.0;              // incidence angle [rad]

    void validate() const {
        if (!(A_PD > 0.0)) throw PhysicsError("concentrator: A_PD must be positive");
        if (!(Psi_c > 0.0 && Psi_c <= kPi / 2.0))
            throw PhysicsError("concentrator: Psi_c must lie in (0, pi/2]");
        if (!(n_c >= 1.0)) throw PhysicsError("concentrator: n_c must be >= 1");
        if (!(T_s > 0.0 && T_s <= 1.0)) throw PhysicsError("concentrator: T_s must lie in (0, 1]");
        if (!(psi >= 0.0)) throw PhysicsError("concentrator: psi must be >= 0");
    }
};

struct NoiseSpec {
    double B = 800e6;       // bandwidth [Hz]
    double T = 298.0;       // temperature [K]
    double R_IL = 10e3;     // load resistance [Ohm]
    double I_bk = 5100e-6;  // background photocurrent [A]
    double gamma = 0.4;     // PD responsivity [A/W]

    void validate() const {
        if (!(B > 0.0) || !(T > 0.0) || !(R_IL > 0.0) || !(I_bk >= 0.0) || !(gamma > 0.0))
            throw PhysicsError("noise spec: B, T, R_IL, gamma must be positive and I_bk >= 0");
    }
};

// Transmission factors along the carrier path, transmitter to photodiode.
struct CarrierChain {
    double Gamma_L1 = 0.99;
    double Gamma_g_EOM = 0.9752;  // gain medium + EOM body
    double Gamma_air = 1.0;
    double Gamma_L2 = 0.99;
    double Gamma_M2_2nu = 0.99;
    double R_M5_2nu = 0.995;
    double Gamma_L4 = 0.99;

    double product() const {
        return Gamma_L1 * Gamma_g_EOM * Gamma_air * Gamma_L2 * Gamma_M2_2nu * R_M5_2nu * Gamma_L4;
    }
};

struct ITResult {
    double P_recv_IT = 0.0;  // [W]
    double sigma_n2 = 0.0;   // [A^2]
    double R_b = 0.0;        // [bit/s/Hz]
};

inline bool in_field_of_view(const ConcentratorSpec& s) { return s.psi <= s.Psi_c; }

inline double concentrator_gain(const ConcentratorSpec& s) {
    if (!in_field_of_view(s)) return 0.0;
    const double sine = std::sin(s.Psi_c);
    return s.n_c * s.n_c / (sine * sine);
}

inline double effective_area(const ConcentratorSpec& s) {
    if (!in_field_of_view(s)) return 0.0;
    return s.A_PD * s.T_s * concentrator_gain(s) * std::cos(s.psi);
}

inline double pd_capture_ratio(double A_eff, double A_o) {
    if (!(A_o > 0.0)) throw PhysicsError("beam cross-section must be positive");
    return std::min(A_eff / A_o, 1.0);
}

inline double received_it_power(double P_c, const CarrierChain& chain, double Gamma_PD) {
    return Gamma_PD * chain.product() * P_c;
}

inline double noise_variance(const NoiseSpec& n, double P_recv_IT) {
    const double shot = 2.0 * kElementaryCharge * (n.gamma * P_recv_IT + n.I_bk) * n.B;
    const double thermal = 4.0 * kBoltzmann * n.T * n.B / n.R_IL;
    return shot + thermal;
}

inline double thermal_noise_floor(const NoiseSpec& n) { return noise_variance({n.B, n.T, n.R_IL, 0.0, n.gamma}, 0.0); }

// Lower bound on the capacity of the optical intensity channel,
// 1/2 log2(1 + (gamma P)^2 / (2 pi e sigma^2)).
inline double achievable_rate(const NoiseSpec& n, double P_recv_IT) {
    if (!(P_recv_IT > 0.0)) return 0.0;
    const double signal = n.gamma * P_recv_IT;
    const double snr = signal * signal / (2.0 * kPi * kEuler * noise_variance(n, P_recv_IT));
    return 0.5 * std::log2(1.0 + snr);
}

inline ITResult evaluate(const NoiseSpec& n, double P_recv_IT) {
    return {P_recv_IT, noise_variance(n, P_recv_IT), achievable_rate(n, P_recv_IT)};
}

}  // namespace rbswipt::it
