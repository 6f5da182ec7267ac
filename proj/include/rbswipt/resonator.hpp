#pragma once

// Intracavity power: Rigrod analysis of the equivalent two-mirror resonator,
// coupled to the conversion loss of the intracavity SHG crystal.
//
// Traveling-wave powers (see the power-stage picture of the resonator):
//   P4 -> (left equivalent mirror, r1^2) -> P1 -> gain -> P2
//   P2 -> (right equivalent mirror, r2^2) -> P3 -> gain -> P4
// with P1 P4 = P2 P3 everywhere along the axis.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "rbswipt/constants.hpp"
#include "rbswipt/error.hpp"
#include "rbswipt/optics.hpp"

namespace rbswipt::resonator {

struct GainMediumSpec {
    double I_s = 1.1976e7;   // saturation intensity [W/m^2]
    double a_g = 2e-3;       // aperture radius [m]
    double l_g = 1e-3;       // thickness [m]
    double eta_c = 0.439;    // combined pumping efficiency
    double Gamma_g = 0.9851; // single-pass transmittance at the resonant wavelength
    double lambda = 1064e-9; // resonant wavelength [m]

    double volume() const { return kPi * a_g * a_g * l_g; }

    void validate() const {
        if (!(I_s > 0.0) || !(a_g > 0.0) || !(l_g > 0.0) || !(lambda > 0.0))
            throw PhysicsError("gain medium: I_s, a_g, l_g, lambda must be positive");
        if (!(eta_c > 0.0 && eta_c <= 1.0) || !(Gamma_g > 0.0 && Gamma_g <= 1.0))
            throw PhysicsError("gain medium: eta_c and Gamma_g must lie in (0, 1]");
    }
};

struct ShgSpec {
    double d_eff = 4.7e-12;  // effective nonlinear coefficient [m/V]
    double l_s = 0.4e-3;     // crystal thickness [m]
    double n0 = 2.23;        // refractive index
    double Gamma_SHG = 0.99; // transmittance excluding conversion

    void validate() const {
        if (!(d_eff >= 0.0) || !(l_s > 0.0))
            throw PhysicsError("SHG crystal: d_eff >= 0 and l_s > 0 required");
        if (!(n0 > 1.0)) throw PhysicsError("SHG crystal: n0 must exceed 1");
        if (!(Gamma_SHG > 0.0 && Gamma_SHG <= 1.0))
            throw PhysicsError("SHG crystal: Gamma_SHG must lie in (0, 1]");
    }

    // 8 pi^2 d_eff^2 l_s^2 / (eps0 c lambda^2 n0^3), in m^2/W.
    double coupling(double lambda) const {
        return 8.0 * kPi * kPi * d_eff * d_eff * l_s * l_s /
               (kVacuumPermittivity * kSpeedOfLight * lambda * lambda * n0 * n0 * n0);
    }
};

// How the diffraction loss factor is obtained.
enum class DiffractionModel {
    constant,        // user-supplied value
    gain_aperture,   // TEM00 clipped by the gain-medium aperture (default)
    receiver_pupil,  // multimode beam clipped at the RR2 pupil
};

struct DiffractionLoss {
    DiffractionModel model = DiffractionModel::gain_aperture;
    double value = 1.0;  // used when model == constant

    static DiffractionLoss fixed(double v) { return {DiffractionModel::constant, v}; }
};

inline const char* to_string(DiffractionModel m) {
    switch (m) {
        case DiffractionModel::constant: return "constant";
        case DiffractionModel::gain_aperture: return "gain_aperture";
        case DiffractionModel::receiver_pupil: return "receiver_pupil";
    }
    return "?";
}

struct LossBudget {
    double Gamma_L1 = 0.99;
    double Gamma_L2 = 0.99;
    double R_M1 = 0.995;
    double R_M2 = 0.915;
    double alpha_air = 1e-4;  // [1/m]
    DiffractionLoss Gamma_diff{};

    double Gamma_RR1() const { return Gamma_L1 * Gamma_L1 * R_M1; }
    double Gamma_RR2() const { return Gamma_L2 * Gamma_L2 * R_M2; }

    void validate() const {
        for (double v : {Gamma_L1, Gamma_L2, R_M1, R_M2})
            if (!(v > 0.0 && v <= 1.0)) throw PhysicsError("loss budget factors must lie in (0, 1]");
        if (!(alpha_air >= 0.0)) throw PhysicsError("alpha_air must be non-negative");
        if (Gamma_diff.model == DiffractionModel::constant &&
            !(Gamma_diff.value > 0.0 && Gamma_diff.value <= 1.0))
            throw PhysicsError("Gamma_diff must lie in (0, 1]");
    }
};

inline double air_transmittance(double alpha_air, double d) { return std::exp(-alpha_air * d); }

// Fraction of a Gaussian of 1/e^2 radius w passing a centered circular aperture a.
inline double clipped_gaussian_fraction(double a, double w) {
    return -std::expm1(-2.0 * a * a / (w * w));
}

inline double diffraction_loss(const optics::CavityGeometry& geom, const optics::RayMatrix& abcd,
                               double a_g, double lambda,
                               const DiffractionLoss& model = {}) {
    switch (model.model) {
        case DiffractionModel::constant:
            return model.value;
        case DiffractionModel::gain_aperture: {
            const auto q = optics::q_at(geom, abcd, geom.z_gain());
            return clipped_gaussian_fraction(a_g, optics::fundamental_radius(q, lambda));
        }
        case DiffractionModel::receiver_pupil: {
            const auto w = optics::beam_radius(geom, abcd, a_g, lambda, geom.z_receiver_pupil()).w;
            return clipped_gaussian_fraction(a_g, w);
        }
    }
    throw PhysicsError("unknown diffraction model");
}

struct Reflectances {
    double r1 = 0.0;  // amplitude reflection of the transmitter-side equivalent mirror
    double r2 = 0.0;  // amplitude reflection of the receiver-side equivalent mirror
};

inline Reflectances equivalent_reflectances(const LossBudget& loss, const ShgSpec& shg,
                                            const GainMediumSpec& gain, double eta_shg, double d,
                                            double gamma_diff) {
    const double r1 = (1.0 - eta_shg) * shg.Gamma_SHG * std::sqrt(loss.Gamma_RR1());
    const double r2 = gain.Gamma_g * air_transmittance(loss.alpha_air, d) *
                      std::sqrt(loss.Gamma_RR2() * gamma_diff);
    return {r1, r2};
}

// Low-conversion plane-wave SHG efficiency at the crystal; 2 P4 / (pi w0^2)
// is the intensity of both traveling waves together.
inline double shg_efficiency(const ShgSpec& shg, double P4, double w0, double lambda) {
    return shg.coupling(lambda) * 2.0 * P4 / (kPi * w0 * w0);
}

// Pump power at which the Rigrod bracket vanishes.
inline double lasing_threshold(const GainMediumSpec& gain, const Reflectances& r) {
    return std::log(1.0 / (r.r1 * r.r2)) * gain.I_s * gain.volume() / (gain.l_g * gain.eta_c);
}

// Power incident on the left equivalent mirror. Returns 0 below threshold.
inline double rigrod_p4(const GainMediumSpec& gain, const Reflectances& r, double P_in) {
    const double rr = r.r1 * r.r2;
    if (!(r.r1 > 0.0) || !(r.r2 > 0.0)) return 0.0;
    if (rr >= 1.0) throw SolverError("lossless cavity divergence (r1 r2 >= 1)");
    const double bracket =
        gain.l_g * gain.eta_c * P_in / (gain.I_s * gain.volume()) - std::log(1.0 / rr);
    if (bracket <= 0.0) return 0.0;
    const double prefactor =
        kPi * gain.a_g * gain.a_g * gain.I_s / ((1.0 + r.r1 / r.r2) * (1.0 - rr));
    return prefactor * bracket;
}

enum class LasingStatus { lasing, below_threshold };

struct IntracavitySolution {
    double P1 = 0.0;
    double P2 = 0.0;
    double P3 = 0.0;
    double P4 = 0.0;
    double eta_SHG = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double P_c = 0.0;  // frequency-doubled carrier power
    LasingStatus status = LasingStatus::below_threshold;

    double w0 = 0.0;          // multimode radius at the SHG crystal
    double gamma_diff = 1.0;  // diffraction factor actually used
    int iterations = 0;
    bool plane_wave_valid = true;  // l_s below the Rayleigh range at z = 0
    bool small_conversion = true;  // eta_SHG <= 0.1

    bool lasing() const { return status == LasingStatus::lasing; }
};

struct SolverOptions {
    double damping = 0.5;
    double tolerance = 1e-10;
    int max_iterations = 10000;
    // Called once per iteration with (iteration, eta_SHG, P4).
    std::function<void(int, double, double)> on_iterate;
};

inline constexpr double kSmallConversionLimit = 0.1;

// Self-consistent solution of the Rigrod/SHG system: damped fixed-point
// iteration eta <- (1 - damping) eta + damping * eta_SHG(P4(eta)).
inline IntracavitySolution solve_intracavity(const GainMediumSpec& gain, const ShgSpec& shg,
                                             const LossBudget& loss,
                                             const optics::CavityGeometry& geom, double P_in,
                                             const SolverOptions& opts = {}) {
    gain.validate();
    shg.validate();
    loss.validate();
    const auto abcd = optics::single_pass_abcd(geom);
    if (optics::classify(abcd) != optics::Stability::stable)
        throw PhysicsError("cavity is not stable at d = " + std::to_string(geom.d) + " m");
    if (!(P_in >= 0.0)) throw PhysicsError("pump power must be non-negative");

    IntracavitySolution sol;
    const auto profile = optics::beam_radius(geom, abcd, gain.a_g, gain.lambda, 0.0);
    sol.w0 = profile.w;
    sol.plane_wave_valid = shg.l_s < optics::rayleigh_range(profile.w00, gain.lambda);
    sol.gamma_diff = diffraction_loss(geom, abcd, gain.a_g, gain.lambda, loss.Gamma_diff);

    const auto reflect = [&](double eta) {
        return equivalent_reflectances(loss, shg, gain, eta, geom.d, sol.gamma_diff);
    };
    const auto power = [&](double eta) { return rigrod_p4(gain, reflect(eta), P_in); };
    const auto conversion = [&](double p4) {
        return std::clamp(shg_efficiency(shg, p4, sol.w0, gain.lambda), 0.0, 1.0 - 1e-12);
    };

    double eta = 0.0;
    double p4 = power(eta);
    if (p4 <= 0.0) {
        sol.r1 = reflect(0.0).r1;
        sol.r2 = reflect(0.0).r2;
        return sol;
    }

    bool converged = false;
    int it = 0;
    while (it < opts.max_iterations) {
        ++it;
        const double next_eta = (1.0 - opts.damping) * eta + opts.damping * conversion(p4);
        const double next_p4 = power(next_eta);
        if (opts.on_iterate) opts.on_iterate(it, next_eta, next_p4);
        const bool p4_settled =
            next_p4 > 0.0 && std::abs(next_p4 - p4) <= opts.tolerance * next_p4;
        eta = next_eta;
        p4 = next_p4;
        if (p4_settled && std::abs(conversion(p4) - eta) <= opts.tolerance * std::max(eta, 1e-300)) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw SolverError("intracavity fixed point did not converge in " +
                              std::to_string(opts.max_iterations) + " iterations",
                          p4);

    const auto r = reflect(eta);
    sol.iterations = it;
    sol.status = LasingStatus::lasing;
    sol.eta_SHG = eta;
    sol.r1 = r.r1;
    sol.r2 = r.r2;
    sol.P4 = p4;
    sol.P2 = r.r1 / r.r2 * p4;
    sol.P1 = r.r1 * r.r1 * p4;
    sol.P3 = r.r2 * r.r2 * sol.P2;
    sol.P_c = 2.0 * eta * p4;
    sol.small_conversion = eta <= kSmallConversionLimit;
    return sol;
}

}  // namespace rbswipt::resonator
