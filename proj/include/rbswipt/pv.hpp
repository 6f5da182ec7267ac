#pragma once

// Power-transfer branch: extraction through the output coupler, the
// single-diode photovoltaic model and maximum-power-point tracking.
//
// Circuit (photocurrent source, diode, shunt, series resistance, load):
//   I   = I_ph - I_d - V_d / R_sh
//   I_d = I0 (exp(V_d / (n_s n V_T)) - 1)
//   V_d = V + I R_s          (V = I R_PL at the load)

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbswipt/constants.hpp"
#include "rbswipt/error.hpp"
#include "rbswipt/numeric.hpp"
#include "rbswipt/resonator.hpp"

namespace rbswipt::pv {

struct PVSpec {
    double rho = 0.6;       // responsivity [A/W]
    double I0 = 0.32e-6;    // reverse saturation current [A]
    double R_sh = 53.82;    // shunt resistance [Ohm]
    double R_s = 0.037;     // series resistance [Ohm]
    double n = 1.48;        // ideality factor
    double n_s = 1.0;       // cells in series
    double T = 298.0;       // [K]

    double thermal_voltage() const { return kBoltzmann * T / kElementaryCharge; }
    double diode_scale() const { return n_s * n * thermal_voltage(); }

    void validate() const {
        if (!(rho > 0.0) || !(I0 > 0.0) || !(R_sh > 0.0) || !(R_s > 0.0) || !(n > 0.0) ||
            !(T > 0.0))
            throw PhysicsError("PV spec: all parameters must be positive");
        if (!(n_s >= 1.0)) throw PhysicsError("PV spec: n_s must be >= 1");
    }
};

// Transmission factors from the right face of the gain medium to the PV.
struct PowerChain {
    double Gamma_L2 = 0.99;
    double R_M2 = 0.915;  // output coupler reflectivity; transmits 1 - R_M2
    double Gamma_M5_nu = 0.99;
    double Gamma_L3 = 0.99;
    double Gamma_PV = 0.995;
    double alpha_air = 1e-4;

    double product(double d) const {
        return Gamma_PV * Gamma_L3 * Gamma_M5_nu * (1.0 - R_M2) * Gamma_L2 *
               resonator::air_transmittance(alpha_air, d);
    }
};

struct OperatingPoint {
    double V_charge = 0.0;
    double I_charge = 0.0;
    double P_charge = 0.0;
    double V_d = 0.0;
    double I_d = 0.0;
    double R_PL = 0.0;  // implied load; infinite at open circuit
};

struct KirchhoffResiduals {
    double current = 0.0;  // node equation, relative
    double diode = 0.0;    // diode law, relative
    double voltage = 0.0;  // loop equation, relative

    double max() const { return std::max({current, diode, voltage}); }
};

inline double received_pt_power(const resonator::IntracavitySolution& sol, const PowerChain& chain,
                                double d) {
    if (!sol.lasing()) return 0.0;
    return chain.product(d) * (sol.r1 / sol.r2) * sol.P4;
}

inline double photo_current(const PVSpec& spec, double P_recv_PT) { return spec.rho * P_recv_PT; }

// Exponent clamped at 700 so extreme trial voltages stay finite.
inline double diode_current(const PVSpec& spec, double V_d) {
    return spec.I0 * std::expm1(std::min(V_d / spec.diode_scale(), 700.0));
}

inline KirchhoffResiduals residuals(const PVSpec& spec, double I_ph, const OperatingPoint& op) {
    const double i_scale = std::max({std::abs(I_ph), std::abs(op.I_charge), std::abs(op.I_d), 1e-300});
    const double d_scale = std::max(std::abs(op.I_d), spec.I0);
    const double v_scale = std::max({std::abs(op.V_d), std::abs(op.V_charge), 1e-300});
    return {std::abs(op.I_charge - (I_ph - op.I_d - op.V_d / spec.R_sh)) / i_scale,
            std::abs(op.I_d - diode_current(spec, op.V_d)) / d_scale,
            std::abs(op.V_d - (op.V_charge + op.I_charge * spec.R_s)) / v_scale};
}

inline OperatingPoint make_point(const PVSpec& spec, double V, double I) {
    OperatingPoint op;
    op.V_charge = V;
    op.I_charge = I;
    op.P_charge = V * I;
    op.V_d = V + I * spec.R_s;
    op.I_d = diode_current(spec, op.V_d);
    op.R_PL = I > 0.0 ? V / I : std::numeric_limits<double>::infinity();
    return op;
}

// V at which the terminal current vanishes: I_ph = I_d(V) + V / R_sh.
inline double open_circuit_voltage(const PVSpec& spec, double I_ph) {
    if (!(I_ph > 0.0)) return 0.0;
    const double no_shunt = spec.diode_scale() * std::log1p(I_ph / spec.I0);
    return numeric::bisect(
        [&](double v) { return I_ph - diode_current(spec, v) - v / spec.R_sh; }, 0.0, no_shunt);
}

// Operating point at a prescribed terminal voltage. The unknown is bracketed
// as V_d in [V, V + I_ph R_s]; the search runs on the terminal current
// I = (V_d - V) / R_s in [0, I_ph], which is the same bracket but keeps the
// node equation well conditioned when R_s is tiny.
inline OperatingPoint solve_operating_point(const PVSpec& spec, double I_ph, double V_charge) {
    if (!(V_charge >= 0.0)) throw SolverError("charging voltage must be non-negative", V_charge);
    if (!(I_ph > 0.0)) {
        if (V_charge == 0.0) return make_point(spec, 0.0, 0.0);
        throw SolverError("inconsistent circuit state: no photocurrent at V > 0", V_charge);
    }
    const auto node = [&](double i) {
        const double v_d = V_charge + i * spec.R_s;
        return I_ph - diode_current(spec, v_d) - v_d / spec.R_sh - i;
    };
    const double at_zero = node(0.0);
    if (at_zero < -1e-12 * I_ph)
        throw SolverError("inconsistent circuit state: V_charge above open-circuit voltage",
                          V_charge);
    if (at_zero <= 0.0) return make_point(spec, V_charge, 0.0);
    return make_point(spec, V_charge, numeric::bisect(node, 0.0, I_ph));
}

// Same circuit parameterized by the load resistance, V_d = I (R_PL + R_s).
inline OperatingPoint solve_for_load(const PVSpec& spec, double I_ph, double R_PL) {
    if (!(R_PL >= 0.0)) throw SolverError("load resistance must be non-negative", R_PL);
    if (!(I_ph > 0.0)) return make_point(spec, 0.0, 0.0);
    const double r_total = R_PL + spec.R_s;
    const auto node = [&](double i) {
        const double v_d = i * r_total;
        return I_ph - diode_current(spec, v_d) - v_d / spec.R_sh - i;
    };
    const double i = numeric::bisect(node, 0.0, I_ph);
    return make_point(spec, i * R_PL, i);
}

inline constexpr double kMpptVoltageTolerance = 1e-6;
inline constexpr int kUnimodalityProbe = 64;
inline constexpr int kFallbackScan = 10000;

// Maximum charging power over 0 <= V <= V_oc. Golden-section search, checked
// against a coarse probe; if the probe beats it (P(V) not unimodal) a dense
// scan picks the bracket and golden-section refines inside it.
inline OperatingPoint mppt(const PVSpec& spec, double I_ph) {
    if (!(I_ph > 0.0)) return make_point(spec, 0.0, 0.0);
    const double v_oc = open_circuit_voltage(spec, I_ph);
    const auto power = [&](double v) {
        return v * solve_operating_point(spec, I_ph, std::min(v, v_oc)).I_charge;
    };

    auto best = numeric::golden_section_max(power, 0.0, v_oc, kMpptVoltageTolerance);

    bool unimodal = true;
    for (int k = 1; k < kUnimodalityProbe; ++k) {
        const double v = v_oc * k / kUnimodalityProbe;
        if (power(v) > best.value * (1.0 + 1e-9)) {
            unimodal = false;
            break;
        }
    }
    if (!unimodal) {
        const double step = v_oc / kFallbackScan;
        numeric::Extremum scan;
        for (int k = 0; k <= kFallbackScan; ++k) {
            const double v = step * k;
            const double p = power(v);
            if (p > scan.value) scan = {v, p};
        }
        const auto refined = numeric::golden_section_max(
            power, std::max(0.0, scan.x - step), std::min(v_oc, scan.x + step), kMpptVoltageTolerance);
        best = refined.value >= scan.value ? refined : scan;
    }
    return solve_operating_point(spec, I_ph, std::min(best.x, v_oc));
}

}  // namespace rbswipt::pv
