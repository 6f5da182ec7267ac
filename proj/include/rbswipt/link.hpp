#pragma once

// End-to-end evaluation of one configuration:
// stability -> beam radii -> intracavity power -> IT and PT branches ->
// achievable rate and MPPT charging power.

#include <string>

#include "rbswipt/params.hpp"

namespace rbswipt {

enum class LinkStatus { ok, below_threshold, unstable };

inline const char* to_string(LinkStatus s) {
    switch (s) {
        case LinkStatus::ok: return "ok";
        case LinkStatus::below_threshold: return "below_threshold";
        case LinkStatus::unstable: return "unstable";
    }
    return "?";
}

struct LinkResult {
    double P_recv_PT = 0.0;     // optical power on the PV [W]
    double P_recv_IT = 0.0;     // optical power on the PD [W]
    double P_hat_charge = 0.0;  // MPPT electrical power [W]
    double R_b = 0.0;           // [bit/s/Hz]
    double V_mpp = 0.0;         // [V]
    double eta_SHG = 0.0;
    LinkStatus status = LinkStatus::unstable;

    // Diagnostics, zero unless status == ok.
    double P4 = 0.0;
    double P_c = 0.0;
    double Gamma_PD = 0.0;
    double Gamma_diff = 0.0;
    bool plane_wave_valid = true;
};

namespace detail {

// Re-throws library errors with the pipeline stage prepended, keeping the type.
template <typename Fn>
auto staged(const char* stage, Fn&& fn) -> decltype(fn()) {
    const auto label = [stage](const std::exception& e) { return std::string(stage) + ": " + e.what(); };
    try {
        return fn();
    } catch (const SolverError& e) {
        throw SolverError(label(e), e.last_iterate());
    } catch (const PhysicsError& e) {
        throw PhysicsError(label(e));
    } catch (const ConfigError& e) {
        throw ConfigError(label(e));
    }
}

}  // namespace detail

// Beam cross-section at the detector plane, pi w^2(z_PV).
inline double detector_beam_area(const SystemParams& p) {
    const auto abcd = optics::single_pass_abcd(p.geometry);
    const double w =
        optics::beam_radius(p.geometry, abcd, p.gain.a_g, p.gain.lambda, p.geometry.z_PV()).w;
    return kPi * w * w;
}

inline double capture_ratio(const SystemParams& p) {
    if (!p.Gamma_PD.use_concentrator) return p.Gamma_PD.value;
    return it::pd_capture_ratio(it::effective_area(p.concentrator), detector_beam_area(p));
}

inline resonator::IntracavitySolution solve_intracavity(const SystemParams& p,
                                                        const resonator::SolverOptions& opts = {}) {
    return resonator::solve_intracavity(p.gain, p.shg, p.loss, p.geometry, p.P_in, opts);
}

inline LinkResult evaluate_link(const SystemParams& p) {
    p.validate();
    LinkResult out;

    const auto stability = detail::staged("optics", [&] { return optics::stability_check(p.geometry); });
    if (stability != optics::Stability::stable) {
        out.status = LinkStatus::unstable;
        return out;
    }

    const auto sol = detail::staged("resonator", [&] { return solve_intracavity(p); });
    if (!sol.lasing()) {
        out.status = LinkStatus::below_threshold;
        return out;
    }

    out.status = LinkStatus::ok;
    out.P4 = sol.P4;
    out.P_c = sol.P_c;
    out.eta_SHG = sol.eta_SHG;
    out.Gamma_diff = sol.gamma_diff;
    out.plane_wave_valid = sol.plane_wave_valid;

    detail::staged("it-channel", [&] {
        out.Gamma_PD = capture_ratio(p);
        out.P_recv_IT = it::received_it_power(sol.P_c, p.carrier_chain(), out.Gamma_PD);
        out.R_b = it::achievable_rate(p.noise, out.P_recv_IT);
    });

    detail::staged("pv-charging", [&] {
        out.P_recv_PT = pv::received_pt_power(sol, p.power_chain(), p.geometry.d);
        const auto op = pv::mppt(p.pv, pv::photo_current(p.pv, out.P_recv_PT));
        out.P_hat_charge = op.P_charge;
        out.V_mpp = op.V_charge;
    });
    return out;
}

}  // namespace rbswipt
