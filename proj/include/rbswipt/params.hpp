#pragma once

#include <string>

#include "rbswipt/error.hpp"
#include "rbswipt/it_channel.hpp"
#include "rbswipt/optics.hpp"
#include "rbswipt/pv.hpp"
#include "rbswipt/resonator.hpp"
#include "rbswipt/safety.hpp"

namespace rbswipt {

// Coatings that only appear in the receive chains (the intracavity ones live
// in LossBudget, ShgSpec and GainMediumSpec).
struct Coatings {
    double Gamma_L3 = 0.99;
    double Gamma_L4 = 0.99;
    double Gamma_g_EOM = 0.9752;
    double Gamma_M2_2nu = 0.99;
    double Gamma_M5_nu = 0.99;
    double R_M5_2nu = 0.995;
    double Gamma_PV = 0.995;
};

// Photodiode capture ratio: from the concentrator model against the beam
// cross-section at the detector, or a fixed value.
struct CaptureModel {
    bool use_concentrator = true;
    double value = 1.0;

    static CaptureModel fixed(double v) { return {false, v}; }
};

// Every parameter of one link configuration. Defaults are the reference
// design: 3 cm lenses spaced 3.015 cm from their mirrors, Nd:YVO4 gain
// medium, LiNbO3 doubler, InGaAsP PV and GaAs PD, 6 m link, 60 W pump.
struct SystemParams {
    optics::CavityGeometry geometry{};
    resonator::GainMediumSpec gain{};
    resonator::ShgSpec shg{};
    resonator::LossBudget loss{};
    Coatings coatings{};
    it::ConcentratorSpec concentrator{};
    CaptureModel Gamma_PD{};
    it::NoiseSpec noise{};
    pv::PVSpec pv{};
    safety::SafetySpec safety{};
    double P_in = 60.0;

    // Throws ConfigError naming the offending group.
    void validate() const {
        const auto check = [](const char* group, auto&& fn) {
            try {
                fn();
            } catch (const PhysicsError& e) {
                throw ConfigError(std::string("invalid ") + group + ": " + e.what());
            }
        };
        check("geometry", [&] { geometry.validate(); });
        check("gain medium", [&] { gain.validate(); });
        check("SHG crystal", [&] { shg.validate(); });
        check("loss budget", [&] { loss.validate(); });
        check("concentrator", [&] { concentrator.validate(); });
        check("noise", [&] { noise.validate(); });
        check("PV", [&] { pv.validate(); });
        check("safety", [&] { safety.validate(); });
        for (double v : {coatings.Gamma_L3, coatings.Gamma_L4, coatings.Gamma_g_EOM,
                         coatings.Gamma_M2_2nu, coatings.Gamma_M5_nu, coatings.R_M5_2nu,
                         coatings.Gamma_PV})
            if (!(v > 0.0 && v <= 1.0)) throw ConfigError("invalid coatings: factors must lie in (0, 1]");
        if (!Gamma_PD.use_concentrator && !(Gamma_PD.value > 0.0 && Gamma_PD.value <= 1.0))
            throw ConfigError("invalid Gamma_PD: must lie in (0, 1]");
        if (!(P_in >= 0.0)) throw ConfigError("invalid P_in: must be non-negative");
    }

    it::CarrierChain carrier_chain() const {
        return {loss.Gamma_L1, coatings.Gamma_g_EOM,
                resonator::air_transmittance(loss.alpha_air, geometry.d), loss.Gamma_L2,
                coatings.Gamma_M2_2nu, coatings.R_M5_2nu, coatings.Gamma_L4};
    }

    pv::PowerChain power_chain() const {
        return {loss.Gamma_L2, loss.R_M2, coatings.Gamma_M5_nu, coatings.Gamma_L3,
                coatings.Gamma_PV, loss.alpha_air};
    }
};

}  // namespace rbswipt
