#pragma once

// Eye safety of the spontaneous emission leaking from the pumped gain medium
// when no resonance is established. The gain medium is an extended source;
// its long-exposure retinal limit is built from the IEC 60825-1 correction
// factors:
//   MPE = 18 C4 C6 C7 t^-0.25 W/m^2   (thermal retinal, 700-1400 nm)
//   C4  = 10^(0.002 (lambda_nm - 700)) below 1050 nm, 5 from 1050 to 1400 nm
//   C6  = clamp(alpha, 1.5 mrad, 100 mrad) / 1.5 mrad
//   C7  = 1
// Below 700 nm C4 = 1. C7 is held at 1 over the whole band; supply an
// MpeTable for certified values above 1150 nm.
//
// Beam-interruption safety of the resonant beam itself has no closed form
// here and is not modeled.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rbswipt/constants.hpp"
#include "rbswipt/error.hpp"

namespace rbswipt::safety {

// Wavelength [nm] -> MPE [W/m^2], linearly interpolated.
class MpeTable {
public:
    struct Row {
        double wavelength_nm;
        double mpe;
    };

    MpeTable() = default;

    explicit MpeTable(std::vector<Row> rows) : rows_(std::move(rows)) {
        if (rows_.size() < 2) throw ConfigError("MPE table needs at least two rows");
        std::sort(rows_.begin(), rows_.end(),
                  [](const Row& a, const Row& b) { return a.wavelength_nm < b.wavelength_nm; });
        for (std::size_t i = 1; i < rows_.size(); ++i)
            if (rows_[i].wavelength_nm == rows_[i - 1].wavelength_nm)
                throw ConfigError("MPE table has duplicate wavelengths");
    }

    // Two columns per line (wavelength nm, MPE W/m^2) separated by
    // whitespace or a comma; '#' starts a comment.
    static MpeTable parse(std::istream& in) {
        std::vector<Row> rows;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream fields(line);
            double wl = 0.0;
            double mpe = 0.0;
            if (!(fields >> wl)) continue;
            std::string extra;
            if (!(fields >> mpe) || (fields >> extra))
                throw ConfigError("MPE table line " + std::to_string(lineno) +
                                  ": expected two numeric columns");
            if (!(mpe > 0.0)) throw ConfigError("MPE table line " + std::to_string(lineno) +
                                                ": MPE must be positive");
            rows.push_back({wl, mpe});
        }
        return MpeTable(std::move(rows));
    }

    double at(double wavelength_nm) const {
        if (rows_.empty()) throw ConfigError("MPE table is empty");
        if (wavelength_nm < rows_.front().wavelength_nm || wavelength_nm > rows_.back().wavelength_nm)
            throw PhysicsError("wavelength outside the MPE table range");
        const auto hi = std::lower_bound(
            rows_.begin(), rows_.end(), wavelength_nm,
            [](const Row& r, double wl) { return r.wavelength_nm < wl; });
        if (hi->wavelength_nm == wavelength_nm) return hi->mpe;
        const auto lo = hi - 1;
        const double t = (wavelength_nm - lo->wavelength_nm) / (hi->wavelength_nm - lo->wavelength_nm);
        return lo->mpe + t * (hi->mpe - lo->mpe);
    }

    const std::vector<Row>& rows() const { return rows_; }

private:
    std::vector<Row> rows_;
};

struct SafetySpec {
    double eta_P = 0.75;           // pump source efficiency
    double eta_t = 0.99;           // pump transmission efficiency
    double eta_a = 0.91;           // gain-medium absorption efficiency
    double d_e = 0.1;              // measurement distance [m]
    double a_g = 2e-3;             // gain-medium aperture radius [m]
    double lambda = 1064e-9;       // [m]
    double exposure_time = 10.0;   // [s]
    std::optional<MpeTable> mpe_table;

    double pump_chain() const { return eta_P * eta_t * eta_a; }

    void validate() const {
        for (double e : {eta_P, eta_t, eta_a})
            if (!(e > 0.0 && e <= 1.0)) throw PhysicsError("safety: efficiencies must lie in (0, 1]");
        if (!(d_e > 0.0) || !(a_g > 0.0) || !(exposure_time > 0.0))
            throw PhysicsError("safety: d_e, a_g and exposure time must be positive");
    }
};

inline constexpr double kAlphaMin = 1.5e-3;  // rad
inline constexpr double kAlphaMax = 100e-3;  // rad

inline double absorbed_pump_power(const SafetySpec& s, double P_in) { return s.pump_chain() * P_in; }

// The HR coating behind the gain medium doubles the forward emission.
inline double spontaneous_irradiance(const SafetySpec& s, double P_in) {
    return 2.0 * absorbed_pump_power(s, P_in) / (4.0 * kPi * s.d_e * s.d_e);
}

// Full angle subtended by the gain-medium aperture at the measurement distance.
inline double angular_subtense(const SafetySpec& s) { return 2.0 * s.a_g / s.d_e; }

inline double correction_c4(double wavelength_nm) {
    if (wavelength_nm < 700.0) return 1.0;
    if (wavelength_nm < 1050.0) return std::pow(10.0, 0.002 * (wavelength_nm - 700.0));
    return 5.0;
}

inline double correction_c6(double alpha) { return std::clamp(alpha, kAlphaMin, kAlphaMax) / kAlphaMin; }

inline double correction_c7(double /*wavelength_nm*/) { return 1.0; }

inline double mpe_extended_source(double lambda, double alpha, double exposure_time = 10.0) {
    const double nm = lambda * 1e9;
    constexpr double slack = 1e-6;  // nm, absorbs m -> nm round-off at the band edges
    if (!(nm >= 400.0 - slack && nm <= 1400.0 + slack))
        throw PhysicsError("MPE model supports 400-1400 nm only");
    if (!(alpha > 0.0)) throw PhysicsError("angular subtense must be positive");
    return 18.0 * correction_c4(nm) * correction_c6(alpha) * correction_c7(nm) *
           std::pow(exposure_time, -0.25);
}

inline double mpe(const SafetySpec& s) {
    if (s.mpe_table) return s.mpe_table->at(s.lambda * 1e9);
    return mpe_extended_source(s.lambda, angular_subtense(s), s.exposure_time);
}

struct SafePower {
    double P_a_safe = 0.0;
    double P_in_safe = 0.0;
};

inline SafePower max_safe_source_power(const SafetySpec& s) {
    s.validate();
    const double p_a = mpe(s) * 4.0 * kPi * s.d_e * s.d_e / 2.0;
    return {p_a, p_a / s.pump_chain()};
}

struct SafetyReport {
    double P_in = 0.0;
    double P_a = 0.0;
    double irradiance = 0.0;  // W/m^2
    double alpha = 0.0;       // rad
    double mpe = 0.0;         // W/m^2
    SafePower limit;

    bool within_limit() const { return irradiance <= mpe; }
};

inline SafetyReport report(const SafetySpec& s, double P_in) {
    s.validate();
    return {P_in, absorbed_pump_power(s, P_in), spontaneous_irradiance(s, P_in),
            angular_subtense(s), mpe(s), max_safe_source_power(s)};
}

}  // namespace rbswipt::safety
