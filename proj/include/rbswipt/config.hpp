#pragma once

// Flat "key = value [unit]" configuration files.
//
//   # comment
//   f      = 3 cm
//   d_eff  = 4.7 pm/V
//   R_M2   = 91.5 %
//   Gamma_diff = model:gain_aperture     # or a constant, e.g. 0.98
//   Gamma_PD   = concentrator            # or a constant, e.g. 1
//
// Values are converted to SI. A bare number is taken as already SI.
// Power-of-ten unit prefixes are applied to the decimal exponent before the
// string is converted, so "3.015 cm" yields exactly the double nearest
// 0.03015.

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rbswipt/constants.hpp"
#include "rbswipt/error.hpp"
#include "rbswipt/params.hpp"

namespace rbswipt::config {

enum class Dimension {
    dimensionless,
    length,
    area,
    intensity,
    power,
    angle,
    frequency,
    temperature,
    resistance,
    current,
    responsivity,
    attenuation,
    nonlinear,
    time,
};

inline const char* to_string(Dimension d) {
    switch (d) {
        case Dimension::dimensionless: return "dimensionless";
        case Dimension::length: return "length";
        case Dimension::area: return "area";
        case Dimension::intensity: return "intensity";
        case Dimension::power: return "power";
        case Dimension::angle: return "angle";
        case Dimension::frequency: return "frequency";
        case Dimension::temperature: return "temperature";
        case Dimension::resistance: return "resistance";
        case Dimension::current: return "current";
        case Dimension::responsivity: return "responsivity";
        case Dimension::attenuation: return "attenuation";
        case Dimension::nonlinear: return "nonlinear coefficient";
        case Dimension::time: return "time";
    }
    return "?";
}

struct Unit {
    Dimension dimension;
    int exp10;          // applied to the decimal exponent
    double multiplier;  // applied afterwards (degrees)
};

inline const std::map<std::string, Unit, std::less<>>& unit_table() {
    static const std::map<std::string, Unit, std::less<>> table = {
        {"%", {Dimension::dimensionless, -2, 1.0}},
        {"m", {Dimension::length, 0, 1.0}},
        {"cm", {Dimension::length, -2, 1.0}},
        {"mm", {Dimension::length, -3, 1.0}},
        {"um", {Dimension::length, -6, 1.0}},
        {"nm", {Dimension::length, -9, 1.0}},
        {"m^2", {Dimension::area, 0, 1.0}},
        {"cm^2", {Dimension::area, -4, 1.0}},
        {"mm^2", {Dimension::area, -6, 1.0}},
        {"um^2", {Dimension::area, -12, 1.0}},
        {"W/m^2", {Dimension::intensity, 0, 1.0}},
        {"W/cm^2", {Dimension::intensity, 4, 1.0}},
        {"W/mm^2", {Dimension::intensity, 6, 1.0}},
        {"W", {Dimension::power, 0, 1.0}},
        {"mW", {Dimension::power, -3, 1.0}},
        {"kW", {Dimension::power, 3, 1.0}},
        {"rad", {Dimension::angle, 0, 1.0}},
        {"mrad", {Dimension::angle, -3, 1.0}},
        {"deg", {Dimension::angle, 0, kPi / 180.0}},
        {"Hz", {Dimension::frequency, 0, 1.0}},
        {"kHz", {Dimension::frequency, 3, 1.0}},
        {"MHz", {Dimension::frequency, 6, 1.0}},
        {"GHz", {Dimension::frequency, 9, 1.0}},
        {"K", {Dimension::temperature, 0, 1.0}},
        {"Ohm", {Dimension::resistance, 0, 1.0}},
        {"mOhm", {Dimension::resistance, -3, 1.0}},
        {"kOhm", {Dimension::resistance, 3, 1.0}},
        {"MOhm", {Dimension::resistance, 6, 1.0}},
        {"A", {Dimension::current, 0, 1.0}},
        {"mA", {Dimension::current, -3, 1.0}},
        {"uA", {Dimension::current, -6, 1.0}},
        {"nA", {Dimension::current, -9, 1.0}},
        {"A/W", {Dimension::responsivity, 0, 1.0}},
        {"1/m", {Dimension::attenuation, 0, 1.0}},
        {"m^-1", {Dimension::attenuation, 0, 1.0}},
        {"1/km", {Dimension::attenuation, -3, 1.0}},
        {"m/V", {Dimension::nonlinear, 0, 1.0}},
        {"pm/V", {Dimension::nonlinear, -12, 1.0}},
        {"s", {Dimension::time, 0, 1.0}},
        {"ms", {Dimension::time, -3, 1.0}},
    };
    return table;
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string normalize_unit(std::string u) {
    // UTF-8 micro sign / Greek mu and the Ohm sign.
    for (const std::string_view micro : {"\xC2\xB5", "\xCE\xBC"})
        for (auto pos = u.find(micro); pos != std::string::npos; pos = u.find(micro))
            u.replace(pos, micro.size(), "u");
    for (const std::string_view ohm : {"\xCE\xA9", "\xE2\x84\xA6"})
        for (auto pos = u.find(ohm); pos != std::string::npos; pos = u.find(ohm))
            u.replace(pos, ohm.size(), "Ohm");
    if (u.size() >= 3 && u.compare(u.size() - 3, 3, "ohm") == 0) u.replace(u.size() - 3, 3, "Ohm");
    return u;
}

}  // namespace detail

// Parses "<number>[ ]<unit>" into SI for the expected dimension.
inline double parse_quantity(std::string_view text, Dimension expected) {
    const std::string s = detail::trim(text);
    if (s.empty()) throw ConfigError("missing value");

    // Split off the numeric literal: sign, digits, '.', exponent.
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    const std::size_t mantissa_start = 0;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
    const std::size_t mantissa_end = i;
    int literal_exp = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        const std::size_t digits = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j > digits) {
            literal_exp = std::stoi(s.substr(i + 1, j - i - 1));
            i = j;
        }
    }
    const std::string mantissa = s.substr(mantissa_start, mantissa_end - mantissa_start);
    if (mantissa.empty() || mantissa == "+" || mantissa == "-" ||
        mantissa.find_first_of("0123456789") == std::string::npos)
        throw ConfigError("not a number: '" + s + "'");

    const std::string unit_text = detail::normalize_unit(detail::trim(std::string_view(s).substr(i)));
    Unit unit{expected, 0, 1.0};
    if (!unit_text.empty()) {
        const auto& table = unit_table();
        const auto it = table.find(unit_text);
        if (it == table.end()) throw ConfigError("unknown unit '" + unit_text + "'");
        unit = it->second;
        if (unit.dimension != expected)
            throw ConfigError("unit '" + unit_text + "' is a " + to_string(unit.dimension) +
                              ", expected " + to_string(expected));
    }

    const std::string literal = mantissa + "e" + std::to_string(literal_exp + unit.exp10);
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(literal.c_str(), &end);
    if (end != literal.c_str() + literal.size() || errno == ERANGE)
        throw ConfigError("not a number: '" + s + "'");
    return unit.multiplier == 1.0 ? value : value * unit.multiplier;
}

struct KeyInfo {
    Dimension dimension;
    std::function<void(SystemParams&, double)> set;
    std::string help;
};

inline const std::map<std::string, KeyInfo, std::less<>>& key_table() {
    using D = Dimension;
    using P = SystemParams;
    static const std::map<std::string, KeyInfo, std::less<>> table = {
        {"f", {D::length, [](P& p, double v) { p.geometry.f = v; }, "lens focal length"}},
        {"l", {D::length, [](P& p, double v) { p.geometry.l = v; }, "lens-mirror interval"}},
        {"d", {D::length, [](P& p, double v) { p.geometry.d = v; }, "transmission distance"}},
        {"P_in", {D::power, [](P& p, double v) { p.P_in = v; }, "pump source electrical power"}},

        {"I_s", {D::intensity, [](P& p, double v) { p.gain.I_s = v; }, "saturation intensity"}},
        {"a_g", {D::length, [](P& p, double v) { p.gain.a_g = v; p.safety.a_g = v; }, "gain aperture radius"}},
        {"l_g", {D::length, [](P& p, double v) { p.gain.l_g = v; }, "gain medium thickness"}},
        {"eta_c", {D::dimensionless, [](P& p, double v) { p.gain.eta_c = v; }, "combined pumping efficiency"}},
        {"Gamma_g", {D::dimensionless, [](P& p, double v) { p.gain.Gamma_g = v; }, "gain medium transmittance"}},
        {"lambda", {D::length, [](P& p, double v) { p.gain.lambda = v; p.safety.lambda = v; }, "resonant wavelength"}},

        {"d_eff", {D::nonlinear, [](P& p, double v) { p.shg.d_eff = v; }, "effective nonlinear coefficient"}},
        {"l_s", {D::length, [](P& p, double v) { p.shg.l_s = v; }, "SHG crystal thickness"}},
        {"n0", {D::dimensionless, [](P& p, double v) { p.shg.n0 = v; }, "SHG refractive index"}},
        {"Gamma_SHG", {D::dimensionless, [](P& p, double v) { p.shg.Gamma_SHG = v; }, "SHG crystal transmittance"}},

        {"Gamma_L1", {D::dimensionless, [](P& p, double v) { p.loss.Gamma_L1 = v; }, "lens L1 transmittance"}},
        {"Gamma_L2", {D::dimensionless, [](P& p, double v) { p.loss.Gamma_L2 = v; }, "lens L2 transmittance"}},
        {"R_M1", {D::dimensionless, [](P& p, double v) { p.loss.R_M1 = v; }, "mirror M1 reflectivity"}},
        {"R_M2", {D::dimensionless, [](P& p, double v) { p.loss.R_M2 = v; }, "output coupler M2 reflectivity"}},
        {"alpha_air", {D::attenuation, [](P& p, double v) { p.loss.alpha_air = v; }, "air attenuation"}},

        {"Gamma_L3", {D::dimensionless, [](P& p, double v) { p.coatings.Gamma_L3 = v; }, "lens L3 transmittance"}},
        {"Gamma_L4", {D::dimensionless, [](P& p, double v) { p.coatings.Gamma_L4 = v; }, "lens L4 transmittance"}},
        {"Gamma_g_EOM", {D::dimensionless, [](P& p, double v) { p.coatings.Gamma_g_EOM = v; }, "gain medium + EOM transmittance at 2nu"}},
        {"Gamma_M2_2nu", {D::dimensionless, [](P& p, double v) { p.coatings.Gamma_M2_2nu = v; }, "M2 transmittance at 2nu"}},
        {"Gamma_M5_nu", {D::dimensionless, [](P& p, double v) { p.coatings.Gamma_M5_nu = v; }, "M5 transmittance at nu"}},
        {"R_M5_2nu", {D::dimensionless, [](P& p, double v) { p.coatings.R_M5_2nu = v; }, "M5 reflectivity at 2nu"}},
        {"Gamma_PV", {D::dimensionless, [](P& p, double v) { p.coatings.Gamma_PV = v; }, "PV surface transmittance"}},

        {"A_PD", {D::area, [](P& p, double v) { p.concentrator.A_PD = v; }, "photodiode area"}},
        {"Psi_c", {D::angle, [](P& p, double v) { p.concentrator.Psi_c = v; }, "concentrator semi-angle FOV"}},
        {"n_c", {D::dimensionless, [](P& p, double v) { p.concentrator.n_c = v; }, "concentrator refractive index"}},
        {"T_s", {D::dimensionless, [](P& p, double v) { p.concentrator.T_s = v; }, "concentrator transmissivity"}},
        {"psi", {D::angle, [](P& p, double v) { p.concentrator.psi = v; }, "incidence angle"}},

        {"B", {D::frequency, [](P& p, double v) { p.noise.B = v; }, "bandwidth"}},
        {"T", {D::temperature, [](P& p, double v) { p.noise.T = v; p.pv.T = v; }, "temperature (PD and PV)"}},
        {"T_PD", {D::temperature, [](P& p, double v) { p.noise.T = v; }, "PD temperature"}},
        {"T_PV", {D::temperature, [](P& p, double v) { p.pv.T = v; }, "PV temperature"}},
        {"R_IL", {D::resistance, [](P& p, double v) { p.noise.R_IL = v; }, "PD load resistance"}},
        {"I_bk", {D::current, [](P& p, double v) { p.noise.I_bk = v; }, "background photocurrent"}},
        {"gamma", {D::responsivity, [](P& p, double v) { p.noise.gamma = v; }, "PD responsivity"}},

        {"rho", {D::responsivity, [](P& p, double v) { p.pv.rho = v; }, "PV responsivity"}},
        {"I0", {D::current, [](P& p, double v) { p.pv.I0 = v; }, "reverse saturation current"}},
        {"R_sh", {D::resistance, [](P& p, double v) { p.pv.R_sh = v; }, "shunt resistance"}},
        {"R_s", {D::resistance, [](P& p, double v) { p.pv.R_s = v; }, "series resistance"}},
        {"n", {D::dimensionless, [](P& p, double v) { p.pv.n = v; }, "diode ideality factor"}},
        {"n_s", {D::dimensionless, [](P& p, double v) { p.pv.n_s = v; }, "cells in series"}},

        {"eta_P", {D::dimensionless, [](P& p, double v) { p.safety.eta_P = v; }, "pump source efficiency"}},
        {"eta_t", {D::dimensionless, [](P& p, double v) { p.safety.eta_t = v; }, "pump transmission efficiency"}},
        {"eta_a", {D::dimensionless, [](P& p, double v) { p.safety.eta_a = v; }, "gain absorption efficiency"}},
        {"d_e", {D::length, [](P& p, double v) { p.safety.d_e = v; }, "safety measurement distance"}},
        {"exposure_time", {D::time, [](P& p, double v) { p.safety.exposure_time = v; }, "MPE exposure time"}},
    };
    return table;
}

inline resonator::DiffractionLoss parse_diffraction(const std::string& value) {
    if (value.rfind("model:", 0) == 0) {
        const std::string name = value.substr(6);
        if (name == "gain_aperture") return {resonator::DiffractionModel::gain_aperture, 1.0};
        if (name == "receiver_pupil") return {resonator::DiffractionModel::receiver_pupil, 1.0};
        throw ConfigError("unknown diffraction model '" + name + "'");
    }
    return resonator::DiffractionLoss::fixed(parse_quantity(value, Dimension::dimensionless));
}

inline CaptureModel parse_capture(const std::string& value) {
    if (value == "concentrator") return {};
    return CaptureModel::fixed(parse_quantity(value, Dimension::dimensionless));
}

// Applies one "key = value" assignment. base_dir resolves relative paths.
inline void apply(SystemParams& p, const std::string& key, const std::string& value,
                  const std::string& base_dir = {}) {
    if (key == "Gamma_diff") {
        p.loss.Gamma_diff = parse_diffraction(value);
        return;
    }
    if (key == "Gamma_PD") {
        p.Gamma_PD = parse_capture(value);
        return;
    }
    if (key == "mpe_table") {
        std::string path = value;
        if (!base_dir.empty() && !path.empty() && path.front() != '/') path = base_dir + "/" + path;
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open MPE table '" + path + "'");
        p.safety.mpe_table = safety::MpeTable::parse(in);
        return;
    }
    const auto& table = key_table();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
    try {
        it->second.set(p, parse_quantity(value, it->second.dimension));
    } catch (const ConfigError& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

inline void parse_into(SystemParams& p, std::istream& in, const std::string& base_dir = {}) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string text = detail::trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = detail::trim(std::string_view(text).substr(0, eq));
        const std::string value = detail::trim(std::string_view(text).substr(eq + 1));
        try {
            apply(p, key, value, base_dir);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

inline SystemParams parse(std::istream& in, const std::string& base_dir = {}) {
    SystemParams p;
    parse_into(p, in, base_dir);
    return p;
}

inline SystemParams parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

inline SystemParams load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    const auto slash = path.find_last_of('/');
    return parse(in, slash == std::string::npos ? std::string{} : path.substr(0, slash));
}

// Reference-design defaults as a config file; parsing it reproduces
// SystemParams{} exactly.
inline std::string defaults_text() {
    return R"(# Resonator geometry (two cat's-eye retroreflectors)
f = 3 cm
l = 3.015 cm
d = 6 m
P_in = 60 W

# Nd:YVO4 gain medium
I_s = 1.1976e7 W/m^2
lambda = 1064 nm
a_g = 2 mm
l_g = 1 mm
eta_c = 43.9 %
Gamma_g = 98.51 %           # front AR twice, back HR once

# LiNbO3 frequency doubler
d_eff = 4.7 pm/V
n0 = 2.23
l_s = 0.4 mm
Gamma_SHG = 99 %

# Intracavity losses
Gamma_L1 = 99 %
Gamma_L2 = 99 %
R_M1 = 99.5 %
R_M2 = 91.5 %
alpha_air = 1e-4 1/m        # clear air
Gamma_diff = model:gain_aperture

# Receive-chain coatings
Gamma_L3 = 99 %
Gamma_L4 = 99 %
Gamma_g_EOM = 97.52 %       # five interfaces at 2nu
Gamma_M2_2nu = 99 %
Gamma_M5_nu = 99 %
R_M5_2nu = 99.5 %
Gamma_PV = 99.5 %

# Photodiode with concentrator (GaAs)
Gamma_PD = concentrator
A_PD = 0.16 mm^2            # 0.4 mm x 0.4 mm
Psi_c = 30 deg
n_c = 1.5
T_s = 99.5 %
psi = 0 deg
gamma = 0.4 A/W
B = 800 MHz
T = 298 K
R_IL = 10 kOhm
I_bk = 5100 uA

# Photovoltaic panel (InGaAsP)
rho = 0.6 A/W
I0 = 0.32 uA
R_sh = 53.82 Ohm
R_s = 37 mOhm
n = 1.48
n_s = 1

# Eye safety of spontaneous emission
eta_P = 75 %
eta_t = 99 %
eta_a = 91 %
d_e = 10 cm
exposure_time = 10 s
)";
}

}  // namespace rbswipt::config
