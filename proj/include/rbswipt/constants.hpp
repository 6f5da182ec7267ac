#pragma once

#include <numbers>

namespace rbswipt {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEuler = std::numbers::e;

inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;            // J/K
inline constexpr double kVacuumPermittivity = 8.854e-12;      // F/m
inline constexpr double kSpeedOfLight = 2.998e8;              // m/s

template <typename T>
constexpr T sq(T x) { return x * x; }

}  // namespace rbswipt
