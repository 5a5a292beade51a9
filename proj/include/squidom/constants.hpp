#pragma once

#include <numbers>

namespace squidom::constants {

// CODATA 2018; h and e are exact in the revised SI.
inline constexpr double planck = 6.62607015e-34;
inline constexpr double elementary_charge = 1.602176634e-19;
inline constexpr double boltzmann = 1.380649e-23;
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double flux_quantum = planck / (2.0 * elementary_charge);

inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace squidom::constants
