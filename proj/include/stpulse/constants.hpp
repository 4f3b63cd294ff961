#pragma once

#include <numbers>

// Unit system used throughout: energies in meV, time in ns, lengths in cm,
// magnetic fields in tesla, electric fields in mV/cm.
namespace stpulse::constants {

inline constexpr double hbar = 6.582119569e-4;      // meV ns
inline constexpr double mu_bohr = 5.7883818060e-2;  // meV / T
inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;

}  // namespace stpulse::constants
