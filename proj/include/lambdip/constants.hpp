#pragma once

// Physical constants in Gaussian cgs units (CODATA 2018).  The whole library
// works in cgs: lengths in cm, energies in erg, dipole moments in statC*cm.
// Angular frequencies and rates are rad/s throughout.

namespace lambdip::constants {

inline constexpr double c_light     = 2.99792458e10;     // speed of light [cm/s]
inline constexpr double k_boltzmann = 1.380649e-16;      // [erg/K]
inline constexpr double hbar        = 1.054571817e-27;   // [erg*s]
inline constexpr double atomic_mass = 1.66053906660e-24; // unified amu [g]
inline constexpr double pi          = 3.141592653589793;

// Inputs above this magnitude (rad/s) make the susceptibility denominators
// overflow double precision once cubed; reject them up front.
inline constexpr double max_rate_magnitude = 1e18;

} // namespace lambdip::constants
