#pragma once

// Parameter structs describing the medium, the saturating pump, and the weak
// probe, plus the derived quantities (coupling prefactor, Doppler width) that
// everything downstream consumes.

#include <string>

namespace lambdip {

// A vapor of two-level atoms.  All rates are angular (rad/s), times in
// seconds, density in cm^-3, length in cm, mass in grams, temperature in K.
struct MediumParams {
    double density_N = 0.0;    // number density [cm^-3]
    double T1 = 0.0;           // population relaxation time [s]
    double T2 = 0.0;           // coherence relaxation time [s]
    double omega_1g = 0.0;     // transition angular frequency [rad/s]
    double mass_M = 0.0;       // atomic mass [g]
    double temperature = 0.0;  // vapor temperature [K]
    double length_l = 0.0;     // cell length [cm]
    double prefactor_C = 0.0;  // N |d|^2 / hbar [rad/s], set by calibrate_prefactor

    // Throws InvalidParameterError unless T1, T2, omega_1g, mass_M,
    // temperature and length_l are positive and density_N is nonnegative.
    void validate() const;
};

// Strong counter-propagating pump: Rabi rate G and detuning Delta from the
// atomic resonance, both rad/s.
struct PumpParams {
    double rabi_G = 0.0;
    double detuning_Delta = 0.0;

    void validate() const; // G >= 0, both finite and under the range guard
};

// Weak co-analyzed probe: detuning delta relative to the pump frequency, and
// optional sinusoidal phase modulation (index m, frequency nu) used by the
// modulated-probe report.
struct ProbeParams {
    double detuning_delta = 0.0;
    double modulation_index_m = 0.0;
    double modulation_freq_nu = 0.0;

    void validate() const;
};

// Fills in prefactor_C = N |d|^2 / hbar using the radiative calibration
// |d|^2 = 3 hbar c^3 / (4 omega_1g^3 T1), i.e. the dipole moment consistent
// with a purely radiative upper-state lifetime T1.  Returns a copy.
MediumParams calibrate_prefactor(MediumParams medium);

// 1/e half-width of the Gaussian distribution of Doppler shifts k*v:
// D = sqrt(k_B T omega^2 / (M c^2)), in rad/s.
double doppler_width(const MediumParams& medium);

// Named parameter presets.  "rb87-paper" is the 87Rb D2 vapor used by all
// reference outputs: gamma = 3pi x 10^6 rad/s, T1 = 1/(2 gamma), T2 = 2 T1,
// N = 2e11 cm^-3, 300 K, 1 cm cell, lambda = 780.24 nm.
// Throws InvalidParameterError for unknown names.
MediumParams preset_medium(const std::string& name);

} // namespace lambdip
