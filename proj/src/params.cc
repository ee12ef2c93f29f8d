#include "lambdip/params.hpp"

#include <cmath>
#include <string>

#include "lambdip/constants.hpp"
#include "lambdip/errors.hpp"

namespace lambdip {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidParameterError(std::string(name) + " must be positive and finite");
    }
}

void require_rate_in_range(double value, const char* name) {
    if (!std::isfinite(value) || std::abs(value) > constants::max_rate_magnitude) {
        throw NumericRangeError(std::string(name) + " exceeds the supported magnitude of 1e18 rad/s");
    }
}

} // namespace

void MediumParams::validate() const {
    if (!(density_N >= 0.0) || !std::isfinite(density_N)) {
        throw InvalidParameterError("density_N must be nonnegative and finite");
    }
    require_positive(T1, "T1");
    require_positive(T2, "T2");
    require_positive(omega_1g, "omega_1g");
    require_positive(mass_M, "mass_M");
    require_positive(temperature, "temperature");
    require_positive(length_l, "length_l");
    require_rate_in_range(omega_1g, "omega_1g");
    if (!(prefactor_C >= 0.0) || !std::isfinite(prefactor_C)) {
        throw InvalidParameterError("prefactor_C must be nonnegative and finite");
    }
}

void PumpParams::validate() const {
    if (!(rabi_G >= 0.0)) {
        throw InvalidParameterError("pump rabi_G must be nonnegative");
    }
    require_rate_in_range(rabi_G, "pump rabi_G");
    require_rate_in_range(detuning_Delta, "pump detuning_Delta");
}

void ProbeParams::validate() const {
    require_rate_in_range(detuning_delta, "probe detuning_delta");
    if (!(modulation_index_m >= 0.0) || !std::isfinite(modulation_index_m)) {
        throw InvalidParameterError("probe modulation_index_m must be nonnegative and finite");
    }
    if (!(modulation_freq_nu >= 0.0)) {
        throw InvalidParameterError("probe modulation_freq_nu must be nonnegative");
    }
    require_rate_in_range(modulation_freq_nu, "probe modulation_freq_nu");
}

MediumParams calibrate_prefactor(MediumParams medium) {
    // Validate the raw fields first so the cube below cannot overflow.
    MediumParams check = medium;
    check.prefactor_C = 0.0;
    check.validate();

    const double c = constants::c_light;
    const double omega = medium.omega_1g;
    // |d|^2 = 3 hbar c^3 / (4 omega^3 T1)  [erg cm^3]
    const double d_squared =
        3.0 * constants::hbar * c * c * c / (4.0 * omega * omega * omega * medium.T1);
    // C multiplies the rest of the susceptibility linearly, so keep it as a
    // single factor: doubling the density doubles C (and chi) exactly.
    medium.prefactor_C = medium.density_N * (d_squared / constants::hbar);
    return medium;
}

double doppler_width(const MediumParams& medium) {
    medium.validate();
    const double c = constants::c_light;
    return std::sqrt(constants::k_boltzmann * medium.temperature
                     * medium.omega_1g * medium.omega_1g
                     / (medium.mass_M * c * c));
}

MediumParams preset_medium(const std::string& name) {
    if (name == "rb87-paper") {
        const double gamma = 3.0 * constants::pi * 1e6; // decay rate [rad/s]
        MediumParams m;
        m.density_N = 2e11;
        m.T1 = 1.0 / (2.0 * gamma);
        m.T2 = 2.0 * m.T1;
        m.omega_1g = 2.0 * constants::pi * constants::c_light / 780.24e-7; // 780.24 nm
        m.mass_M = 87.0 * constants::atomic_mass;
        m.temperature = 300.0;
        m.length_l = 1.0;
        return calibrate_prefactor(m);
    }
    throw InvalidParameterError("unknown preset '" + name + "' (available: rb87-paper)");
}

} // namespace lambdip
