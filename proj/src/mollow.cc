#include "lambdip/mollow.hpp"

#include <cmath>
#include <string>

#include "lambdip/constants.hpp"
#include "lambdip/detail/chi_core.hpp"
#include "lambdip/errors.hpp"

namespace lambdip {

namespace {

void check_inputs(const VelocityClassInput& input, double rabi_G,
                  const MediumParams& medium) {
    const double lim = constants::max_rate_magnitude;
    if (!std::isfinite(input.detuning_Delta) || std::abs(input.detuning_Delta) > lim) {
        throw NumericRangeError("detuning_Delta exceeds the supported magnitude of 1e18 rad/s");
    }
    if (!std::isfinite(input.detuning_delta) || std::abs(input.detuning_delta) > lim) {
        throw NumericRangeError("detuning_delta exceeds the supported magnitude of 1e18 rad/s");
    }
    if (!std::isfinite(rabi_G) || std::abs(rabi_G) > lim) {
        throw NumericRangeError("rabi_G exceeds the supported magnitude of 1e18 rad/s");
    }
    if (rabi_G < 0.0) {
        throw InvalidParameterError("rabi_G must be non-negative");
    }
    medium.validate();
}

} // namespace

VelocityClassInput velocity_shift(double detuning_Delta, double detuning_delta, double kv) {
    // Pump and probe counter-propagate: the class moving toward the pump by
    // kv sees the pump shifted up by kv and the probe shifted down by kv, so
    // the probe-minus-pump detuning moves by -2kv.
    return VelocityClassInput{detuning_Delta + kv, detuning_delta - 2.0 * kv};
}

std::complex<double> chi_mollow(const VelocityClassInput& input, double rabi_G,
                                const MediumParams& medium) {
    check_inputs(input, rabi_G, medium);
    return detail::chi_core(input.detuning_Delta, input.detuning_delta,
                            rabi_G, medium.T1, medium.T2, medium.prefactor_C);
}

std::complex<double> dchi_ddelta(const VelocityClassInput& input, double rabi_G,
                                 const MediumParams& medium) {
    check_inputs(input, rabi_G, medium);
    return detail::dchi_core(input.detuning_Delta, input.detuning_delta,
                             rabi_G, medium.T1, medium.T2, medium.prefactor_C);
}

} // namespace lambdip
