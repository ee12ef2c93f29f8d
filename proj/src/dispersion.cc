#include "lambdip/dispersion.hpp"

#include <cmath>

#include "lambdip/constants.hpp"

namespace lambdip {

DispersionPoint dispersion_from_values(double detuning_delta,
                                       std::complex<double> S,
                                       std::complex<double> dS_domega,
                                       const PumpParams& pump,
                                       const MediumParams& medium) {
    const double two_pi = 2.0 * constants::pi;
    const double four_pi = 4.0 * constants::pi;
    const double omega = medium.omega_1g + pump.detuning_Delta + detuning_delta;

    DispersionPoint p;
    p.detuning_delta = detuning_delta;
    p.S = S;
    p.dS_domega = dS_domega;
    p.group_index = 1.0 + two_pi * S.real() + two_pi * omega * dS_domega.real();
    p.group_delay_s =
        two_pi * medium.length_l * (omega / constants::c_light) * dS_domega.real();
    p.attenuation_exponent =
        four_pi * medium.length_l * omega * S.imag() / constants::c_light;
    p.transmission = std::exp(-p.attenuation_exponent);
    return p;
}

DispersionPoint dispersion_point(double detuning_delta, const PumpParams& pump,
                                 const MediumParams& medium, const QuadratureConfig& quad) {
    const std::complex<double> S = average_S(detuning_delta, pump, medium, quad);
    const std::complex<double> dS = average_dS_domega(detuning_delta, pump, medium, quad);
    return dispersion_from_values(detuning_delta, S, dS, pump, medium);
}

double group_index(double detuning_delta, const PumpParams& pump,
                   const MediumParams& medium, const QuadratureConfig& quad) {
    return dispersion_point(detuning_delta, pump, medium, quad).group_index;
}

double delay_time(double detuning_delta, const PumpParams& pump,
                  const MediumParams& medium, const QuadratureConfig& quad) {
    return dispersion_point(detuning_delta, pump, medium, quad).group_delay_s;
}

double transmission(double detuning_delta, const PumpParams& pump,
                    const MediumParams& medium, const QuadratureConfig& quad) {
    return dispersion_point(detuning_delta, pump, medium, quad).transmission;
}

} // namespace lambdip
