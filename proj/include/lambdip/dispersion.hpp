#pragma once

// Group index, group delay and attenuation of the probe derived from the
// Doppler-averaged spectrum S(omega) and its frequency derivative.  For a
// cell of length l the probe field acquires the factor
// exp[i (omega/c) 2 pi l S(omega)], giving
//   n_g            = 1 + 2 pi Re S + 2 pi omega d(Re S)/d(omega)
//   group delay    = 2 pi l (omega/c) d(Re S)/d(omega)
//   attenuation    = Im[4 pi l omega S / c]   (intensity exponent)
//   transmission   = exp(-attenuation)
// with omega = omega_1g + Delta + delta the absolute probe frequency.

#include <complex>

#include "lambdip/doppler.hpp"
#include "lambdip/params.hpp"

namespace lambdip {

struct DispersionPoint {
    double detuning_delta = 0.0;
    std::complex<double> S{0.0, 0.0};
    std::complex<double> dS_domega{0.0, 0.0};
    double group_index = 1.0;
    double group_delay_s = 0.0;
    double attenuation_exponent = 0.0;
    double transmission = 1.0;
};

// Assembles a DispersionPoint from precomputed S and dS/domega (pure algebra,
// no quadrature).  Exposed separately so the defining identity
// group_delay * c / l + 1 + 2 pi Re S == group_index can be tested exactly.
DispersionPoint dispersion_from_values(double detuning_delta,
                                       std::complex<double> S,
                                       std::complex<double> dS_domega,
                                       const PumpParams& pump,
                                       const MediumParams& medium);

// Full evaluation at one probe detuning: two adaptive velocity averages (S
// and dS/domega) followed by the algebra above.
DispersionPoint dispersion_point(double detuning_delta, const PumpParams& pump,
                                 const MediumParams& medium, const QuadratureConfig& quad);

// Convenience scalar accessors (each runs the quadratures it needs).
double group_index(double detuning_delta, const PumpParams& pump,
                   const MediumParams& medium, const QuadratureConfig& quad);
double delay_time(double detuning_delta, const PumpParams& pump,
                  const MediumParams& medium, const QuadratureConfig& quad);
double transmission(double detuning_delta, const PumpParams& pump,
                    const MediumParams& medium, const QuadratureConfig& quad);

} // namespace lambdip
