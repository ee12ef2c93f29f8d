#pragma once

// Closed-form weak-probe susceptibility of a two-level atom dressed by a
// strong pump, and its analytic derivative with respect to probe detuning.
// Detunings here are per velocity class; the Doppler layer supplies the
// velocity-shifted values.

#include <complex>

#include "lambdip/params.hpp"

namespace lambdip {

// Pump/probe detunings as seen by one velocity class (rad/s).
struct VelocityClassInput {
    double detuning_Delta = 0.0; // pump detuning in the atom frame
    double detuning_delta = 0.0; // probe-minus-pump detuning in the atom frame
};

// Detunings seen by the class with Doppler shift kv (rad/s), for a probe
// counter-propagating with respect to the pump.  The pump shifts by +kv, and
// the probe-pump difference frequency by -2kv.
VelocityClassInput velocity_shift(double detuning_Delta, double detuning_delta, double kv);

// Probe susceptibility chi(Delta, delta) of one velocity class:
//
//                     1 + Delta^2 T2^2                  1
//   chi = -C -------------------------------- . ----------------- . B
//             1 + Delta^2 T2^2 + 4 G^2 T1 T2    Delta+delta+i/T2
//
//             2 G^2 (delta + 2i/T2)(delta - Delta + i/T2) / (Delta - i/T2)
//   B = 1 - -----------------------------------------------------------------
//           (delta+i/T1)(delta+Delta+i/T2)(delta-Delta+i/T2) - 4G^2(delta+2i/T2)
//
// with C = N |d|^2 / hbar (medium.prefactor_C).  The expression is evaluated
// term by term, with no algebraic rearrangement, so limiting cases match the
// formula exactly: at G = 0 the bracket B is exactly 1.
// Throws NumericRangeError when any detuning or G exceeds 1e18 rad/s.
std::complex<double> chi_mollow(const VelocityClassInput& input,
                                double rabi_G,
                                const MediumParams& medium);

// Analytic d(chi)/d(delta) at fixed Delta, same conventions and guards as
// chi_mollow.  At G = 0 this reduces to C / (Delta + delta + i/T2)^2.
std::complex<double> dchi_ddelta(const VelocityClassInput& input,
                                 double rabi_G,
                                 const MediumParams& medium);

} // namespace lambdip
