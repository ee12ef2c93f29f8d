#pragma once

// Scalar evaluation core for the pump-dressed susceptibility and its probe
// derivative.  Both the public single-point API and the scalar batch kernel
// include this header, so their results are identical bit for bit.  The SIMD
// kernels mirror the same operation order lane-wise.

#include <complex>

namespace lambdip::detail {

// chi(Delta, delta) for one velocity class.  Evaluated term by term in the
// printed form; the prefactor C multiplies last so chi is exactly linear in C.
inline std::complex<double> chi_core(double Delta, double delta,
                                     double G, double T1, double T2, double C) {
    using cd = std::complex<double>;
    const double g1 = 1.0 / T1;
    const double g2 = 1.0 / T2;
    const double A = 1.0 + Delta * Delta * T2 * T2;
    const double sat = 4.0 * G * G * T1 * T2;
    const double two_G2 = 2.0 * G * G;
    const double four_G2 = 4.0 * G * G;

    const cd z_probe(Delta + delta, g2);  // Delta + delta + i/T2
    const cd n1(delta, 2.0 * g2);         // delta + 2i/T2
    const cd n2(delta - Delta, g2);       // delta - Delta + i/T2
    const cd d1(delta, g1);               // delta + i/T1
    const cd d2(delta + Delta, g2);       // delta + Delta + i/T2
    const cd pump_pole(Delta, -g2);       // Delta - i/T2

    const cd numerator = two_G2 * n1 * n2 / pump_pole;
    const cd denominator = d1 * d2 * n2 - four_G2 * n1;
    const cd bracket = 1.0 - numerator / denominator; // exactly 1 at G = 0

    return C * (-(A / (A + sat)) / z_probe * bracket);
}

// Analytic d(chi)/d(delta) at fixed Delta.  Derived by the product rule from
// the same factorization used above: chi = C * P * (1 - Q) with
// P = -(A/(A+sat)) / z_probe and Q = 2G^2 n1 n2 / (pump_pole * denominator).
inline std::complex<double> dchi_core(double Delta, double delta,
                                      double G, double T1, double T2, double C) {
    using cd = std::complex<double>;
    const double g1 = 1.0 / T1;
    const double g2 = 1.0 / T2;
    const double A = 1.0 + Delta * Delta * T2 * T2;
    const double sat = 4.0 * G * G * T1 * T2;
    const double two_G2 = 2.0 * G * G;
    const double four_G2 = 4.0 * G * G;

    const cd z_probe(Delta + delta, g2);
    const cd n1(delta, 2.0 * g2);
    const cd n2(delta - Delta, g2);
    const cd d1(delta, g1);
    const cd d2(delta + Delta, g2);
    const cd pump_pole(Delta, -g2);

    const cd P = -(A / (A + sat)) / z_probe;
    const cd dP = -P / z_probe;

    const cd den = d1 * d2 * n2 - four_G2 * n1;
    const cd Q = two_G2 * n1 * n2 / pump_pole / den;
    // d(den)/d(delta): every linear factor has unit slope in delta.
    const cd dden = d2 * n2 + d1 * n2 + d1 * d2 - four_G2;
    const cd dQ = (two_G2 / pump_pole) * ((n1 + n2) * den - n1 * n2 * dden) / (den * den);

    return C * (dP * (1.0 - Q) - P * dQ);
}

} // namespace lambdip::detail
