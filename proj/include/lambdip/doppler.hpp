#pragma once

// Doppler averaging of the velocity-class susceptibility: the Lamb-dip
// spectrum S(delta) and its probe-frequency derivative, integrated over the
// Gaussian distribution of Doppler shifts kv with an adaptive Gauss-Kronrod
// scheme.  A fixed-grid composite Gauss-Legendre integrator provides an
// independent cross-check.

#include <complex>
#include <vector>

#include "lambdip/params.hpp"

namespace lambdip {

struct QuadratureConfig {
    // Half-width of the kv integration window in units of the Doppler width D.
    double integration_halfwidth = 6.0;
    // Convergence target: summed error estimate <= rel_tolerance * |S|.
    double rel_tolerance = 1e-8;
    // Panel cap; exceeding it raises ConvergenceError.
    int max_subdivisions = 10000;

    // halfwidth >= 4, rel_tolerance in (0, 1e-2], max_subdivisions >= 100.
    void validate() const;
};

struct QuadratureResult {
    std::complex<double> value;
    double abs_error = 0.0; // summed Gauss-Kronrod error estimate
    int panels = 0;         // panel count at convergence
};

// Velocity average of chi at probe detuning delta:
//   S(delta) = integral chi(Delta + kv, delta - 2 kv) P(kv) d(kv)
// over kv in [-W, W], W = integration_halfwidth * D, with P the normalized
// Gaussian of width D.  The integration starts from panels split at the
// stationary-response loci (kv where a velocity-shifted resonance factor
// vanishes) so the adaptive refinement never misses a narrow feature.
// Throws ConvergenceError if the panel cap is hit.
std::complex<double> average_S(double detuning_delta, const PumpParams& pump,
                               const MediumParams& medium, const QuadratureConfig& quad);
QuadratureResult average_S_detailed(double detuning_delta, const PumpParams& pump,
                                    const MediumParams& medium, const QuadratureConfig& quad);

// d S / d omega at fixed pump, obtained by differentiating under the integral
// sign: the probe frequency enters every velocity class through delta alone,
// so the integrand derivative is the analytic dchi/ddelta at shifted inputs.
std::complex<double> average_dS_domega(double detuning_delta, const PumpParams& pump,
                                       const MediumParams& medium, const QuadratureConfig& quad);
QuadratureResult average_dS_domega_detailed(double detuning_delta, const PumpParams& pump,
                                            const MediumParams& medium,
                                            const QuadratureConfig& quad);

// Independent cross-check: composite Gauss-Legendre (16-point rule on
// `panels` uniform subintervals of the same window).  No adaptivity, no
// error estimate; agreement with average_S validates both schemes.
std::complex<double> average_S_fixed_grid(double detuning_delta, const PumpParams& pump,
                                          const MediumParams& medium,
                                          const QuadratureConfig& quad, int panels = 8192);

// S evaluated over a detuning grid (parallelized over grid points).  A
// convergence failure at any point aborts the scan and is rethrown with the
// offending detuning in the message.
struct ComplexSpectrum {
    std::vector<double> delta_grid;
    std::vector<std::complex<double>> S;
    MediumParams medium;
    PumpParams pump;
    QuadratureConfig quad;
};
ComplexSpectrum spectrum_scan(const std::vector<double>& delta_grid, const PumpParams& pump,
                              const MediumParams& medium, const QuadratureConfig& quad);

} // namespace lambdip
