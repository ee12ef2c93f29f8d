#include "lambdip/pulse.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "lambdip/constants.hpp"
#include "lambdip/dispersion.hpp"
#include "lambdip/errors.hpp"
#include "lambdip/parallel.hpp"

namespace lambdip {

namespace {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

// Intensity centroid over the full grid.  The grid is wide enough that the
// truncated tails are negligible (checked by the edge-leakage guard below).
double centroid(const std::vector<double>& t, const std::vector<double>& intensity) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        num += t[i] * intensity[i];
        den += intensity[i];
    }
    return num / den;
}

struct Peak {
    double position;
    double value;
};

// Three-point parabolic refinement around the sample maximum.
Peak refined_peak(const std::vector<double>& t, const std::vector<double>& intensity) {
    std::size_t j = 0;
    for (std::size_t i = 1; i < intensity.size(); ++i) {
        if (intensity[i] > intensity[j]) {
            j = i;
        }
    }
    if (j == 0 || j + 1 == intensity.size()) {
        return Peak{t[j], intensity[j]};
    }
    const double ym = intensity[j - 1];
    const double y0 = intensity[j];
    const double yp = intensity[j + 1];
    const double curvature = ym - 2.0 * y0 + yp;
    if (curvature >= 0.0) {
        return Peak{t[j], intensity[j]};
    }
    const double shift = 0.5 * (ym - yp) / curvature;
    const double dt = t[1] - t[0];
    return Peak{t[j] + shift * dt, y0 - 0.25 * (ym - yp) * shift};
}

// FFT synthesis A_j = (dnu / 2 pi) sum_k X_k exp(-i nu_k t_j) for
// nu_k = -W + k dnu and t_j centered on zero.  Centering contributes the
// exact factor (-1)^k absorbed into X_k; the leftover pure phase on A_j is
// dropped because only |A|^2 is consumed.
std::vector<double> synthesize_intensity(const std::vector<std::complex<double>>& X,
                                         double dnu) {
    const std::size_t n = X.size();
    fftw_complex* buf = fftw_alloc_complex(n);
    if (buf == nullptr) {
        throw std::bad_alloc();
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        buf[k][0] = sign * X[k].real();
        buf[k][1] = sign * X[k].imag();
    }
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf,
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    const double scale = dnu / (2.0 * constants::pi);
    std::vector<double> intensity(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double re = scale * buf[j][0];
        const double im = scale * buf[j][1];
        intensity[j] = re * re + im * im;
    }
    fftw_free(buf);
    return intensity;
}

} // namespace

void GaussianPulseSpec::validate() const {
    if (!(spectral_width_Gamma > 0.0) || !std::isfinite(spectral_width_Gamma)) {
        throw InvalidParameterError("pulse spectral_width_Gamma must be positive and finite");
    }
    if (spectral_width_Gamma > constants::max_rate_magnitude) {
        throw NumericRangeError("pulse spectral_width_Gamma exceeds the supported magnitude of 1e18 rad/s");
    }
    if (!(duration_tau > 0.0) || !std::isfinite(duration_tau)) {
        throw InvalidParameterError("pulse duration_tau must be positive and finite");
    }
    if (!std::isfinite(carrier_delta)
        || std::abs(carrier_delta) > constants::max_rate_magnitude) {
        throw NumericRangeError("pulse carrier_delta exceeds the supported magnitude of 1e18 rad/s");
    }
}

PropagationResult propagate_pulse(const GaussianPulseSpec& pulse, const PumpParams& pump,
                                  const MediumParams& medium, const QuadratureConfig& quad,
                                  const SamplingConfig& grid) {
    pulse.validate();
    pump.validate();
    medium.validate();
    quad.validate();

    if (!is_power_of_two(grid.samples) || grid.samples < 4096) {
        throw InvalidParameterError("sampling samples must be a power of two >= 4096");
    }
    const double Gamma = pulse.spectral_width_Gamma;
    const double W = grid.window_halfwidth > 0.0
                         ? grid.window_halfwidth
                         : std::max(8.0 * Gamma, 40.0 / medium.T2);
    if (!(W >= 8.0 * Gamma)) {
        throw InvalidParameterError(
            "sampling window_halfwidth must be at least 8 spectral widths of the pulse");
    }

    const std::size_t n = grid.samples;
    const double dnu = 2.0 * W / static_cast<double>(n);
    const double dt = constants::pi / W; // = 2 pi / (n dnu)
    const double duration = static_cast<double>(n) * dt;
    if (dt > pulse.duration_tau / 200.0) {
        throw InvalidParameterError(
            "time step exceeds tau/200; widen window_halfwidth or accept coarser sampling");
    }
    if (duration < 12.0 * pulse.duration_tau) {
        throw InvalidParameterError(
            "time window shorter than 12 tau; increase samples or narrow window_halfwidth");
    }

    // Analytic pulse spectrum on the grid (envelope frame, centered at the
    // carrier).  Far wings underflow to exact zero; those bins never touch
    // the medium transfer function, so they cost nothing.
    const double spectral_norm = 1.0 / std::sqrt(constants::pi * Gamma * Gamma);
    std::vector<double> nu(n);
    std::vector<double> envelope(n);
    std::size_t evaluated = 0;
    for (std::size_t k = 0; k < n; ++k) {
        nu[k] = -W + dnu * static_cast<double>(k);
        const double arg = nu[k] / Gamma;
        envelope[k] = spectral_norm * std::exp(-arg * arg);
        if (envelope[k] != 0.0) {
            ++evaluated;
        }
    }

    // Medium transfer per occupied bin: the absolute probe frequency at bin k
    // is omega_1g + Delta + carrier_delta + nu_k, and S is evaluated at probe
    // detuning carrier_delta + nu_k.
    std::vector<std::complex<double>> vacuum(n);
    std::vector<std::complex<double>> through(n);
    const double omega_carrier =
        medium.omega_1g + pump.detuning_Delta + pulse.carrier_delta;
    parallel_for_blocks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            if (envelope[k] == 0.0) {
                vacuum[k] = 0.0;
                through[k] = 0.0;
                continue;
            }
            const std::complex<double> S =
                average_S(pulse.carrier_delta + nu[k], pump, medium, quad);
            const double omega = omega_carrier + nu[k];
            const std::complex<double> phase =
                std::complex<double>(0.0, 1.0) * (omega / constants::c_light)
                * (2.0 * constants::pi * medium.length_l) * S;
            vacuum[k] = envelope[k];
            through[k] = envelope[k] * std::exp(phase);
        }
    });

    PropagationResult result;
    result.time_s.resize(n);
    const double t0 = -0.5 * duration;
    for (std::size_t j = 0; j < n; ++j) {
        result.time_s[j] = t0 + dt * static_cast<double>(j);
    }
    result.intensity_vacuum = synthesize_intensity(vacuum, dnu);
    result.intensity_medium = synthesize_intensity(through, dnu);
    result.evaluated_bins = evaluated;

    // Parseval bookkeeping on the medium branch: spectral and temporal energy
    // must agree, otherwise the synthesis itself is broken.
    double spectral_energy = 0.0;
    for (const auto& x : through) {
        spectral_energy += std::norm(x);
    }
    spectral_energy *= dnu / (2.0 * constants::pi);
    double temporal_energy = 0.0;
    for (const double v : result.intensity_medium) {
        temporal_energy += v;
    }
    temporal_energy *= dt;
    result.energy_spectral = spectral_energy;
    result.energy_temporal = temporal_energy;
    if (spectral_energy > 0.0
        && std::abs(spectral_energy - temporal_energy) > 1e-6 * spectral_energy) {
        throw std::logic_error("pulse synthesis violated Parseval consistency");
    }

    // Guard against wrap-around: the vacuum intensity at the window edges
    // must be negligible against its peak.
    const double edge = std::max(result.intensity_vacuum.front(),
                                 result.intensity_vacuum.back());
    const double vac_peak =
        *std::max_element(result.intensity_vacuum.begin(), result.intensity_vacuum.end());
    if (!(edge <= 1e-10 * vac_peak)) {
        throw InvalidParameterError(
            "pulse does not fit the time window; increase samples or window_halfwidth");
    }

    result.measured_delay_s = centroid(result.time_s, result.intensity_medium)
                              - centroid(result.time_s, result.intensity_vacuum);
    const Peak peak_vac = refined_peak(result.time_s, result.intensity_vacuum);
    const Peak peak_med = refined_peak(result.time_s, result.intensity_medium);
    result.measured_delay_peak_s = peak_med.position - peak_vac.position;
    result.measured_transmission = peak_med.value / peak_vac.value;
    result.transmission_method = "peak-intensity ratio (parabolic refinement)";

    const DispersionPoint carrier =
        dispersion_point(pulse.carrier_delta, pump, medium, quad);
    result.predicted_delay_s = carrier.group_delay_s;
    result.predicted_attenuation_exponent = carrier.attenuation_exponent;
    return result;
}

ModulationReport propagate_modulated(const ProbeParams& probe, const PumpParams& pump,
                                     const MediumParams& medium,
                                     const QuadratureConfig& quad) {
    probe.validate();
    pump.validate();
    medium.validate();
    quad.validate();

    const double delta = probe.detuning_delta;
    const double nu = probe.modulation_freq_nu;

    ModulationReport report;
    const DispersionPoint carrier = dispersion_point(delta, pump, medium, quad);
    report.group_delay_s = carrier.group_delay_s;
    report.S_carrier = carrier.S;
    report.attenuation_exponent_carrier = carrier.attenuation_exponent;

    report.S_upper = average_S(delta + nu, pump, medium, quad);
    report.S_lower = average_S(delta - nu, pump, medium, quad);

    const double omega_carrier = medium.omega_1g + pump.detuning_Delta + delta;
    const double scale =
        4.0 * constants::pi * medium.length_l / constants::c_light;
    report.attenuation_exponent_upper = scale * (omega_carrier + nu) * report.S_upper.imag();
    report.attenuation_exponent_lower = scale * (omega_carrier - nu) * report.S_lower.imag();

    // First-order validity: both sidebands must be reproduced by the linear
    // extrapolation S(delta) +- nu dS/domega to 0.1% of |S(delta)|.
    const std::complex<double> linear_up = carrier.S + nu * carrier.dS_domega;
    const std::complex<double> linear_dn = carrier.S - nu * carrier.dS_domega;
    const double tol = 1e-3 * std::abs(carrier.S);
    report.linearization_valid = std::abs(report.S_upper - linear_up) <= tol
                                 && std::abs(report.S_lower - linear_dn) <= tol;
    return report;
}

} // namespace lambdip
