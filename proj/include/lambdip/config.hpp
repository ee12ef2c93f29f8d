#pragma once

// Run configuration: named presets, a strict "key = value [unit]" config-file
// parser, and --set style dotted-path overrides.  Frequencies given in
// Hz/kHz/MHz/GHz are converted to angular units (factor 2 pi); rad/s is taken
// verbatim.  Unknown keys, unknown units and dimension mismatches are hard
// errors naming the key and line.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lambdip/doppler.hpp"
#include "lambdip/params.hpp"

namespace lambdip {

// How to read the bare "pulse spectral width = 120 kHz" convention of the
// default pulse: ordinary (cycles, multiply by 2 pi; the default) or angular
// (the number is already rad/s).  Only the preset default is affected;
// explicit config values carry their own units.
enum class GammaUnits { ordinary, angular };

struct RunConfig {
    std::string preset = "rb87-paper";
    GammaUnits gamma_units = GammaUnits::ordinary;

    MediumParams medium; // resolved, prefactor included
    PumpParams pump;
    ProbeParams probe;
    QuadratureConfig quad;

    // Pulse command settings.
    double pulse_Gamma = 0.0;         // spectral width [rad/s]
    double pulse_tau = 0.0;           // duration [s]
    double pulse_carrier_delta = 0.0; // carrier probe detuning [rad/s]
    std::size_t pulse_samples = 16384;
    double pulse_window_halfwidth = 0.0; // 0 = automatic

    // Sweep command settings (spectrum / groupindex / gscan grids).
    double sweep_delta_min = 0.0;
    double sweep_delta_max = 0.0;
    int sweep_points = 401;
    double sweep_G_min = 0.0;
    double sweep_G_max = 0.0;
    bool sweep_range_explicit = false;  // user set delta_min/delta_max
    bool sweep_points_explicit = false; // user set points

    // Optimize command settings.
    double opt_G_min = 0.0;
    double opt_G_max = 0.0;
    double opt_min_transmission = 0.0;
};

// Defaults for the given preset (line-center probe, pump at 0.4 of the
// homogeneous rate 1/T2, pulse at the matched Gamma*tau = 2 pair).
RunConfig default_config(GammaUnits gamma_units = GammaUnits::ordinary);

// Parses a config file (text) on top of the defaults.  Throws
// ConfigParseError with key and line number on any violation.
RunConfig parse_config(const std::string& text,
                       GammaUnits gamma_units = GammaUnits::ordinary);

// Applies one "key=value" or "key=value unit" override (CLI --set).  Throws
// ConfigParseError on bad keys/values; later overrides win.
void apply_override(RunConfig& config, const std::string& assignment);

// Ordered snapshot of every resolved parameter (plus derived quantities and
// the active kernel) for output metadata.  Values are %.17g strings.
std::vector<std::pair<std::string, std::string>> snapshot(const RunConfig& config,
                                                          const std::string& command);

} // namespace lambdip
