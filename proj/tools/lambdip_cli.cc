// lambdip command-line front end.
//
//   lambdip <spectrum|groupindex|gscan|pulse|optimize>
//           [--config FILE] [--out PATH] [--format csv|json]
//           [--set key=value[unit]]... [--gamma-units ordinary|angular]
//
// Exit codes: 0 success, 2 usage, 3 bad config/parameter, 4 quadrature
// non-convergence, 5 infeasible optimization, 6 numeric range, 7 I/O failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lambdip/config.hpp"
#include "lambdip/dispersion.hpp"
#include "lambdip/errors.hpp"
#include "lambdip/io.hpp"
#include "lambdip/pulse.hpp"
#include "lambdip/sweep.hpp"

namespace {

using namespace lambdip;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed reading config file '" + path + "'");
    }
    return buffer.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        grid[static_cast<std::size_t>(i)] = lo * (1.0 - t) + hi * t;
    }
    return grid;
}

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

// Shared emitter for the dispersion sweeps: one leading column for the swept
// variable, then the fixed dispersion columns.  Failed points carry NaN (CSV)
// or null (JSON) and an error.<index> metadata entry.
Table sweep_table(const std::string& command, const RunConfig& cfg,
                  const std::string& lead_column, const std::vector<SweepRow>& rows) {
    Table t;
    t.title = command;
    t.meta = snapshot(cfg, command);
    t.columns = {lead_column, "re_S", "im_S", "n_g", "theta_s",
                 "attenuation_exponent", "transmission"};
    t.rows.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& row = rows[i];
        if (row.ok()) {
            t.rows.push_back({row.value, row.point.S.real(), row.point.S.imag(),
                              row.point.group_index, row.point.group_delay_s,
                              row.point.attenuation_exponent, row.point.transmission});
        } else {
            t.rows.push_back({row.value, nan_value, nan_value, nan_value, nan_value,
                              nan_value, nan_value});
            t.meta.emplace_back("error." + std::to_string(i), row.error);
        }
    }
    return t;
}

int count_failures(const std::vector<SweepRow>& rows) {
    int n = 0;
    for (const auto& row : rows) {
        if (!row.ok()) {
            ++n;
        }
    }
    return n;
}

void run_detuning_scan(const std::string& command, const RunConfig& cfg,
                       const std::string& out, OutputFormat format) {
    double lo = cfg.sweep_delta_min;
    double hi = cfg.sweep_delta_max;
    int points = cfg.sweep_points;
    if (command == "groupindex" && !cfg.sweep_range_explicit) {
        // Dispersion is confined to a few homogeneous widths around line
        // center; default to a tighter grid there.
        lo = -5.0 / cfg.medium.T2;
        hi = 5.0 / cfg.medium.T2;
        if (!cfg.sweep_points_explicit) {
            points = 201;
        }
    }

    SweepSpec spec;
    spec.variable = SweepVariable::probe_detuning;
    spec.grid = linspace(lo, hi, points);
    spec.medium = cfg.medium;
    spec.pump = cfg.pump;
    spec.probe = cfg.probe;
    spec.quad = cfg.quad;
    const std::vector<SweepRow> rows = run_sweep(spec);

    emit_table(sweep_table(command, cfg, "delta_rad_per_s", rows), out, format);

    // Human summary on stderr; stdout stays machine-readable.
    std::size_t center = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (std::abs(rows[i].value) < std::abs(rows[center].value)) {
            center = i;
        }
    }
    std::ostringstream note;
    note << command << ": " << rows.size() << " points";
    const int failures = count_failures(rows);
    if (failures > 0) {
        note << " (" << failures << " failed to converge)";
    }
    if (rows[center].ok()) {
        note << "; at delta=" << format_g17(rows[center].value)
             << " rad/s: n_g=" << format_g17(rows[center].point.group_index)
             << ", transmission=" << format_g17(rows[center].point.transmission);
    }
    std::cerr << note.str() << "\n";
}

void run_gscan(const RunConfig& cfg, const std::string& out, OutputFormat format) {
    SweepSpec spec;
    spec.variable = SweepVariable::pump_rabi;
    spec.grid = linspace(cfg.sweep_G_min, cfg.sweep_G_max, cfg.sweep_points);
    spec.medium = cfg.medium;
    spec.pump = cfg.pump;
    spec.probe = cfg.probe;
    spec.quad = cfg.quad;
    const std::vector<SweepRow> rows = run_sweep(spec);

    emit_table(sweep_table("gscan", cfg, "G_rad_per_s", rows), out, format);

    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].ok() && rows[i].point.group_index > rows[best].point.group_index) {
            best = i;
        }
    }
    std::ostringstream note;
    note << "gscan: " << rows.size() << " points";
    const int failures = count_failures(rows);
    if (failures > 0) {
        note << " (" << failures << " failed to converge)";
    }
    if (rows[best].ok()) {
        note << "; max n_g=" << format_g17(rows[best].point.group_index)
             << " at G=" << format_g17(rows[best].value) << " rad/s";
    }
    std::cerr << note.str() << "\n";
}

void run_pulse(const RunConfig& cfg, const std::string& out, OutputFormat format) {
    GaussianPulseSpec pulse;
    pulse.spectral_width_Gamma = cfg.pulse_Gamma;
    pulse.duration_tau = cfg.pulse_tau;
    pulse.carrier_delta = cfg.pulse_carrier_delta;
    SamplingConfig grid;
    grid.samples = cfg.pulse_samples;
    grid.window_halfwidth = cfg.pulse_window_halfwidth;

    const PropagationResult result =
        propagate_pulse(pulse, cfg.pump, cfg.medium, cfg.quad, grid);

    Table t;
    t.title = "pulse";
    t.meta = snapshot(cfg, "pulse");
    t.meta.emplace_back("result.measured_delay_s", format_g17(result.measured_delay_s));
    t.meta.emplace_back("result.measured_delay_peak_s",
                        format_g17(result.measured_delay_peak_s));
    t.meta.emplace_back("result.measured_transmission",
                        format_g17(result.measured_transmission));
    t.meta.emplace_back("result.transmission_method", result.transmission_method);
    t.meta.emplace_back("result.predicted_delay_s", format_g17(result.predicted_delay_s));
    t.meta.emplace_back("result.predicted_attenuation_exponent",
                        format_g17(result.predicted_attenuation_exponent));
    t.meta.emplace_back("result.energy_spectral", format_g17(result.energy_spectral));
    t.meta.emplace_back("result.energy_temporal", format_g17(result.energy_temporal));
    t.meta.emplace_back("result.evaluated_bins",
                        format_g17(static_cast<double>(result.evaluated_bins)));
    t.columns = {"t_s", "intensity_vacuum", "intensity_medium"};
    t.rows.reserve(result.time_s.size());
    for (std::size_t i = 0; i < result.time_s.size(); ++i) {
        t.rows.push_back({result.time_s[i], result.intensity_vacuum[i],
                          result.intensity_medium[i]});
    }
    emit_table(t, out, format);

    std::cerr << "pulse: measured delay " << format_g17(result.measured_delay_s)
              << " s (predicted " << format_g17(result.predicted_delay_s)
              << " s), peak transmission " << format_g17(result.measured_transmission)
              << "\n";
}

void run_optimize(const RunConfig& cfg, const std::string& out, OutputFormat format) {
    const OptimizeResult result = optimize_pump(cfg.opt_G_min, cfg.opt_G_max,
                                                cfg.opt_min_transmission, cfg.medium,
                                                cfg.quad);
    Table t;
    t.title = "optimize";
    t.meta = snapshot(cfg, "optimize");
    t.meta.emplace_back("result.evaluations", std::to_string(result.evaluations));
    t.meta.emplace_back("result.constraint_active",
                        result.constraint_active ? "true" : "false");
    t.columns = {"G_rad_per_s", "n_g", "theta_s", "attenuation_exponent",
                 "transmission", "constraint_active"};
    t.rows.push_back({result.rabi_G, result.group_index, result.group_delay_s,
                      result.attenuation_exponent, result.transmission,
                      result.constraint_active ? 1.0 : 0.0});
    emit_table(t, out, format);

    std::cerr << "optimize: best n_g=" << format_g17(result.group_index)
              << " at G=" << format_g17(result.rabi_G) << " rad/s, transmission "
              << format_g17(result.transmission)
              << (result.constraint_active ? " (constraint active)" : "") << "\n";
}

int fail_with(const char* category, const std::exception& e) {
    std::cerr << "error: " << category << ": " << e.what() << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Doppler-broadened pump-probe dispersion simulator"};
    app.require_subcommand(1);
    // Global options may appear before or after the subcommand name.
    app.fallthrough();

    std::string config_path;
    std::string out_path = "-";
    std::string format_name = "csv";
    std::string gamma_units_name = "ordinary";
    std::vector<std::string> overrides;

    app.add_option("--config", config_path, "config file of 'key = value [unit]' lines");
    app.add_option("--out", out_path, "output path, '-' for stdout (default)");
    app.add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--set", overrides,
                   "override 'key=value[unit]' on top of the config; repeatable");
    app.add_option("--gamma-units", gamma_units_name,
                   "reading of the default pulse width quoted as 120 kHz")
        ->check(CLI::IsMember({"ordinary", "angular"}));

    CLI::App* cmd_spectrum =
        app.add_subcommand("spectrum", "Doppler-averaged S(delta) and dispersion columns");
    CLI::App* cmd_groupindex =
        app.add_subcommand("groupindex", "group index around line center");
    CLI::App* cmd_gscan =
        app.add_subcommand("gscan", "dispersion at line center versus pump strength");
    CLI::App* cmd_pulse =
        app.add_subcommand("pulse", "Gaussian pulse propagation through the cell");
    CLI::App* cmd_optimize =
        app.add_subcommand("optimize", "pump strength maximizing n_g under a transmission floor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        const GammaUnits gamma_units = gamma_units_name == "angular"
                                           ? GammaUnits::angular
                                           : GammaUnits::ordinary;
        RunConfig cfg = config_path.empty()
                            ? default_config(gamma_units)
                            : parse_config(read_file(config_path), gamma_units);
        for (const std::string& assignment : overrides) {
            apply_override(cfg, assignment);
        }
        const OutputFormat format =
            format_name == "json" ? OutputFormat::json : OutputFormat::csv;

        if (cmd_spectrum->parsed()) {
            run_detuning_scan("spectrum", cfg, out_path, format);
        } else if (cmd_groupindex->parsed()) {
            run_detuning_scan("groupindex", cfg, out_path, format);
        } else if (cmd_gscan->parsed()) {
            run_gscan(cfg, out_path, format);
        } else if (cmd_pulse->parsed()) {
            run_pulse(cfg, out_path, format);
        } else if (cmd_optimize->parsed()) {
            run_optimize(cfg, out_path, format);
        }
        return 0;
    } catch (const ConfigParseError& e) {
        fail_with("config-parse", e);
        return 3;
    } catch (const InvalidParameterError& e) {
        fail_with("invalid-parameter", e);
        return 3;
    } catch (const ConvergenceError& e) {
        fail_with("convergence", e);
        return 4;
    } catch (const InfeasibleError& e) {
        fail_with("infeasible", e);
        return 5;
    } catch (const NumericRangeError& e) {
        fail_with("numeric-range", e);
        return 6;
    } catch (const IoError& e) {
        fail_with("io", e);
        return 7;
    } catch (const std::exception& e) {
        return fail_with("internal", e);
    }
}
