#include "lambdip/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>

#include "lambdip/constants.hpp"
#include "lambdip/errors.hpp"
#include "lambdip/io.hpp"
#include "lambdip/kernels.hpp"

namespace lambdip {

namespace {

enum class Dim { frequency, time, length, mass, temperature, density, plain, integer };

// Every assignable key and its dimension.  Anything else is rejected.
const std::map<std::string, Dim>& schema() {
    static const std::map<std::string, Dim> s = {
        {"medium.density_N", Dim::density},
        {"medium.T1", Dim::time},
        {"medium.T2", Dim::time},
        {"medium.omega_1g", Dim::frequency},
        {"medium.mass_M", Dim::mass},
        {"medium.temperature", Dim::temperature},
        {"medium.length_l", Dim::length},
        {"pump.rabi_G", Dim::frequency},
        {"pump.detuning_Delta", Dim::frequency},
        {"probe.detuning_delta", Dim::frequency},
        {"probe.modulation_index_m", Dim::plain},
        {"probe.modulation_freq_nu", Dim::frequency},
        {"quad.integration_halfwidth", Dim::plain},
        {"quad.rel_tolerance", Dim::plain},
        {"quad.max_subdivisions", Dim::integer},
        {"pulse.Gamma", Dim::frequency},
        {"pulse.tau", Dim::time},
        {"pulse.carrier_delta", Dim::frequency},
        {"pulse.samples", Dim::integer},
        {"pulse.window_halfwidth", Dim::frequency},
        {"sweep.delta_min", Dim::frequency},
        {"sweep.delta_max", Dim::frequency},
        {"sweep.points", Dim::integer},
        {"sweep.G_min", Dim::frequency},
        {"sweep.G_max", Dim::frequency},
        {"optimize.G_min", Dim::frequency},
        {"optimize.G_max", Dim::frequency},
        {"optimize.min_transmission", Dim::plain},
    };
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& message, const std::string& where) {
    throw ConfigParseError(message + " (" + where + ")");
}

// Converts "value unit" to the internal base units of the key's dimension
// (rad/s, s, cm, g, K, cm^-3).
double convert(double value, const std::string& unit, Dim dim,
               const std::string& key, const std::string& where) {
    const double two_pi = 2.0 * constants::pi;
    switch (dim) {
    case Dim::frequency:
        if (unit.empty() || unit == "rad/s") return value;
        if (unit == "Hz") return value * two_pi;
        if (unit == "kHz") return value * two_pi * 1e3;
        if (unit == "MHz") return value * two_pi * 1e6;
        if (unit == "GHz") return value * two_pi * 1e9;
        break;
    case Dim::time:
        if (unit.empty() || unit == "s") return value;
        if (unit == "ms") return value * 1e-3;
        if (unit == "us") return value * 1e-6;
        if (unit == "ns") return value * 1e-9;
        break;
    case Dim::length:
        if (unit.empty() || unit == "cm") return value;
        if (unit == "mm") return value * 0.1;
        if (unit == "m") return value * 100.0;
        break;
    case Dim::mass:
        if (unit.empty() || unit == "g") return value;
        if (unit == "u") return value * constants::atomic_mass;
        break;
    case Dim::temperature:
        if (unit.empty() || unit == "K") return value;
        break;
    case Dim::density:
        if (unit.empty() || unit == "cm^-3" || unit == "1/cm3" || unit == "1/cm^3") return value;
        break;
    case Dim::plain:
    case Dim::integer:
        if (unit.empty()) return value;
        fail("key '" + key + "' takes a bare number, got unit '" + unit + "'", where);
    }
    fail("unknown unit '" + unit + "' for key '" + key + "'", where);
}

long to_integer(double value, const std::string& key, const std::string& where) {
    if (!(value >= 0.0) || value != std::floor(value) || value > 1e9) {
        fail("key '" + key + "' requires a nonnegative integer", where);
    }
    return static_cast<long>(value);
}

// Applies one converted assignment to the config.  Medium edits recompute the
// coupling prefactor; pulse.Gamma keeps tau at the matched 2/Gamma unless tau
// was set explicitly somewhere.
struct ApplyState {
    bool pulse_tau_explicit = false;
};

void apply_assignment(RunConfig& cfg, ApplyState& state, const std::string& key,
                      double raw_value, const std::string& unit, const std::string& where) {
    const auto it = schema().find(key);
    if (it == schema().end()) {
        if (key == "preset") {
            fail("preset can only be set in a config file, before other keys", where);
        }
        fail("unknown key '" + key + "'", where);
    }
    const double value = convert(raw_value, unit, it->second, key, where);

    if (key == "medium.density_N") cfg.medium.density_N = value;
    else if (key == "medium.T1") cfg.medium.T1 = value;
    else if (key == "medium.T2") cfg.medium.T2 = value;
    else if (key == "medium.omega_1g") cfg.medium.omega_1g = value;
    else if (key == "medium.mass_M") cfg.medium.mass_M = value;
    else if (key == "medium.temperature") cfg.medium.temperature = value;
    else if (key == "medium.length_l") cfg.medium.length_l = value;
    else if (key == "pump.rabi_G") cfg.pump.rabi_G = value;
    else if (key == "pump.detuning_Delta") cfg.pump.detuning_Delta = value;
    else if (key == "probe.detuning_delta") cfg.probe.detuning_delta = value;
    else if (key == "probe.modulation_index_m") cfg.probe.modulation_index_m = value;
    else if (key == "probe.modulation_freq_nu") cfg.probe.modulation_freq_nu = value;
    else if (key == "quad.integration_halfwidth") cfg.quad.integration_halfwidth = value;
    else if (key == "quad.rel_tolerance") cfg.quad.rel_tolerance = value;
    else if (key == "quad.max_subdivisions")
        cfg.quad.max_subdivisions = static_cast<int>(to_integer(value, key, where));
    else if (key == "pulse.Gamma") {
        cfg.pulse_Gamma = value;
        if (!state.pulse_tau_explicit && value > 0.0) {
            cfg.pulse_tau = 2.0 / value;
        }
    } else if (key == "pulse.tau") {
        cfg.pulse_tau = value;
        state.pulse_tau_explicit = true;
    } else if (key == "pulse.carrier_delta") cfg.pulse_carrier_delta = value;
    else if (key == "pulse.samples")
        cfg.pulse_samples = static_cast<std::size_t>(to_integer(value, key, where));
    else if (key == "pulse.window_halfwidth") cfg.pulse_window_halfwidth = value;
    else if (key == "sweep.delta_min") { cfg.sweep_delta_min = value; cfg.sweep_range_explicit = true; }
    else if (key == "sweep.delta_max") { cfg.sweep_delta_max = value; cfg.sweep_range_explicit = true; }
    else if (key == "sweep.points") {
        cfg.sweep_points = static_cast<int>(to_integer(value, key, where));
        cfg.sweep_points_explicit = true;
    } else if (key == "sweep.G_min") cfg.sweep_G_min = value;
    else if (key == "sweep.G_max") cfg.sweep_G_max = value;
    else if (key == "optimize.G_min") cfg.opt_G_min = value;
    else if (key == "optimize.G_max") cfg.opt_G_max = value;
    else if (key == "optimize.min_transmission") cfg.opt_min_transmission = value;

    if (key.rfind("medium.", 0) == 0) {
        cfg.medium = calibrate_prefactor(cfg.medium);
    }
}

// Splits the right-hand side of an assignment into number and optional unit.
void parse_value(const std::string& text, const std::string& key, const std::string& where,
                 double& value, std::string& unit) {
    const std::string v = trim(text);
    if (v.empty()) {
        fail("key '" + key + "' has an empty value", where);
    }
    const char* begin = v.c_str();
    char* end = nullptr;
    value = std::strtod(begin, &end);
    if (end == begin) {
        fail("key '" + key + "' has a non-numeric value '" + v + "'", where);
    }
    if (!std::isfinite(value)) {
        fail("key '" + key + "' has a non-finite value '" + v + "'", where);
    }
    unit = trim(std::string(end));
    for (const char ch : unit) {
        if (std::isspace(static_cast<unsigned char>(ch))) {
            fail("key '" + key + "' has trailing garbage after its unit", where);
        }
    }
}

RunConfig defaults_for(const std::string& preset, GammaUnits gamma_units) {
    RunConfig cfg;
    cfg.preset = preset;
    cfg.gamma_units = gamma_units;
    cfg.medium = preset_medium(preset);

    const double rate = 1.0 / cfg.medium.T2; // homogeneous rate [rad/s]
    const double two_pi = 2.0 * constants::pi;

    cfg.pump.rabi_G = 0.4 * rate;
    cfg.pump.detuning_Delta = 0.0;

    cfg.probe.detuning_delta = 0.0;
    cfg.probe.modulation_index_m = 0.1;
    cfg.probe.modulation_freq_nu = two_pi * 120e3;

    // The quoted default pulse width "120 kHz" read per the chosen convention.
    cfg.pulse_Gamma = (gamma_units == GammaUnits::ordinary ? two_pi : 1.0) * 120e3;
    cfg.pulse_tau = 2.0 / cfg.pulse_Gamma;
    cfg.pulse_carrier_delta = 0.0;
    cfg.pulse_samples = 16384;
    cfg.pulse_window_halfwidth = 0.0;

    cfg.sweep_delta_min = -20.0 * rate;
    cfg.sweep_delta_max = 20.0 * rate;
    cfg.sweep_points = 401;
    cfg.sweep_G_min = 0.05 * rate;
    cfg.sweep_G_max = 1.0 * rate;

    cfg.opt_G_min = 0.3 * rate;
    cfg.opt_G_max = 0.5 * rate;
    cfg.opt_min_transmission = 0.0;
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    cfg.medium.validate();
    cfg.pump.validate();
    cfg.probe.validate();
    cfg.quad.validate();
    if (!(cfg.pulse_Gamma > 0.0) || !(cfg.pulse_tau > 0.0)) {
        throw InvalidParameterError("pulse.Gamma and pulse.tau must be positive");
    }
    if (!(cfg.sweep_delta_min < cfg.sweep_delta_max)) {
        throw InvalidParameterError("sweep.delta_min must be below sweep.delta_max");
    }
    if (cfg.sweep_points < 2 || cfg.sweep_points > 1000000) {
        throw InvalidParameterError("sweep.points must lie in [2, 1e6]");
    }
    if (!(cfg.sweep_G_min >= 0.0) || !(cfg.sweep_G_min < cfg.sweep_G_max)) {
        throw InvalidParameterError("sweep G range must satisfy 0 <= G_min < G_max");
    }
    if (!(cfg.opt_G_min >= 0.0) || !(cfg.opt_G_min <= cfg.opt_G_max)) {
        throw InvalidParameterError("optimize G range must satisfy 0 <= G_min <= G_max");
    }
    if (!(cfg.opt_min_transmission >= 0.0) || !(cfg.opt_min_transmission <= 1.0)) {
        throw InvalidParameterError("optimize.min_transmission must lie in [0, 1]");
    }
}

} // namespace

RunConfig default_config(GammaUnits gamma_units) {
    return defaults_for("rb87-paper", gamma_units);
}

RunConfig parse_config(const std::string& text, GammaUnits gamma_units) {
    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::string, Entry> raw;
    std::vector<std::string> order; // file order, for deterministic application

    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            fail("expected 'key = value', got '" + stripped + "'", "line " + std::to_string(line_no));
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            fail("missing key before '='", "line " + std::to_string(line_no));
        }
        if (key != "preset" && schema().find(key) == schema().end()) {
            fail("unknown key '" + key + "'", "line " + std::to_string(line_no));
        }
        if (raw.count(key) != 0) {
            fail("duplicate key '" + key + "' (first set on line "
                     + std::to_string(raw[key].line) + ")",
                 "line " + std::to_string(line_no));
        }
        raw[key] = Entry{value, line_no};
        order.push_back(key);
    }

    std::string preset = "rb87-paper";
    if (const auto it = raw.find("preset"); it != raw.end()) {
        preset = it->second.value;
        if (preset.empty()) {
            fail("preset requires a name", "line " + std::to_string(it->second.line));
        }
    }

    RunConfig cfg = defaults_for(preset, gamma_units);
    ApplyState state;

    // Medium keys first so that rate-relative defaults are rebuilt from the
    // configured medium before the remaining keys land on top.
    bool medium_touched = false;
    for (const std::string& key : order) {
        if (key.rfind("medium.", 0) != 0) {
            continue;
        }
        const Entry& entry = raw[key];
        double value = 0.0;
        std::string unit;
        parse_value(entry.value, key, "line " + std::to_string(entry.line), value, unit);
        apply_assignment(cfg, state, key, value, unit, "line " + std::to_string(entry.line));
        medium_touched = true;
    }
    if (medium_touched) {
        const MediumParams medium = cfg.medium;
        cfg = defaults_for(preset, gamma_units);
        cfg.medium = medium;
        const double rate = 1.0 / medium.T2;
        cfg.pump.rabi_G = 0.4 * rate;
        cfg.sweep_delta_min = -20.0 * rate;
        cfg.sweep_delta_max = 20.0 * rate;
        cfg.sweep_G_min = 0.05 * rate;
        cfg.sweep_G_max = 1.0 * rate;
        cfg.opt_G_min = 0.3 * rate;
        cfg.opt_G_max = 0.5 * rate;
    }
    for (const std::string& key : order) {
        if (key == "preset" || key.rfind("medium.", 0) == 0) {
            continue;
        }
        const Entry& entry = raw[key];
        double value = 0.0;
        std::string unit;
        parse_value(entry.value, key, "line " + std::to_string(entry.line), value, unit);
        apply_assignment(cfg, state, key, value, unit, "line " + std::to_string(entry.line));
    }

    validate_config(cfg);
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos) {
        fail("expected key=value, got '" + assignment + "'", "--set override");
    }
    const std::string key = trim(assignment.substr(0, eq));
    if (key.empty()) {
        fail("missing key before '=' in '" + assignment + "'", "--set override");
    }
    double value = 0.0;
    std::string unit;
    parse_value(assignment.substr(eq + 1), key, "--set override", value, unit);
    ApplyState state;
    state.pulse_tau_explicit = false; // --set pulse.Gamma re-pairs tau = 2/Gamma
    apply_assignment(cfg, state, key, value, unit, "--set override");
    validate_config(cfg);
}

std::vector<std::pair<std::string, std::string>> snapshot(const RunConfig& cfg,
                                                          const std::string& command) {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(40);
    const auto add = [&out](const std::string& key, const std::string& value) {
        out.emplace_back(key, value);
    };
    const auto addv = [&out](const std::string& key, double value) {
        out.emplace_back(key, format_g17(value));
    };

    add("preset", cfg.preset);
    add("command", command);
    add("kernel", kernels::active_kernel().name);
    add("gamma_units", cfg.gamma_units == GammaUnits::ordinary ? "ordinary" : "angular");
    addv("medium.density_N", cfg.medium.density_N);
    addv("medium.T1", cfg.medium.T1);
    addv("medium.T2", cfg.medium.T2);
    addv("medium.omega_1g", cfg.medium.omega_1g);
    addv("medium.mass_M", cfg.medium.mass_M);
    addv("medium.temperature", cfg.medium.temperature);
    addv("medium.length_l", cfg.medium.length_l);
    addv("medium.prefactor_C", cfg.medium.prefactor_C);
    addv("medium.doppler_width_D", doppler_width(cfg.medium));
    addv("pump.rabi_G", cfg.pump.rabi_G);
    addv("pump.detuning_Delta", cfg.pump.detuning_Delta);
    addv("probe.detuning_delta", cfg.probe.detuning_delta);
    addv("probe.modulation_index_m", cfg.probe.modulation_index_m);
    addv("probe.modulation_freq_nu", cfg.probe.modulation_freq_nu);
    addv("quad.integration_halfwidth", cfg.quad.integration_halfwidth);
    addv("quad.rel_tolerance", cfg.quad.rel_tolerance);
    addv("quad.max_subdivisions", cfg.quad.max_subdivisions);
    addv("pulse.Gamma", cfg.pulse_Gamma);
    addv("pulse.tau", cfg.pulse_tau);
    addv("pulse.carrier_delta", cfg.pulse_carrier_delta);
    addv("pulse.samples", static_cast<double>(cfg.pulse_samples));
    addv("pulse.window_halfwidth", cfg.pulse_window_halfwidth);
    addv("sweep.delta_min", cfg.sweep_delta_min);
    addv("sweep.delta_max", cfg.sweep_delta_max);
    addv("sweep.points", cfg.sweep_points);
    addv("sweep.G_min", cfg.sweep_G_min);
    addv("sweep.G_max", cfg.sweep_G_max);
    addv("optimize.G_min", cfg.opt_G_min);
    addv("optimize.G_max", cfg.opt_G_max);
    addv("optimize.min_transmission", cfg.opt_min_transmission);
    return out;
}

} // namespace lambdip
