#include "doctest.h"

#include "lambdip/config.hpp"
#include "lambdip/constants.hpp"
#include "lambdip/io.hpp"
#include "lambdip/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace lambdip;

namespace {

std::string strip_timestamp_lines(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# generated_at", 0) == 0) continue;
        out << line << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("defaults are pinned to the medium's homogeneous rate") {
    const RunConfig cfg = default_config();
    const double rate = 1.0 / cfg.medium.T2;
    const double two_pi = 2.0 * constants::pi;

    CHECK(cfg.preset == "rb87-paper");
    CHECK(cfg.pump.rabi_G == 0.4 * rate);
    CHECK(cfg.pump.detuning_Delta == 0.0);
    CHECK(cfg.probe.detuning_delta == 0.0);
    CHECK(cfg.pulse_Gamma == two_pi * 120e3);
    CHECK(cfg.pulse_tau == 2.0 / cfg.pulse_Gamma);
    CHECK(cfg.pulse_samples == 16384);
    CHECK(cfg.sweep_delta_min == -20.0 * rate);
    CHECK(cfg.sweep_delta_max == 20.0 * rate);
    CHECK(cfg.sweep_points == 401);
    CHECK_FALSE(cfg.sweep_range_explicit);
    CHECK_FALSE(cfg.sweep_points_explicit);
    CHECK(cfg.sweep_G_min == 0.05 * rate);
    CHECK(cfg.sweep_G_max == 1.0 * rate);
    CHECK(cfg.opt_G_min == 0.3 * rate);
    CHECK(cfg.opt_G_max == 0.5 * rate);

    // The quoted spectral width can be read as an angular rate instead.
    const RunConfig ang = default_config(GammaUnits::angular);
    CHECK(ang.pulse_Gamma == 120e3);
    CHECK(ang.pulse_tau == 2.0 / 120e3);
}

TEST_CASE("config files parse units and survive reordering") {
    const std::string text =
        "# probe settings\n"
        "\n"
        "pump.rabi_G = 3 MHz\n"
        "probe.detuning_delta = 0.5 MHz\n"
        "medium.temperature = 320 K\n"
        "medium.length_l = 10 mm\n"
        "sweep.points = 101\n"
        "quad.rel_tolerance = 1e-9\n";
    const RunConfig cfg = parse_config(text);
    const double two_pi = 2.0 * constants::pi;

    // Medium keys are applied first regardless of file order, then the
    // rate-relative defaults are rebuilt, then the remaining keys land.
    CHECK(cfg.medium.temperature == 320.0);
    CHECK(cfg.medium.length_l == 1.0);  // 10 mm in cm
    CHECK(cfg.pump.rabi_G == 3.0 * two_pi * 1e6);
    CHECK(cfg.probe.detuning_delta == 0.5 * two_pi * 1e6);
    CHECK(cfg.sweep_points == 101);
    CHECK(cfg.sweep_points_explicit);
    CHECK_FALSE(cfg.sweep_range_explicit);
    CHECK(cfg.quad.rel_tolerance == 1e-9);
}

TEST_CASE("frequency units multiply by two pi, rad/s is verbatim") {
    const double two_pi = 2.0 * constants::pi;
    CHECK(parse_config("pump.rabi_G = 1 Hz\n").pump.rabi_G == two_pi);
    CHECK(parse_config("pump.rabi_G = 1 kHz\n").pump.rabi_G == two_pi * 1e3);
    CHECK(parse_config("pump.rabi_G = 1 GHz\n").pump.rabi_G == two_pi * 1e9);
    CHECK(parse_config("pump.rabi_G = 7.5e6 rad/s\n").pump.rabi_G == 7.5e6);
    CHECK(parse_config("pump.rabi_G = 7.5e6\n").pump.rabi_G == 7.5e6);
    CHECK(parse_config("medium.T1 = 30 ns\n").medium.T1 == 30.0 * 1e-9);
    CHECK(parse_config("medium.mass_M = 87 u\n").medium.mass_M
          == 87.0 * constants::atomic_mass);
    CHECK(parse_config("medium.density_N = 1e11 cm^-3\n").medium.density_N == 1e11);
}

TEST_CASE("editing the medium rebuilds rate-relative defaults") {
    const double T2_half = 5.3051647697298445e-8;
    std::ostringstream text;
    text << "medium.T2 = " << format_g17(T2_half) << " s\n";
    const RunConfig cfg = parse_config(text.str());

    CHECK(cfg.medium.T2 == T2_half);
    const double rate = 1.0 / cfg.medium.T2;
    CHECK(cfg.pump.rabi_G == 0.4 * rate);       // rebuilt from the new rate
    CHECK(cfg.sweep_delta_min == -20.0 * rate);
    CHECK(cfg.opt_G_max == 0.5 * rate);
    // Recalibrated coupling prefactor: still density * d^2 / hbar > 0.
    CHECK(cfg.medium.prefactor_C > 0.0);
}

TEST_CASE("pulse width and duration stay a matched pair unless tau is explicit") {
    const RunConfig paired = parse_config("pulse.Gamma = 240 kHz\n");
    CHECK(paired.pulse_Gamma == 240.0 * (2.0 * constants::pi) * 1e3);
    CHECK(paired.pulse_tau == 2.0 / paired.pulse_Gamma);

    const RunConfig split = parse_config("pulse.Gamma = 240 kHz\npulse.tau = 1 us\n");
    CHECK(split.pulse_tau == 1e-6);

    RunConfig cfg = default_config();
    apply_override(cfg, "pulse.Gamma=240 kHz");
    CHECK(cfg.pulse_tau == 2.0 / cfg.pulse_Gamma);
}

TEST_CASE("config violations are reported with key and line") {
    auto message_of = [](const std::string& text) {
        try {
            (void)parse_config(text);
            return std::string();
        } catch (const ConfigParseError& e) {
            return std::string(e.what());
        }
    };

    std::string msg = message_of("pump.power = 3\n");
    CHECK(msg.find("pump.power") != std::string::npos);
    CHECK(msg.find("line 1") != std::string::npos);

    msg = message_of("pump.rabi_G = 3 furlongs\n");
    CHECK(msg.find("furlongs") != std::string::npos);

    msg = message_of("pump.rabi_G = 1 MHz\npump.rabi_G = 2 MHz\n");
    CHECK(msg.find("duplicate") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);

    msg = message_of("pump.rabi_G\n");
    CHECK(msg.find("key = value") != std::string::npos);

    msg = message_of("pump.rabi_G =\n");
    CHECK(msg.find("empty value") != std::string::npos);

    msg = message_of("sweep.points = 10 Hz\n");
    CHECK(msg.find("bare number") != std::string::npos);

    msg = message_of("sweep.points = 10.5\n");
    CHECK(msg.find("integer") != std::string::npos);

    msg = message_of("pump.rabi_G = 3 MHz # inline comments are not a thing\n");
    CHECK(msg.find("trailing garbage") != std::string::npos);

    // Unknown preset names surface from the preset table.
    CHECK_THROWS_AS(parse_config("preset = exotic-vapor\n"), InvalidParameterError);
    // Out-of-range values fail validation after parsing.
    CHECK_THROWS_AS(parse_config("quad.rel_tolerance = 0.5\n"), InvalidParameterError);
}

TEST_CASE("overrides apply on top and cannot switch presets") {
    RunConfig cfg = default_config();
    const double two_pi = 2.0 * constants::pi;
    apply_override(cfg, "pump.rabi_G=4 MHz");
    CHECK(cfg.pump.rabi_G == 4.0 * two_pi * 1e6);
    apply_override(cfg, " probe.detuning_delta = -2 MHz ");
    CHECK(cfg.probe.detuning_delta == -2.0 * two_pi * 1e6);

    CHECK_THROWS_AS(apply_override(cfg, "preset=rb87-paper"), ConfigParseError);
    CHECK_THROWS_AS(apply_override(cfg, "pump.rabi_G"), ConfigParseError);
    CHECK_THROWS_AS(apply_override(cfg, "pump.rabi_G=abc"), ConfigParseError);
    CHECK_THROWS_AS(apply_override(cfg, "quad.rel_tolerance=0.5"), InvalidParameterError);
}

TEST_CASE("snapshot lists every resolved parameter in a fixed order") {
    const RunConfig cfg = default_config();
    const auto snap = snapshot(cfg, "spectrum");

    REQUIRE(snap.size() >= 30);
    CHECK(snap[0].first == "preset");
    CHECK(snap[0].second == "rb87-paper");
    CHECK(snap[1].first == "command");
    CHECK(snap[1].second == "spectrum");
    CHECK(snap[2].first == "kernel");
    CHECK(snap[3].first == "gamma_units");
    CHECK(snap[3].second == "ordinary");

    bool found_doppler = false;
    for (const auto& [key, value] : snap) {
        if (key == "medium.doppler_width_D") {
            found_doppler = true;
            CHECK(value == format_g17(doppler_width(cfg.medium)));
        }
    }
    CHECK(found_doppler);
}

TEST_CASE("g17 formatting round-trips doubles exactly") {
    const std::vector<double> values = {0.0,       0.1,       1.0 / 3.0, -2.5,
                                        1e300,     5e-324,    6.02214076e23,
                                        -7.3e-15,  2.0 * constants::pi};
    for (const double v : values) {
        const std::string s = format_g17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("csv output is byte-stable apart from the timestamp line") {
    Table t;
    t.title = "spectrum";
    t.meta = {{"preset", "rb87-paper"}, {"pump.rabi_G", "3769911.1843077517"}};
    t.columns = {"delta_rad_per_s", "im_S"};
    t.rows = {{-1.0e6, 4.9e-6}, {0.0, 4.3e-6}};

    std::ostringstream a;
    write_csv(a, t, "2026-08-14T00:00:00Z");
    const std::string expected =
        "# spectrum\n"
        "# preset = rb87-paper\n"
        "# pump.rabi_G = 3769911.1843077517\n"
        "# generated_at = 2026-08-14T00:00:00Z\n"
        "delta_rad_per_s,im_S\n"
        "-1000000,4.8999999999999997e-06\n"
        "0,4.3000000000000003e-06\n";
    CHECK(a.str() == expected);

    std::ostringstream b;
    write_csv(b, t, "2030-01-01T12:34:56Z");
    CHECK(a.str() != b.str());
    CHECK(strip_timestamp_lines(a.str()) == strip_timestamp_lines(b.str()));
}

TEST_CASE("json output parses and round-trips numbers bit-exactly") {
    Table t;
    t.title = "gscan";
    t.meta = {{"preset", "rb87-paper"}, {"note", "quote\"and\\slash"}};
    t.columns = {"G_rad_per_s", "n_g"};
    t.rows = {{3769911.1843077517, 380.48877290966926},
              {1.0, std::nan("")}};

    std::ostringstream out;
    write_json(out, t, "2026-08-14T00:00:00Z");
    const nlohmann::json j = nlohmann::json::parse(out.str());

    CHECK(j.at("command") == "gscan");
    CHECK(j.at("generated_at") == "2026-08-14T00:00:00Z");
    CHECK(j.at("params").at("preset") == "rb87-paper");
    CHECK(j.at("params").at("note") == "quote\"and\\slash");
    REQUIRE(j.at("columns").size() == 2);
    CHECK(j.at("columns")[1] == "n_g");
    REQUIRE(j.at("rows").size() == 2);
    CHECK(j.at("rows")[0][0].get<double>() == 3769911.1843077517);
    CHECK(j.at("rows")[0][1].get<double>() == 380.48877290966926);
    CHECK(j.at("rows")[1][1].is_null());  // NaN has no JSON literal
}

TEST_CASE("emit_table writes files and reports unwritable paths") {
    Table t;
    t.title = "probe";
    t.columns = {"x"};
    t.rows = {{1.5}};

    const std::string path = "/tmp/lambdip_io_test.csv";
    emit_table(t, path, OutputFormat::csv);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str().find("# probe\n") == 0);
    CHECK(content.str().find("\nx\n") != std::string::npos);
    CHECK(content.str().find("1.5\n") != std::string::npos);
    std::remove(path.c_str());

    CHECK_THROWS_AS(emit_table(t, "/nonexistent-dir/out.csv", OutputFormat::csv),
                    IoError);
}
