#include "doctest.h"

#include "lambdip/dispersion.hpp"
#include "lambdip/params.hpp"
#include "lambdip/sweep.hpp"
#include "lambdip/errors.hpp"

#include <cmath>
#include <vector>

using namespace lambdip;

namespace {

MediumParams medium() { return preset_medium("rb87-paper"); }

SweepSpec base_spec() {
    SweepSpec s;
    s.medium = medium();
    s.pump = PumpParams{0.4 / s.medium.T2, 0.0};
    return s;
}

bool same_point(const DispersionPoint& a, const DispersionPoint& b) {
    return a.S == b.S && a.dS_domega == b.dS_domega && a.group_index == b.group_index
           && a.group_delay_s == b.group_delay_s
           && a.attenuation_exponent == b.attenuation_exponent
           && a.transmission == b.transmission;
}

}  // namespace

TEST_CASE("probe detuning sweep reproduces pointwise evaluation") {
    SweepSpec spec = base_spec();
    const double rate = 1.0 / spec.medium.T2;
    for (int i = 0; i < 7; ++i) spec.grid.push_back((-3.0 + i) * rate);

    const std::vector<SweepRow> rows = run_sweep(spec);
    REQUIRE(rows.size() == spec.grid.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].ok());
        CHECK(rows[i].value == spec.grid[i]);
        const DispersionPoint direct =
            dispersion_point(spec.grid[i], spec.pump, spec.medium, spec.quad);
        CHECK(same_point(rows[i].point, direct));
    }
}

TEST_CASE("splitting a sweep does not change any row") {
    SweepSpec spec = base_spec();
    const double rate = 1.0 / spec.medium.T2;
    for (int i = 0; i < 6; ++i) spec.grid.push_back((-2.5 + i) * rate);
    const std::vector<SweepRow> whole = run_sweep(spec);

    SweepSpec head = spec;
    head.grid.assign(spec.grid.begin(), spec.grid.begin() + 3);
    SweepSpec tail = spec;
    tail.grid.assign(spec.grid.begin() + 3, spec.grid.end());

    std::vector<SweepRow> parts = run_sweep(head);
    const std::vector<SweepRow> rest = run_sweep(tail);
    parts.insert(parts.end(), rest.begin(), rest.end());

    REQUIRE(parts.size() == whole.size());
    for (std::size_t i = 0; i < whole.size(); ++i) {
        CHECK(parts[i].value == whole[i].value);
        CHECK(same_point(parts[i].point, whole[i].point));
    }
}

TEST_CASE("pump sweeps substitute the swept variable") {
    SweepSpec spec = base_spec();
    spec.variable = SweepVariable::pump_rabi;
    const double rate = 1.0 / spec.medium.T2;
    spec.grid = {0.1 * rate, 0.4 * rate, 0.8 * rate};

    const std::vector<SweepRow> rows = run_sweep(spec);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        PumpParams pump{spec.grid[i], 0.0};
        const DispersionPoint direct =
            dispersion_point(0.0, pump, spec.medium, spec.quad);
        CHECK(same_point(rows[i].point, direct));
    }

    SweepSpec det = base_spec();
    det.variable = SweepVariable::pump_detuning;
    det.grid = {-2.0 * rate, 0.0, 2.0 * rate};
    const std::vector<SweepRow> drows = run_sweep(det);
    for (std::size_t i = 0; i < drows.size(); ++i) {
        PumpParams pump{det.pump.rabi_G, det.grid[i]};
        const DispersionPoint direct =
            dispersion_point(0.0, pump, det.medium, det.quad);
        CHECK(same_point(drows[i].point, direct));
    }
}

TEST_CASE("per-point quadrature failures are recorded, not thrown") {
    SweepSpec spec = base_spec();
    spec.grid = {0.0, 1.0e6};
    spec.quad.rel_tolerance = 1e-300;
    spec.quad.max_subdivisions = 100;

    const std::vector<SweepRow> rows = run_sweep(spec);
    REQUIRE(rows.size() == 2);
    for (const SweepRow& row : rows) {
        CHECK_FALSE(row.ok());
        CHECK(row.error.find("did not converge") != std::string::npos);
    }
}

TEST_CASE("sweep specification is validated") {
    SweepSpec spec = base_spec();
    SUBCASE("empty grid") {
        CHECK_THROWS_AS(run_sweep(spec), InvalidParameterError);
    }
    SUBCASE("non-increasing grid") {
        spec.grid = {0.0, 0.0};
        CHECK_THROWS_AS(run_sweep(spec), InvalidParameterError);
    }
    SUBCASE("negative pump amplitude") {
        spec.variable = SweepVariable::pump_rabi;
        spec.grid = {-1.0, 1.0};
        CHECK_THROWS_AS(run_sweep(spec), InvalidParameterError);
    }
    SUBCASE("unknown output") {
        spec.grid = {0.0};
        spec.outputs = {"phase_index"};
        CHECK_THROWS_AS(run_sweep(spec), InvalidParameterError);
    }
}

TEST_CASE("pump optimization agrees with brute force") {
    const MediumParams m = medium();
    const QuadratureConfig quad;
    const double rate = 1.0 / m.T2;
    const double lo = 0.8 * rate;
    const double hi = 1.4 * rate;

    // Brute-force reference on a fixed grid: group index and transmission at
    // every candidate pump strength.
    const int npts = 101;
    const double step = (hi - lo) / (npts - 1);
    std::vector<double> gs(npts), ng(npts), tr(npts);
    for (int i = 0; i < npts; ++i) {
        gs[i] = lo + step * i;
        const DispersionPoint p = dispersion_point(0.0, {gs[i], 0.0}, m, quad);
        ng[i] = p.group_index;
        tr[i] = p.transmission;
    }
    // Transmission rises with pump strength across this interval (the pump
    // burns a deeper hole); the optimizer's feasibility logic relies on it.
    for (int i = 1; i < npts; ++i) CHECK(tr[i] > tr[i - 1]);

    auto brute_argmax = [&](double min_trans) {
        int best = -1;
        for (int i = 0; i < npts; ++i) {
            if (tr[i] >= min_trans && (best < 0 || ng[i] > ng[best])) best = i;
        }
        return best;
    };

    SUBCASE("unconstrained interior maximum") {
        const OptimizeResult r = optimize_pump(lo, hi, 0.0, m, quad);
        const int b = brute_argmax(0.0);
        REQUIRE(b >= 0);
        CHECK(std::abs(r.rabi_G - gs[b]) <= step);
        CHECK_FALSE(r.constraint_active);
        CHECK(r.group_index >= ng[b] - 1e-6 * std::abs(ng[b]));
        CHECK(r.transmission > 0.0);
        CHECK(r.evaluations > 0);
    }

    SUBCASE("binding transmission constraint") {
        // Demand slightly more transmission than G = 1.25 rate delivers, so
        // the feasibility boundary lands inside the interval, above the
        // unconstrained optimum.
        const DispersionPoint mid = dispersion_point(0.0, {1.25 * rate, 0.0}, m, quad);
        const double level = mid.transmission * (1.0 + 1e-4);
        const OptimizeResult r = optimize_pump(lo, hi, level, m, quad);
        const int b = brute_argmax(level);
        REQUIRE(b >= 0);
        CHECK(std::abs(r.rabi_G - gs[b]) <= step);
        CHECK(r.constraint_active);
        CHECK(r.transmission >= level);
    }

    SUBCASE("unreachable constraint") {
        try {
            (void)optimize_pump(lo, hi, 1.0, m, quad);
            FAIL("expected InfeasibleError");
        } catch (const InfeasibleError& e) {
            CHECK(e.best_constraint_value() > 0.0);
            CHECK(e.best_constraint_value() < 1.0);
        }
    }

    SUBCASE("degenerate interval") {
        const OptimizeResult r = optimize_pump(rate, rate, 0.0, m, quad);
        CHECK(r.rabi_G == rate);
        CHECK_FALSE(r.constraint_active);
        CHECK_THROWS_AS(optimize_pump(rate, rate, 1.0, m, quad), InfeasibleError);
    }

    SUBCASE("invalid bounds") {
        CHECK_THROWS_AS(optimize_pump(hi, lo, 0.0, m, quad), InvalidParameterError);
        CHECK_THROWS_AS(optimize_pump(lo, hi, 2.0, m, quad), InvalidParameterError);
    }
}
