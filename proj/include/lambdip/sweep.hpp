#pragma once

// Parameter sweeps over the dispersion quantities, and the constrained
// one-dimensional pump optimization.

#include <string>
#include <vector>

#include "lambdip/dispersion.hpp"
#include "lambdip/params.hpp"

namespace lambdip {

enum class SweepVariable {
    probe_detuning, // grid values replace probe.detuning_delta
    pump_rabi,      // grid values replace pump.rabi_G
    pump_detuning   // grid values replace pump.detuning_Delta
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::probe_detuning;
    std::vector<double> grid; // strictly increasing values of the swept variable
    MediumParams medium;
    PumpParams pump;   // fixed values for the parameters not swept
    ProbeParams probe;
    QuadratureConfig quad;
    // Requested output quantities; validated against the known set
    // {"S", "n_g", "theta", "transmission"}.  Every row always carries the
    // full DispersionPoint; this field only gates what emitters must include.
    std::vector<std::string> outputs{"S", "n_g", "theta", "transmission"};

    void validate() const;
};

// One sweep row: the swept value, the dispersion result, and an error string
// recording a per-point quadrature failure (empty when the point converged;
// the sweep continues past failed points).
struct SweepRow {
    double value = 0.0;
    DispersionPoint point;
    std::string error;

    bool ok() const { return error.empty(); }
};

// Runs the sweep, parallelized over grid points.  Splitting a grid into two
// consecutive sweeps and concatenating the rows reproduces the single-sweep
// result exactly.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

struct OptimizeResult {
    double rabi_G = 0.0;            // optimal pump Rabi rate [rad/s]
    double group_index = 0.0;       // n_g at the optimum (probe at line center)
    double group_delay_s = 0.0;
    double attenuation_exponent = 0.0;
    double transmission = 0.0;
    bool constraint_active = false; // optimum sits on the transmission boundary
    int evaluations = 0;            // dispersion evaluations spent
};

// Maximizes the line-center group index n_g(delta = 0, Delta = 0) over pump
// strength G in [G_lo, G_hi], subject to transmission >= min_transmission.
// Transmission grows monotonically with pump strength here (the pump burns a
// deeper hole), so the feasible set is an upper subinterval [G*, G_hi]; G* is
// located by bisection and the maximum by golden-section search, both refined
// to dG <= 1e-3 / T2.  Throws InfeasibleError (carrying the best transmission
// found) when no pump strength in range meets the constraint; a degenerate
// interval G_lo == G_hi returns that point if feasible.
OptimizeResult optimize_pump(double G_lo, double G_hi, double min_transmission,
                             const MediumParams& medium, const QuadratureConfig& quad);

} // namespace lambdip
