#include "lambdip/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lambdip/constants.hpp"
#include "lambdip/errors.hpp"
#include "lambdip/parallel.hpp"

namespace lambdip {

void SweepSpec::validate() const {
    medium.validate();
    pump.validate();
    probe.validate();
    quad.validate();
    if (grid.empty()) {
        throw InvalidParameterError("sweep grid must be nonempty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || std::abs(grid[i]) > constants::max_rate_magnitude) {
            throw NumericRangeError("sweep grid value exceeds the supported magnitude of 1e18 rad/s");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InvalidParameterError("sweep grid must be strictly increasing");
        }
    }
    if (variable == SweepVariable::pump_rabi && grid.front() < 0.0) {
        throw InvalidParameterError("pump_rabi sweep values must be nonnegative");
    }
    for (const std::string& name : outputs) {
        if (name != "S" && name != "n_g" && name != "theta" && name != "transmission") {
            throw InvalidParameterError("unknown sweep output '" + name
                                        + "' (known: S, n_g, theta, transmission)");
        }
    }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();

    std::vector<SweepRow> rows(spec.grid.size());
    parallel_for_blocks(spec.grid.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double value = spec.grid[i];
            PumpParams pump = spec.pump;
            double delta = spec.probe.detuning_delta;
            switch (spec.variable) {
            case SweepVariable::probe_detuning:
                delta = value;
                break;
            case SweepVariable::pump_rabi:
                pump.rabi_G = value;
                break;
            case SweepVariable::pump_detuning:
                pump.detuning_Delta = value;
                break;
            }
            rows[i].value = value;
            try {
                rows[i].point = dispersion_point(delta, pump, spec.medium, spec.quad);
            } catch (const ConvergenceError& e) {
                // Record the failure in the row and keep sweeping; callers
                // decide whether a partial sweep is acceptable.
                rows[i].error = e.what();
                rows[i].point = DispersionPoint{};
                rows[i].point.detuning_delta = delta;
            }
        }
    });
    return rows;
}

namespace {

// Memoizing line-center evaluator for the optimizer: every candidate G costs
// two adaptive quadratures, so repeated probes of the same point are cached.
class LineCenterObjective {
public:
    LineCenterObjective(const MediumParams& medium, const QuadratureConfig& quad)
        : medium_(medium), quad_(quad) {}

    const DispersionPoint& at(double G) {
        auto it = cache_.find(G);
        if (it == cache_.end()) {
            PumpParams pump;
            pump.rabi_G = G;
            pump.detuning_Delta = 0.0;
            it = cache_.emplace(G, dispersion_point(0.0, pump, medium_, quad_)).first;
            ++evaluations_;
        }
        return it->second;
    }

    int evaluations() const { return evaluations_; }

private:
    MediumParams medium_;
    QuadratureConfig quad_;
    std::map<double, DispersionPoint> cache_;
    int evaluations_ = 0;
};

OptimizeResult make_result(double G, const DispersionPoint& p, bool active, int evals) {
    OptimizeResult r;
    r.rabi_G = G;
    r.group_index = p.group_index;
    r.group_delay_s = p.group_delay_s;
    r.attenuation_exponent = p.attenuation_exponent;
    r.transmission = p.transmission;
    r.constraint_active = active;
    r.evaluations = evals;
    return r;
}

} // namespace

OptimizeResult optimize_pump(double G_lo, double G_hi, double min_transmission,
                             const MediumParams& medium, const QuadratureConfig& quad) {
    medium.validate();
    quad.validate();
    if (!(G_lo >= 0.0) || !(G_hi >= G_lo)
        || !std::isfinite(G_lo) || !std::isfinite(G_hi)
        || G_hi > constants::max_rate_magnitude) {
        throw InvalidParameterError("pump bounds must satisfy 0 <= G_lo <= G_hi <= 1e18 rad/s");
    }
    if (!(min_transmission >= 0.0) || !(min_transmission <= 1.0)) {
        throw InvalidParameterError("min_transmission must lie in [0, 1]");
    }

    LineCenterObjective objective(medium, quad);
    const double tol_G = 1e-3 / medium.T2;

    if (G_lo == G_hi) {
        const DispersionPoint& p = objective.at(G_lo);
        if (p.transmission < min_transmission) {
            std::ostringstream msg;
            msg << "degenerate pump interval G=" << G_lo
                << " rad/s violates the transmission constraint: best transmission "
                << p.transmission << " < " << min_transmission;
            throw InfeasibleError(msg.str(), p.transmission);
        }
        return make_result(G_lo, p, false, objective.evaluations());
    }

    // Feasibility boundary.  Transmission is monotonically increasing in G
    // over the supported regime, so feasibility is decided at G_hi and the
    // boundary G* (if interior) is found by bisection.
    const double trans_hi = objective.at(G_hi).transmission;
    if (trans_hi < min_transmission) {
        std::ostringstream msg;
        msg << "no pump strength in [" << G_lo << ", " << G_hi
            << "] rad/s meets transmission >= " << min_transmission
            << ": best transmission found " << trans_hi;
        throw InfeasibleError(msg.str(), trans_hi);
    }
    double feasible_lo = G_lo;
    bool boundary_interior = false;
    if (objective.at(G_lo).transmission < min_transmission) {
        boundary_interior = true;
        double lo = G_lo;  // infeasible end
        double hi = G_hi;  // feasible end
        while (hi - lo > tol_G) {
            const double mid = 0.5 * (lo + hi);
            if (objective.at(mid).transmission >= min_transmission) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        feasible_lo = hi;
    }

    // Golden-section maximization of n_g over [feasible_lo, G_hi].
    const double inv_phi = 0.6180339887498949;
    double a = feasible_lo;
    double b = G_hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    while (b - a > tol_G) {
        if (objective.at(x1).group_index < objective.at(x2).group_index) {
            a = x1;
            x1 = x2;
            x2 = a + inv_phi * (b - a);
        } else {
            b = x2;
            x2 = x1;
            x1 = b - inv_phi * (b - a);
        }
    }

    // Best feasible evaluated point within the bracket (guards against any
    // residual non-unimodality at the tolerance scale).
    double best_G = feasible_lo;
    double best_ng = objective.at(feasible_lo).group_index;
    for (const double candidate : {a, x1, x2, b, G_hi}) {
        const DispersionPoint& p = objective.at(candidate);
        if (p.transmission >= min_transmission && p.group_index > best_ng) {
            best_G = candidate;
            best_ng = p.group_index;
        }
    }

    const bool active = boundary_interior && (best_G - feasible_lo) <= 2.0 * tol_G;
    return make_result(best_G, objective.at(best_G), active, objective.evaluations());
}

} // namespace lambdip
