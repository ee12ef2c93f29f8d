#include "lambdip/doppler.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <sstream>
#include <vector>

#include "lambdip/constants.hpp"
#include "lambdip/errors.hpp"
#include "lambdip/kernels.hpp"
#include "lambdip/parallel.hpp"

namespace lambdip {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
// xgk holds the positive abscissae (xgk[7] = 0 is the center); the 7 Gauss
// points are the odd-indexed entries, weighted by wg.
constexpr double xgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double wgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double wg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

// 16-point Gauss-Legendre rule (positive abscissae and weights).
constexpr double gl16_x[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double gl16_w[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

struct Panel {
    double a;
    double b;
    std::complex<double> value;
    double error; // |K15 - G7| in the L1 complex norm, times the half-width
};

struct PanelWorse {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        return lhs.error < rhs.error;
    }
};

// All norms in the convergence logic are L1 (|re| + |im|): the L1 norm of a
// value scaled by a power of two scales exactly, which keeps the refinement
// sequence, and hence the result, bitwise linear in the prefactor C.
double l1_norm(const std::complex<double>& z) {
    return std::abs(z.real()) + std::abs(z.imag());
}

struct Integrand {
    kernels::BatchFn batch;
    double Delta;
    double delta;
    double G;
    double T1;
    double T2;
    double C;
    double inv_two_D2;  // 1 / (2 D^2)
    double gauss_norm;  // 1 / sqrt(2 pi D^2)
};

// Gauss-Kronrod evaluation of one panel of the velocity integral.
Panel evaluate_panel(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double kv[15];
    for (int j = 0; j < 7; ++j) {
        kv[2 * j] = center - half * xgk[j];
        kv[2 * j + 1] = center + half * xgk[j];
    }
    kv[14] = center;

    double re[15];
    double im[15];
    f.batch(kv, 15, f.Delta, f.delta, f.G, f.T1, f.T2, f.C, re, im);

    double weight[15];
    for (int j = 0; j < 15; ++j) {
        weight[j] = f.gauss_norm * std::exp(-kv[j] * kv[j] * f.inv_two_D2);
    }

    std::complex<double> k15(0.0, 0.0);
    std::complex<double> g7(0.0, 0.0);
    for (int j = 0; j < 7; ++j) {
        const std::complex<double> pair(weight[2 * j] * re[2 * j] + weight[2 * j + 1] * re[2 * j + 1],
                                        weight[2 * j] * im[2 * j] + weight[2 * j + 1] * im[2 * j + 1]);
        k15 += wgk[j] * pair;
        if (j % 2 == 1) { // odd Kronrod index = embedded Gauss point
            g7 += wg[(j - 1) / 2] * pair;
        }
    }
    const std::complex<double> center_term(weight[14] * re[14], weight[14] * im[14]);
    k15 += wgk[7] * center_term;
    g7 += wg[3] * center_term;

    Panel p;
    p.a = a;
    p.b = b;
    p.value = half * k15;
    p.error = half * l1_norm(k15 - g7);
    return p;
}

// Initial panel boundaries: the integration window split at every kv where a
// velocity-shifted resonance factor of chi vanishes, each locus flanked by
// guard points a few homogeneous linewidths away so the first refinement
// already isolates the narrow structure.
std::vector<double> initial_knots(double W, double Delta, double delta, double T2) {
    const double guard = 50.0 / T2;
    const double loci[4] = {
        -Delta,               // pump resonance:   Delta + kv = 0
        Delta + delta,        // probe resonance:  (Delta + kv) + (delta - 2kv) = 0
        (delta - Delta) / 3.0, // crossover factor: (delta - 2kv) - (Delta + kv) = 0
        delta / 2.0           // pump-probe beat:  delta - 2kv = 0
    };

    std::vector<double> knots;
    knots.reserve(16);
    knots.push_back(-W);
    knots.push_back(W);
    for (const double locus : loci) {
        for (const double x : {locus - guard, locus, locus + guard}) {
            if (x > -W && x < W) {
                knots.push_back(x);
            }
        }
    }
    std::sort(knots.begin(), knots.end());
    std::vector<double> unique;
    unique.reserve(knots.size());
    for (const double x : knots) {
        if (unique.empty() || x - unique.back() > 1e-12 * W) {
            unique.push_back(x);
        }
    }
    return unique;
}

QuadratureResult integrate_adaptive(const char* label, kernels::BatchFn batch,
                                    double detuning_delta, const PumpParams& pump,
                                    const MediumParams& medium,
                                    const QuadratureConfig& quad) {
    quad.validate();
    medium.validate();
    pump.validate();
    if (!std::isfinite(detuning_delta)
        || std::abs(detuning_delta) > constants::max_rate_magnitude) {
        throw NumericRangeError("detuning_delta exceeds the supported magnitude of 1e18 rad/s");
    }

    const double D = doppler_width(medium);
    const double W = quad.integration_halfwidth * D;

    Integrand f;
    f.batch = batch;
    f.Delta = pump.detuning_Delta;
    f.delta = detuning_delta;
    f.G = pump.rabi_G;
    f.T1 = medium.T1;
    f.T2 = medium.T2;
    f.C = medium.prefactor_C;
    f.inv_two_D2 = 1.0 / (2.0 * D * D);
    f.gauss_norm = 1.0 / std::sqrt(2.0 * constants::pi * D * D);

    const std::vector<double> knots =
        initial_knots(W, pump.detuning_Delta, detuning_delta, medium.T2);

    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    std::complex<double> total(0.0, 0.0);
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        Panel p = evaluate_panel(f, knots[i], knots[i + 1]);
        total += p.value;
        total_error += p.error;
        heap.push(p);
    }

    while (total_error > quad.rel_tolerance * l1_norm(total)) {
        if (static_cast<int>(heap.size()) >= quad.max_subdivisions) {
            const double norm = l1_norm(total);
            const double achieved = norm > 0.0 ? total_error / norm : total_error;
            std::ostringstream msg;
            msg << label << " did not converge at detuning_delta=" << detuning_delta
                << " rad/s: achieved relative error " << achieved << " after "
                << heap.size() << " panels (cap " << quad.max_subdivisions << ")";
            throw ConvergenceError(msg.str(), achieved);
        }
        const Panel worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_error -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        for (const Panel& child : {evaluate_panel(f, worst.a, mid),
                                   evaluate_panel(f, mid, worst.b)}) {
            total += child.value;
            total_error += child.error;
            heap.push(child);
        }
    }

    QuadratureResult result;
    result.value = total;
    result.abs_error = total_error;
    result.panels = static_cast<int>(heap.size());
    return result;
}

} // namespace

void QuadratureConfig::validate() const {
    if (!(integration_halfwidth >= 4.0) || !std::isfinite(integration_halfwidth)) {
        throw InvalidParameterError("integration_halfwidth must be >= 4 Doppler widths");
    }
    if (!(rel_tolerance > 0.0) || !(rel_tolerance <= 1e-2)) {
        throw InvalidParameterError("rel_tolerance must lie in (0, 1e-2]");
    }
    if (max_subdivisions < 100) {
        throw InvalidParameterError("max_subdivisions must be at least 100");
    }
}

std::complex<double> average_S(double detuning_delta, const PumpParams& pump,
                               const MediumParams& medium, const QuadratureConfig& quad) {
    return average_S_detailed(detuning_delta, pump, medium, quad).value;
}

QuadratureResult average_S_detailed(double detuning_delta, const PumpParams& pump,
                                    const MediumParams& medium, const QuadratureConfig& quad) {
    return integrate_adaptive("average_S", kernels::active_kernel().chi_batch,
                              detuning_delta, pump, medium, quad);
}

std::complex<double> average_dS_domega(double detuning_delta, const PumpParams& pump,
                                       const MediumParams& medium,
                                       const QuadratureConfig& quad) {
    return average_dS_domega_detailed(detuning_delta, pump, medium, quad).value;
}

QuadratureResult average_dS_domega_detailed(double detuning_delta, const PumpParams& pump,
                                            const MediumParams& medium,
                                            const QuadratureConfig& quad) {
    return integrate_adaptive("average_dS_domega", kernels::active_kernel().dchi_batch,
                              detuning_delta, pump, medium, quad);
}

std::complex<double> average_S_fixed_grid(double detuning_delta, const PumpParams& pump,
                                          const MediumParams& medium,
                                          const QuadratureConfig& quad, int panels) {
    quad.validate();
    medium.validate();
    pump.validate();
    if (panels < 1 || panels > 1000000) {
        throw InvalidParameterError("fixed-grid panel count must lie in [1, 1e6]");
    }
    if (!std::isfinite(detuning_delta)
        || std::abs(detuning_delta) > constants::max_rate_magnitude) {
        throw NumericRangeError("detuning_delta exceeds the supported magnitude of 1e18 rad/s");
    }

    const double D = doppler_width(medium);
    const double W = quad.integration_halfwidth * D;
    const double width = 2.0 * W / panels;
    const double inv_two_D2 = 1.0 / (2.0 * D * D);
    const double gauss_norm = 1.0 / std::sqrt(2.0 * constants::pi * D * D);
    const kernels::BatchFn batch = kernels::active_kernel().chi_batch;

    std::vector<std::complex<double>> panel_sum(panels);
    parallel_for_blocks(static_cast<std::size_t>(panels), [&](std::size_t begin, std::size_t end) {
        double kv[16];
        double re[16];
        double im[16];
        for (std::size_t p = begin; p < end; ++p) {
            const double a = -W + width * static_cast<double>(p);
            const double center = a + 0.5 * width;
            const double half = 0.5 * width;
            for (int j = 0; j < 8; ++j) {
                kv[2 * j] = center - half * gl16_x[j];
                kv[2 * j + 1] = center + half * gl16_x[j];
            }
            batch(kv, 16, pump.detuning_Delta, detuning_delta, pump.rabi_G,
                  medium.T1, medium.T2, medium.prefactor_C, re, im);
            std::complex<double> acc(0.0, 0.0);
            for (int j = 0; j < 8; ++j) {
                const double w0 = gauss_norm * std::exp(-kv[2 * j] * kv[2 * j] * inv_two_D2);
                const double w1 = gauss_norm * std::exp(-kv[2 * j + 1] * kv[2 * j + 1] * inv_two_D2);
                acc += gl16_w[j] * std::complex<double>(w0 * re[2 * j] + w1 * re[2 * j + 1],
                                                        w0 * im[2 * j] + w1 * im[2 * j + 1]);
            }
            panel_sum[p] = half * acc;
        }
    });

    // Reduce in panel order so the total is independent of the thread count.
    std::complex<double> total(0.0, 0.0);
    for (const std::complex<double>& v : panel_sum) {
        total += v;
    }
    return total;
}

ComplexSpectrum spectrum_scan(const std::vector<double>& delta_grid, const PumpParams& pump,
                              const MediumParams& medium, const QuadratureConfig& quad) {
    if (delta_grid.empty()) {
        throw InvalidParameterError("spectrum_scan requires a nonempty detuning grid");
    }
    ComplexSpectrum out;
    out.delta_grid = delta_grid;
    out.S.resize(delta_grid.size());
    out.medium = medium;
    out.pump = pump;
    out.quad = quad;

    // Workers surface ConvergenceError through parallel_for_blocks; the
    // engine message already names the offending detuning.
    parallel_for_blocks(delta_grid.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            out.S[i] = average_S(delta_grid[i], pump, medium, quad);
        }
    });
    return out;
}

} // namespace lambdip
