#include "dhopf/cycle.hpp"

#include "dhopf/errors.hpp"
#include "dhopf/hopf.hpp"
#include "detail/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dhopf {

namespace {

HopfPoint require_hopf(const TwoGeneParams& params, const char* who) {
    const Equilibrium eq = solve_equilibrium(params);
    const auto hopf = hopf_point(LoopLinearization::from(params, eq));
    if (!hopf) {
        throw DomainError(std::string(who) + ": weak feedback, no Hopf point");
    }
    return *hopf;
}

BifurcationSweep run_sweep(const TwoGeneParams& params, const std::vector<double>& grid,
                           const MeasureOptions& opt, bool parallel) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw DomainError("sweep_bifurcation: tau grid must be strictly ascending");
        }
    }
    BifurcationSweep out;
    out.tau_c = require_hopf(params, "sweep_bifurcation").tau_c;
    out.rows = detail::map_indices<SweepRow>(
        grid.size(),
        [&](std::size_t i) {
            return SweepRow{grid[i], simulate_cycle(params.with_total_delay(grid[i]), opt)};
        },
        parallel);

    double sum = 0.0;
    int used = 0;
    for (const SweepRow& r : out.rows) {
        if (used == 3) {
            break;
        }
        if (r.tau > out.tau_c && r.stats.oscillating) {
            sum += r.stats.amplitude[0] / std::sqrt(r.tau - out.tau_c);
            ++used;
        }
    }
    out.prefactor = used ? sum / used : 0.0;
    return out;
}

OnsetSlope run_onset(const TwoGeneParams& params, const std::vector<double>& grid,
                     const MeasureOptions& opt, bool parallel) {
    const HopfPoint hopf = require_hopf(params, "onset_period_slope");
    OnsetSlope out;
    out.tau_c = hopf.tau_c;
    out.T_c = hopf.T_c;
    for (double tau : grid) {
        if (!(tau > hopf.tau_c)) {
            throw DomainError("onset_period_slope: grid point " + std::to_string(tau) +
                              " is not above tau_c");
        }
    }
    out.rows = detail::map_indices<OnsetRow>(
        grid.size(),
        [&](std::size_t i) {
            const CycleStats s = simulate_cycle(params.with_total_delay(grid[i]), opt);
            if (!s.oscillating) {
                throw NumericalError("onset_period_slope: no oscillation at tau = " +
                                     std::to_string(grid[i]));
            }
            return OnsetRow{grid[i], s.period, (s.period - hopf.T_c) / (grid[i] - hopf.tau_c)};
        },
        parallel);

    // Least-squares line through the slopes of the (up to) three rows nearest onset,
    // evaluated at tau = tau_c.
    std::vector<OnsetRow> near = out.rows;
    std::sort(near.begin(), near.end(),
              [](const OnsetRow& a, const OnsetRow& b) { return a.tau < b.tau; });
    near.resize(std::min<std::size_t>(3, near.size()));
    if (near.size() == 1) {
        out.extrapolated = near.front().slope;
    } else if (!near.empty()) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const OnsetRow& r : near) {
            const double x = r.tau - hopf.tau_c;
            sx += x;
            sy += r.slope;
            sxx += x * x;
            sxy += x * r.slope;
        }
        const double m = static_cast<double>(near.size());
        const double b = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        out.extrapolated = (sy - b * sx) / m;
    }
    return out;
}

}  // namespace

BifurcationSweep sweep_bifurcation(const TwoGeneParams& params, const std::vector<double>& tau_grid,
                                   const MeasureOptions& opt) {
    return run_sweep(params, tau_grid, opt, true);
}

BifurcationSweep sweep_bifurcation_serial(const TwoGeneParams& params,
                                          const std::vector<double>& tau_grid,
                                          const MeasureOptions& opt) {
    return run_sweep(params, tau_grid, opt, false);
}

std::vector<CycleStats> verify_sum_symmetry(const TwoGeneParams& params, double tau_total,
                                            const std::vector<std::pair<double, double>>& splits,
                                            const MeasureOptions& opt) {
    for (const auto& [t1, t2] : splits) {
        if (std::abs(t1 + t2 - tau_total) > 1e-12 * std::max(1.0, tau_total)) {
            throw DomainError("verify_sum_symmetry: split (" + std::to_string(t1) + ", " +
                              std::to_string(t2) + ") does not sum to " +
                              std::to_string(tau_total));
        }
    }
    return detail::map_indices<CycleStats>(
        splits.size(),
        [&](std::size_t i) {
            return simulate_cycle(params.with_delays(splits[i].first, splits[i].second), opt);
        },
        true);
}

OnsetSlope onset_period_slope(const TwoGeneParams& params, const std::vector<double>& tau_grid,
                              const MeasureOptions& opt) {
    return run_onset(params, tau_grid, opt, true);
}

OnsetSlope onset_period_slope_serial(const TwoGeneParams& params,
                                     const std::vector<double>& tau_grid,
                                     const MeasureOptions& opt) {
    return run_onset(params, tau_grid, opt, false);
}

double relaxation_period_offset(const TwoGeneParams& params, double tau) {
    const RelaxationOffsets r = relaxation_offset(params);
    // Window of at least ten approximate periods after a transient of the same length.
    const double T_guess = 2.0 * tau + r.C_inf;
    MeasureOptions opt;
    opt.window_lo = 10.0 * T_guess;
    opt.window_hi = 20.0 * T_guess;
    opt.t_end = opt.window_hi;
    const CycleStats s = simulate_cycle(params.with_total_delay(tau), opt);
    if (!s.oscillating) {
        throw NumericalError("relaxation_period_offset: no oscillation at tau = " +
                             std::to_string(tau));
    }
    return s.period - 2.0 * tau;
}

std::optional<double> amplitude_square_slope(const BifurcationSweep& sweep, double max_excess) {
    double sxx = 0.0;
    double sxy = 0.0;
    int used = 0;
    for (const SweepRow& r : sweep.rows) {
        const double x = r.tau - sweep.tau_c;
        if (x > 0.0 && x <= max_excess && r.stats.oscillating) {
            const double a = r.stats.amplitude[0];
            sxx += x * x;
            sxy += x * a * a;
            ++used;
        }
    }
    if (used < 2) {
        return std::nullopt;
    }
    return sxy / sxx;
}

}  // namespace dhopf
