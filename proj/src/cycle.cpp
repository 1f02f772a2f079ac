#include "dhopf/cycle.hpp"

#include "dhopf/errors.hpp"
#include "detail/roots.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dhopf {

namespace {

// Refines an interior sampled extremum of x_comp on [a, b]; sign = +1 for max, -1 for min.
double refine_extremum(const Trajectory& traj, std::size_t comp, double a, double b, double sign) {
    const auto neg = [&](double t) { return -sign * traj.eval(t, comp); };
    const auto [t, v] = boost::math::tools::brent_find_minima(neg, a, b, 52);
    (void)t;
    return -sign * v;
}

}  // namespace

CycleStats measure_cycle(const Trajectory& traj, double t_lo, double t_hi,
                         const std::vector<double>& reference) {
    if (!(t_lo < t_hi) || t_lo < 0.0 || t_hi > traj.t_end()) {
        throw DomainError("measure_cycle: window [" + std::to_string(t_lo) + ", " +
                          std::to_string(t_hi) + "] outside the trajectory span");
    }
    if (reference.size() != traj.dim()) {
        throw DomainError("measure_cycle: reference has wrong dimension");
    }
    const std::size_t n = traj.dim();

    // Uniform sampling, at least as fine as the accepted mesh inside the window.
    const auto& mesh = traj.times();
    const auto first = std::lower_bound(mesh.begin(), mesh.end(), t_lo);
    const auto last = std::upper_bound(mesh.begin(), mesh.end(), t_hi);
    const auto mesh_points = static_cast<std::size_t>(std::max<std::ptrdiff_t>(last - first, 0));
    const std::size_t samples = std::max<std::size_t>(20000, 4 * mesh_points);
    const double dt = (t_hi - t_lo) / static_cast<double>(samples);
    const auto time_of = [&](std::size_t j) {
        return j == samples ? t_hi : t_lo + dt * static_cast<double>(j);
    };

    CycleStats out;
    out.amplitude.assign(n, 0.0);
    std::vector<double> values(samples + 1);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t j = 0; j <= samples; ++j) {
            values[j] = traj.eval(time_of(j), c);
        }
        const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
        const auto refine = [&](std::size_t j, double sign) {
            if (j == 0 || j == samples) {
                return values[j];
            }
            return std::max(sign * values[j],
                            sign * refine_extremum(traj, c, time_of(j - 1), time_of(j + 1), sign)) *
                   sign;
        };
        const double vmax = refine(static_cast<std::size_t>(hi_it - values.begin()), 1.0);
        const double vmin = refine(static_cast<std::size_t>(lo_it - values.begin()), -1.0);
        out.amplitude[c] = 0.5 * (vmax - vmin);

        if (c == 0) {
            std::vector<double> ups;
            for (std::size_t j = 0; j < samples; ++j) {
                const double a = values[j] - reference[0];
                const double b = values[j + 1] - reference[0];
                if (a < 0.0 && b >= 0.0) {
                    ups.push_back(detail::bisect(
                        [&](double t) { return traj.eval(t, 0) - reference[0]; }, time_of(j),
                        time_of(j + 1), 1e-15));
                }
            }
            out.crossings = static_cast<int>(ups.size());
            out.oscillating = out.amplitude[0] >= kOscillationThreshold;
            out.period = std::numeric_limits<double>::quiet_NaN();
            if (out.oscillating) {
                if (ups.size() < 2) {
                    throw NumericalError("measure_cycle: amplitude " +
                                         std::to_string(out.amplitude[0]) +
                                         " above threshold but fewer than 2 upward crossings");
                }
                out.period = (ups.back() - ups.front()) / static_cast<double>(ups.size() - 1);
            }
        }
    }
    return out;
}

std::vector<double> perturbed_history(const Equilibrium& eq, double offset) {
    return {eq.x1_star + offset, eq.x2_star - offset};
}

CycleStats simulate_cycle(const TwoGeneParams& params, const MeasureOptions& opt) {
    const Equilibrium eq = solve_equilibrium(params);
    const Trajectory traj = integrate(DelaySystem::two_gene(params),
                                      perturbed_history(eq, opt.offset), opt.t_end, opt.rtol,
                                      opt.atol);
    return measure_cycle(traj, opt.window_lo, opt.window_hi, {eq.x1_star, eq.x2_star});
}

RelaxationOffsets relaxation_offset(const TwoGeneParams& p) {
    const double M1 = p.M1();
    const double M2 = p.M2();
    if (!(p.theta1 > 0.0 && p.theta1 < M1 && p.theta2 > 0.0 && p.theta2 < M2)) {
        throw DomainError("relaxation_offset: thresholds must lie in (0, M_i)");
    }
    RelaxationOffsets r;
    r.delta_A = std::log(M2 / (M2 - p.theta2)) / p.gamma2;
    r.delta_B = std::log(M1 / p.theta1) / p.gamma1;
    r.delta_C = std::log(M2 / p.theta2) / p.gamma2;
    r.delta_D = std::log(M1 / (M1 - p.theta1)) / p.gamma1;
    r.C_inf = std::log(M1 * M1 / (p.theta1 * (M1 - p.theta1))) / p.gamma1 +
              std::log(M2 * M2 / (p.theta2 * (M2 - p.theta2))) / p.gamma2;
    return r;
}

}  // namespace dhopf
