#pragma once

#include "dhopf/dde.hpp"
#include "dhopf/logistic.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace dhopf {

struct CycleStats {
    std::vector<double> amplitude;  // (max - min) / 2 per component over the window
    double period = 0.0;            // NaN unless oscillating
    int crossings = 0;              // upward crossings of x_0 - reference_0
    bool oscillating = false;       // amplitude[0] >= kOscillationThreshold
};

inline constexpr double kOscillationThreshold = 1e-3;

/// Integration and measurement settings. Defaults are the amplitude-sweep protocol.
struct MeasureOptions {
    double t_end = 400.0;
    double window_lo = 300.0;
    double window_hi = 400.0;
    double rtol = 1e-9;
    double atol = 1e-12;
    double offset = 0.05;  // history (x1* + offset, x2* - offset)

    static MeasureOptions sweep() { return {}; }
    static MeasureOptions onset() { return {600.0, 400.0, 600.0, 1e-10, 1e-12, 0.05}; }
};

CycleStats measure_cycle(const Trajectory& traj, double t_lo, double t_hi,
                         const std::vector<double>& reference);

/// One integration of the two-gene loop at its own (tau1, tau2), measured per the options.
CycleStats simulate_cycle(const TwoGeneParams& params, const MeasureOptions& opt = {});

/// Constant perturbed history around the equilibrium.
std::vector<double> perturbed_history(const Equilibrium& eq, double offset);

struct SweepRow {
    double tau = 0.0;
    CycleStats stats;
};

struct BifurcationSweep {
    double tau_c = 0.0;
    std::vector<SweepRow> rows;  // grid order
    double prefactor = 0.0;      // mean A / sqrt(tau - tau_c) over the three points nearest onset
};

/// Each grid point uses the even split tau/2, tau/2. Points run concurrently.
BifurcationSweep sweep_bifurcation(const TwoGeneParams& params, const std::vector<double>& tau_grid,
                                   const MeasureOptions& opt = {});
BifurcationSweep sweep_bifurcation_serial(const TwoGeneParams& params,
                                          const std::vector<double>& tau_grid,
                                          const MeasureOptions& opt = {});

/// Measures every (tau1, tau2) split; each pair must sum to tau_total.
std::vector<CycleStats> verify_sum_symmetry(const TwoGeneParams& params, double tau_total,
                                            const std::vector<std::pair<double, double>>& splits,
                                            const MeasureOptions& opt = {});

struct OnsetRow {
    double tau = 0.0;
    double period = 0.0;
    double slope = 0.0;  // (T - T_c) / (tau - tau_c)
};

struct OnsetSlope {
    double tau_c = 0.0;
    double T_c = 0.0;
    std::vector<OnsetRow> rows;
    double extrapolated = 0.0;  // slope at tau -> tau_c+
};

OnsetSlope onset_period_slope(const TwoGeneParams& params, const std::vector<double>& tau_grid,
                              const MeasureOptions& opt = MeasureOptions::onset());
OnsetSlope onset_period_slope_serial(const TwoGeneParams& params,
                                     const std::vector<double>& tau_grid,
                                     const MeasureOptions& opt = MeasureOptions::onset());

struct RelaxationOffsets {
    double C_inf = 0.0;
    double delta_A = 0.0;
    double delta_B = 0.0;
    double delta_C = 0.0;
    double delta_D = 0.0;
};

RelaxationOffsets relaxation_offset(const TwoGeneParams& params);

/// Integrates at total delay tau (even split) and returns the measured T - 2 tau.
double relaxation_period_offset(const TwoGeneParams& params, double tau);

/// Least-squares slope through the origin of A^2 against (tau - tau_c) over the supercritical
/// rows with tau - tau_c <= max_excess. Returns empty if fewer than two rows qualify.
std::optional<double> amplitude_square_slope(const BifurcationSweep& sweep, double max_excess);

}  // namespace dhopf
