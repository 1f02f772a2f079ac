#pragma once

#include "dhopf/logistic.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace dhopf {

using cplx = std::complex<double>;

/// Linear-loop data the closed forms need: link gains and degradation rates.
struct LoopLinearization {
    double A = 0.0;
    double B = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;

    static LoopLinearization from(const TwoGeneParams& p, const Equilibrium& eq) noexcept {
        return {eq.A, eq.B, p.gamma1, p.gamma2};
    }
    [[nodiscard]] double loop_gain() const noexcept { return A * B; }
    [[nodiscard]] bool strong_feedback() const noexcept { return A * B > gamma1 * gamma2; }
};

struct HopfPoint {
    double omega_c = 0.0;
    double tau_c = 0.0;  // critical delay of branch `branch_k`
    int branch_k = 0;
    double T_c = 0.0;    // 2 pi / omega_c
};

struct Transversality {
    double re = 0.0;           // Re dmu/dtau at the crossing
    double im = 0.0;           // Im dmu/dtau at the crossing
    double lower_bound = 0.0;  // parameter-uniform bound on re
};

struct HopfEigenvector {
    cplx q1;  // with q2 = 1
    double q1_amp_sq = 0.0;
};

struct NormalFormC1 {
    double re_c1 = 0.0;
    double im_c1 = 0.0;
    double ratio = 0.0;  // im_c1 / re_c1
};

enum class StabilityKind { AbsolutelyStable, StableBelowOnset, Unstable };

struct StabilityClass {
    StabilityKind kind = StabilityKind::AbsolutelyStable;
    int crossed_pairs = 0;  // pairs of roots in the right half-plane
};

struct GainCalibration {
    double loop_gain = 0.0;
    HopfPoint hopf;
};

/// (mu + gamma1)(mu + gamma2) + AB e^{-mu tau}.
cplx char_eval(cplx mu, double tau, double A, double B, double gamma1, double gamma2) noexcept;

/// Hopf frequency; empty when AB <= gamma1 gamma2 (no imaginary-axis root for any delay).
std::optional<double> hopf_frequency(double A, double B, double gamma1, double gamma2) noexcept;

/// Branches k = 0..k_max of the critical delay; empty under weak feedback.
std::optional<std::vector<HopfPoint>> critical_delays(double A, double B, double gamma1,
                                                      double gamma2, int k_max);

/// Branch-0 Hopf point, or empty under weak feedback.
std::optional<HopfPoint> hopf_point(const LoopLinearization& lin);

Transversality transversality(double A, double B, double gamma1, double gamma2, int branch_k = 0);

HopfEigenvector hopf_eigenvector(double B, double gamma1, double omega_c, double tau2) noexcept;

/// Linear stability of the equilibrium at the total delay params.tau().
StabilityClass classify_stability(const TwoGeneParams& params);

/// Loop gain AB > gamma1 gamma2 whose smallest critical delay equals tau_target.
GainCalibration solve_gain_for_delay(double gamma1, double gamma2, double tau_target);

/// Period slope dT/dtau at onset predicted by the linear spectrum alone.
double linear_period_slope(const HopfPoint& hopf, const Transversality& trans) noexcept;

/// First Lyapunov coefficient from the measured x1 amplitude prefactor c^2
/// (A1^2 ~ c^2 (tau - tau_c)) and the measured onset period slope dT/dtau.
NormalFormC1 extract_c1(const HopfPoint& hopf, const Transversality& trans,
                        const HopfEigenvector& q, double amp_prefactor_sq, double period_slope);

}  // namespace dhopf
