#pragma once

#include "dhopf/hopf.hpp"
#include "dhopf/logistic.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace dhopf {

/// Lindstedt reduction output. P, Q0 and G are the coefficients of the solvability
/// condition -i P Omega2 + i w_c Q0 T + G = 0, scaled so that Q0 = 1 at symmetric thresholds.
struct LyapunovResult {
    double T_coeff = 0.0;  // criticality coefficient: tau - tau_c = eps^2 T
    double Omega2 = 0.0;   // frequency correction: Omega = w_c + eps^2 Omega2
    cplx q2;               // eigenvector second component with q1 = 1
    std::array<double, 2> W0{};
    std::array<cplx, 2> W2{};
    cplx P;
    cplx Q0;
    cplx G;
    double S1 = 0.0;
    double S2 = 0.0;
    bool supercritical = false;
};

struct AmplitudeLaw {
    double A1 = 0.0;
    double A2 = 0.0;
    double Omega = 0.0;
};

/// Closed form at theta_i = M_i / 2. Throws DomainError for asymmetric thresholds.
LyapunovResult symmetric_lyapunov(const TwoGeneParams& params, const Equilibrium& eq,
                                  const HopfPoint& hopf);

/// Full asymmetric reduction. The split is taken from params.tau1, params.tau2, which must
/// sum to hopf.tau_c (relative 1e-9).
LyapunovResult general_lyapunov(const TwoGeneParams& params, const Equilibrium& eq,
                                const HopfPoint& hopf, const TaylorCoefficients& taylor);

/// Convenience: equilibrium, branch-0 Hopf point and the split tau_c * split_fraction on link 1.
LyapunovResult lyapunov_at_onset(const TwoGeneParams& params, double split_fraction = 0.5);

/// Residual |-i P Omega2 + i w_c Q0 T + G| of the solvability condition.
double solvability_residual(const LyapunovResult& r, double omega_c) noexcept;

AmplitudeLaw amplitude_law(const LyapunovResult& result, const HopfPoint& hopf, double tau);

struct LogRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Sampling law for the criticality sweep: log-uniform rates and steepness,
/// thresholds uniform in (theta_lo M_i, theta_hi M_i).
struct CriticalityRegion {
    LogRange kappa{0.5, 10.0};
    LogRange gamma{0.05, 2.0};
    LogRange lambda{0.5, 10.0};
    double theta_lo = 0.05;
    double theta_hi = 0.95;
};

struct CriticalitySample {
    std::uint64_t index = 0;  // draw index; rejected draws consume indices too
    TwoGeneParams params;
    double AB = 0.0;
    double omega_c = 0.0;
    double tau_c = 0.0;
    double T_coeff = 0.0;
    double Omega2 = 0.0;
};

struct CriticalitySummary {
    std::uint64_t accepted = 0;
    std::uint64_t rejected_weak = 0;  // AB <= gamma1 gamma2
    std::uint64_t positive = 0;
    double min_T = 0.0;
    double max_T = 0.0;
    std::vector<CriticalitySample> samples;      // accepted, in draw order
    std::vector<CriticalitySample> nonpositive;  // T <= 0, full dumps
    std::vector<std::uint64_t> failed_indices;   // draws whose reduction threw

    [[nodiscard]] double fraction_positive() const noexcept {
        return accepted == 0 ? 0.0 : static_cast<double>(positive) / static_cast<double>(accepted);
    }
};

/// Draw i uses a generator seeded from (seed, i) only, so results do not depend on threads.
CriticalitySample draw_criticality_sample(const CriticalityRegion& region, std::uint64_t seed,
                                          std::uint64_t index);

/// Collects n_accepted strong-feedback samples. OpenMP over fixed-size draw blocks.
CriticalitySummary montecarlo_criticality(const CriticalityRegion& region,
                                          std::uint64_t n_accepted, std::uint64_t seed);
CriticalitySummary montecarlo_criticality_serial(const CriticalityRegion& region,
                                                 std::uint64_t n_accepted, std::uint64_t seed);

}  // namespace dhopf
