#pragma once

#include <optional>

namespace dhopf {

/// Constants of the delayed two-gene loop
///   x1' = kappa1 f-(x2(t - tau2); theta2) - gamma1 x1
///   x2' = kappa2 f+(x1(t - tau1); theta1) - gamma2 x2
/// Defaults are the canonical parameter set.
struct TwoGeneParams {
    double kappa1 = 3.0;
    double kappa2 = 4.0;
    double gamma1 = 0.25;
    double gamma2 = 0.5;
    double theta1 = 4.0;
    double theta2 = 3.0;
    double lambda = 3.0;
    double tau1 = 0.0;
    double tau2 = 0.0;

    [[nodiscard]] double M1() const noexcept { return kappa1 / gamma1; }
    [[nodiscard]] double M2() const noexcept { return kappa2 / gamma2; }
    [[nodiscard]] double tau() const noexcept { return tau1 + tau2; }

    /// Throws DomainError unless rates and steepness are positive and delays non-negative.
    void validate() const;

    [[nodiscard]] TwoGeneParams with_lambda(double lam) const;
    [[nodiscard]] TwoGeneParams with_delays(double t1, double t2) const;
    /// Total delay split evenly between the two links.
    [[nodiscard]] TwoGeneParams with_total_delay(double tau) const;
    /// Same rates with theta_i = M_i / 2.
    [[nodiscard]] TwoGeneParams symmetrized() const;
};

struct Equilibrium {
    double x1_star = 0.0;
    double x2_star = 0.0;
    double fplus_star = 0.0;   // f+(x1*, theta1)
    double fminus_star = 0.0;  // f-(x2*, theta2)
    double A = 0.0;            // kappa2 lambda f+*(1 - f+*)
    double B = 0.0;            // kappa1 lambda f-*(1 - f-*)

    [[nodiscard]] double loop_gain() const noexcept { return A * B; }
};

/// Quadratic (b) and cubic (d) coefficients of the nonlinearity at the equilibrium,
/// in the deviation variables u_i = x_i - x_i*.
struct TaylorCoefficients {
    double b1 = 0.0;
    double b2 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

struct SteepnessAsymptotics {
    double c0 = 0.0;     // lim AB / lambda^2 as lambda -> 0
    double c_inf = 0.0;  // lim AB / lambda^2 as lambda -> infinity
    double xi1 = 0.0;    // lim lambda (x1* - theta1)
    double xi2 = 0.0;    // lim lambda (x2* - theta2)
};

struct CriticalSteepness {
    double lambda_c = 0.0;
    double lower_bound = 0.0;    // 4 sqrt(gamma1 gamma2 / (kappa1 kappa2))
    double residual = 0.0;       // AB(lambda_c) - gamma1 gamma2
    bool monotone_sampled = true;  // AB increasing on the sampled bracket grid
};

struct HillParams {
    double n1 = 0.0;  // exponent on the x1 -> x2 activation (lambda theta1)
    double n2 = 0.0;  // exponent on the x2 -| x1 repression (lambda theta2)
};

struct HillCounterpart {
    HillParams hill;
    double x1_star = 0.0;
    double x2_star = 0.0;
    double A = 0.0;
    double B = 0.0;

    [[nodiscard]] double loop_gain() const noexcept { return A * B; }
};

double f_plus(double x, double theta, double lambda) noexcept;
double f_minus(double x, double theta, double lambda) noexcept;

/// d^order/dx^order f_plus for order in {1, 2, 3}; DomainError otherwise.
double logistic_derivative(double x, double theta, double lambda, int order);

Equilibrium solve_equilibrium(const TwoGeneParams& params);

TaylorCoefficients taylor_coefficients(const TwoGeneParams& params, const Equilibrium& eq);

/// Loop gain AB after re-solving the equilibrium at steepness `lambda`.
double gain_of_lambda(const TwoGeneParams& base, double lambda);

/// Smallest lambda with AB(lambda) = gamma1 gamma2. NumericalError if no bracket
/// is found or the sampled AB(lambda) is not monotone below the root.
CriticalSteepness critical_steepness(const TwoGeneParams& base);

SteepnessAsymptotics steepness_asymptotics(const TwoGeneParams& params);

/// H+(x) = x^n / (theta^n + x^n), for x >= 0.
double hill_plus(double x, double theta, double n) noexcept;
/// dH+/dx for x > 0.
double hill_plus_derivative(double x, double theta, double n) noexcept;

/// Slope-matched Hill loop (n_i = lambda theta_i) with its equilibrium and link gains.
HillCounterpart hill_counterpart(const TwoGeneParams& params);

}  // namespace dhopf
