#include "dhopf/logistic.hpp"

#include "dhopf/errors.hpp"
#include "detail/roots.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace dhopf {

void TwoGeneParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError(std::string(name) + " must be positive and finite");
        }
    };
    positive(kappa1, "kappa1");
    positive(kappa2, "kappa2");
    positive(gamma1, "gamma1");
    positive(gamma2, "gamma2");
    positive(lambda, "lambda");
    if (!(tau1 >= 0.0) || !(tau2 >= 0.0)) {
        throw DomainError("delays must be non-negative");
    }
    if (!std::isfinite(theta1) || !std::isfinite(theta2)) {
        throw DomainError("thresholds must be finite");
    }
}

TwoGeneParams TwoGeneParams::with_lambda(double lam) const {
    TwoGeneParams p = *this;
    p.lambda = lam;
    return p;
}

TwoGeneParams TwoGeneParams::with_delays(double t1, double t2) const {
    TwoGeneParams p = *this;
    p.tau1 = t1;
    p.tau2 = t2;
    return p;
}

TwoGeneParams TwoGeneParams::with_total_delay(double tau) const {
    return with_delays(0.5 * tau, 0.5 * tau);
}

TwoGeneParams TwoGeneParams::symmetrized() const {
    TwoGeneParams p = *this;
    p.theta1 = 0.5 * M1();
    p.theta2 = 0.5 * M2();
    return p;
}

double f_plus(double x, double theta, double lambda) noexcept {
    const double z = lambda * (x - theta);
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double f_minus(double x, double theta, double lambda) noexcept {
    return 1.0 - f_plus(x, theta, lambda);
}

double logistic_derivative(double x, double theta, double lambda, int order) {
    const double f = f_plus(x, theta, lambda);
    const double s = f * (1.0 - f);
    switch (order) {
        case 1:
            return lambda * s;
        case 2:
            return lambda * lambda * s * (1.0 - 2.0 * f);
        case 3:
            return lambda * lambda * lambda * s * (1.0 - 6.0 * s);
        default:
            throw DomainError("logistic_derivative: order must be 1, 2 or 3, got " +
                              std::to_string(order));
    }
}

namespace {

// g(x1) = kappa1 f-(M2 f+(x1)) - gamma1 x1, strictly decreasing on (0, M1).
struct EquilibriumMap {
    const TwoGeneParams& p;

    [[nodiscard]] double operator()(double x1) const {
        const double x2 = p.M2() * f_plus(x1, p.theta1, p.lambda);
        return p.kappa1 * f_minus(x2, p.theta2, p.lambda) - p.gamma1 * x1;
    }

    [[nodiscard]] double derivative(double x1) const {
        const double fp = f_plus(x1, p.theta1, p.lambda);
        const double x2 = p.M2() * fp;
        const double fm = f_minus(x2, p.theta2, p.lambda);
        return -p.gamma1 -
               p.kappa1 * p.M2() * p.lambda * p.lambda * fm * (1.0 - fm) * fp * (1.0 - fp);
    }
};

Equilibrium fill_equilibrium(const TwoGeneParams& p, double x1) {
    Equilibrium eq;
    eq.x1_star = x1;
    eq.fplus_star = f_plus(x1, p.theta1, p.lambda);
    eq.x2_star = p.M2() * eq.fplus_star;
    eq.fminus_star = f_minus(eq.x2_star, p.theta2, p.lambda);
    eq.A = p.kappa2 * p.lambda * eq.fplus_star * (1.0 - eq.fplus_star);
    eq.B = p.kappa1 * p.lambda * eq.fminus_star * (1.0 - eq.fminus_star);
    return eq;
}

}  // namespace

Equilibrium solve_equilibrium(const TwoGeneParams& params) {
    params.validate();
    const EquilibriumMap g{params};

    // g(0) > 0 > g(M1): bracket by bisection to 1e-6 width, then Newton polish.
    double lo = 0.0;
    double hi = params.M1();
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    const double scale = params.kappa1;
    for (int it = 0; it < 50; ++it) {
        const double r = g(x);
        if (std::abs(r) <= 1e-13 * scale) {
            break;
        }
        (r > 0.0 ? lo : hi) = x;
        double next = x - r / g.derivative(x);
        if (!(next >= lo && next <= hi)) {
            next = 0.5 * (lo + hi);  // stay inside the bracket
        }
        if (next == x) {
            break;
        }
        x = next;
    }
    return fill_equilibrium(params, x);
}

TaylorCoefficients taylor_coefficients(const TwoGeneParams& params, const Equilibrium& eq) {
    const double lam = params.lambda;
    const double fm = eq.fminus_star;
    const double fp = eq.fplus_star;
    TaylorCoefficients t;
    t.b1 = 0.5 * eq.B * lam * (1.0 - 2.0 * fm);
    t.b2 = 0.5 * eq.A * lam * (1.0 - 2.0 * fp);
    t.d1 = -eq.B * lam * lam * (1.0 - 6.0 * fm * (1.0 - fm)) / 6.0;
    t.d2 = eq.A * lam * lam * (1.0 - 6.0 * fp * (1.0 - fp)) / 6.0;
    return t;
}

double gain_of_lambda(const TwoGeneParams& base, double lambda) {
    if (!(lambda > 0.0)) {
        throw DomainError("gain_of_lambda: lambda must be positive");
    }
    return solve_equilibrium(base.with_lambda(lambda)).loop_gain();
}

CriticalSteepness critical_steepness(const TwoGeneParams& base) {
    const double target = base.gamma1 * base.gamma2;
    CriticalSteepness out;
    out.lower_bound = 4.0 * std::sqrt(target / (base.kappa1 * base.kappa2));

    // AB(lambda) <= kappa1 kappa2 lambda^2 / 16, so no root lies below the bound.
    double hi = out.lower_bound;
    int doublings = 0;
    while (gain_of_lambda(base, hi) <= target) {
        hi *= 2.0;
        if (++doublings > 60) {
            throw NumericalError("critical_steepness: AB(lambda) never exceeds gamma1 gamma2 "
                                 "up to lambda = " + std::to_string(hi));
        }
    }

    // Sample the bracket to catch non-monotone gain before bisecting.
    constexpr int kSamples = 64;
    const double lo = out.lower_bound;
    std::vector<double> grid(kSamples + 1);
    std::vector<double> gain(kSamples + 1);
    for (int i = 0; i <= kSamples; ++i) {
        grid[i] = lo + (hi - lo) * i / kSamples;
        gain[i] = gain_of_lambda(base, grid[i]);
        if (i > 0 && gain[i] <= gain[i - 1]) {
            out.monotone_sampled = false;
        }
    }
    int cell = 0;
    while (cell < kSamples && gain[cell + 1] <= target) {
        ++cell;
    }
    const auto h = [&](double lam) { return gain_of_lambda(base, lam) - target; };
    out.lambda_c = detail::bisect(h, grid[cell], grid[cell + 1], 1e-15);
    out.residual = h(out.lambda_c);
    return out;
}

SteepnessAsymptotics steepness_asymptotics(const TwoGeneParams& p) {
    const double M1 = p.M1();
    const double M2 = p.M2();
    if (!(p.theta1 > 0.0 && p.theta1 < M1 && p.theta2 > 0.0 && p.theta2 < M2)) {
        throw DomainError("steepness_asymptotics: thresholds must lie in (0, M_i)");
    }
    SteepnessAsymptotics s;
    s.c0 = p.kappa1 * p.kappa2 / 16.0;
    const double g12 = p.gamma1 * p.gamma2;
    s.c_inf = g12 * g12 * p.theta1 * (M1 - p.theta1) * p.theta2 * (M2 - p.theta2) /
              (p.kappa1 * p.kappa2);
    s.xi1 = std::log(p.theta2 / (M2 - p.theta2));
    s.xi2 = std::log((M1 - p.theta1) / p.theta1);
    return s;
}

double hill_plus(double x, double theta, double n) noexcept {
    if (x <= 0.0) {
        return 0.0;
    }
    return 1.0 / (1.0 + std::exp(n * std::log(theta / x)));
}

double hill_plus_derivative(double x, double theta, double n) noexcept {
    const double h = hill_plus(x, theta, n);
    return n / x * h * (1.0 - h);
}

HillCounterpart hill_counterpart(const TwoGeneParams& p) {
    p.validate();
    if (!(p.theta1 > 0.0 && p.theta2 > 0.0)) {
        throw DomainError("hill_counterpart: thresholds must be positive");
    }
    HillCounterpart out;
    out.hill = {p.lambda * p.theta1, p.lambda * p.theta2};
    const auto g = [&](double x1) {
        const double x2 = p.M2() * hill_plus(x1, p.theta1, out.hill.n1);
        return p.kappa1 * (1.0 - hill_plus(x2, p.theta2, out.hill.n2)) - p.gamma1 * x1;
    };
    // g(0+) = kappa1 > 0 and g(M1) < 0; midpoints are strictly positive.
    double lo = 0.0;
    double hi = p.M1();
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    out.x1_star = 0.5 * (lo + hi);
    out.x2_star = p.M2() * hill_plus(out.x1_star, p.theta1, out.hill.n1);
    if (!(out.x2_star > 0.0)) {
        throw NumericalError("hill_counterpart: Hill equilibrium collapsed to x2 = 0");
    }
    out.A = p.kappa2 * hill_plus_derivative(out.x1_star, p.theta1, out.hill.n1);
    out.B = p.kappa1 * hill_plus_derivative(out.x2_star, p.theta2, out.hill.n2);
    return out;
}

}  // namespace dhopf
