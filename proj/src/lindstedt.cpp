#include "dhopf/lindstedt.hpp"

#include "dhopf/errors.hpp"

#include <cmath>
#include <string>

namespace dhopf {

namespace {

constexpr cplx kI{0.0, 1.0};

void linear_sums(double omega, double gamma1, double gamma2, LyapunovResult& r) {
    const double w2 = omega * omega;
    r.S1 = 1.0 / (w2 + gamma1 * gamma1) + 1.0 / (w2 + gamma2 * gamma2);
    r.S2 = gamma1 / (w2 + gamma1 * gamma1) + gamma2 / (w2 + gamma2 * gamma2);
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

void solve_solvability(LyapunovResult& r, double omega) {
    // Re and Im of -i P Omega2 + i w Q0 T + G = 0.
    const double det = omega * (r.P.imag() * r.Q0.real() - r.Q0.imag() * r.P.real());
    if (std::abs(det) < 1e-12) {
        throw NumericalError("lindstedt: singular solvability system, det = " + std::to_string(det));
    }
    r.Omega2 = -omega * (r.G.real() * r.Q0.real() + r.G.imag() * r.Q0.imag()) / det;
    r.T_coeff = -(r.P.imag() * r.G.imag() + r.P.real() * r.G.real()) / det;
    r.supercritical = r.T_coeff > 0.0;
}

}  // namespace

LyapunovResult symmetric_lyapunov(const TwoGeneParams& params, const Equilibrium& eq,
                                  const HopfPoint& hopf) {
    if (!near(params.theta1, 0.5 * params.M1()) || !near(params.theta2, 0.5 * params.M2())) {
        throw DomainError("symmetric_lyapunov: thresholds are not at M_i/2; use general_lyapunov");
    }
    const double w = hopf.omega_c;
    const double lam2 = params.lambda * params.lambda;
    LyapunovResult r;
    linear_sums(w, params.gamma1, params.gamma2, r);
    r.q2 = eq.A * std::exp(-kI * (w * params.tau1)) / cplx(params.gamma2, w);
    const double q2sq = (w * w + params.gamma1 * params.gamma1) / (eq.B * eq.B);
    r.Q0 = 1.0;
    r.P = cplx(-(r.S2 + hopf.tau_c), w * r.S1);
    r.G = lam2 * (1.0 + q2sq) / 4.0;
    r.Omega2 = -lam2 * (1.0 + q2sq) / (4.0 * w * r.S1);
    r.T_coeff = lam2 * (1.0 + q2sq) * (r.S2 + hopf.tau_c) / (4.0 * w * w * r.S1);
    r.supercritical = r.T_coeff > 0.0;
    return r;
}

LyapunovResult general_lyapunov(const TwoGeneParams& params, const Equilibrium& eq,
                                const HopfPoint& hopf, const TaylorCoefficients& t) {
    if (!near(params.tau(), hopf.tau_c)) {
        throw DomainError("general_lyapunov: tau1 + tau2 = " + std::to_string(params.tau()) +
                          " must equal tau_c = " + std::to_string(hopf.tau_c));
    }
    const double w = hopf.omega_c;
    const double g1 = params.gamma1;
    const double g2 = params.gamma2;
    const double A = eq.A;
    const double B = eq.B;
    const double tau_c = hopf.tau_c;
    const cplx e1 = std::exp(-kI * (w * params.tau1));
    const cplx e2 = std::exp(-kI * (w * params.tau2));

    LyapunovResult r;
    linear_sums(w, g1, g2, r);
    r.q2 = A * e1 / cplx(g2, w);
    const double q2sq = std::norm(r.q2);

    // Zero-frequency harmonic: -(L0 + L1 + L2) W0 = F0 with L = [[-g1, -B], [A, -g2]].
    {
        const double f1 = 2.0 * t.b1 * q2sq;
        const double f2 = 2.0 * t.b2;
        const double det = g1 * g2 + A * B;  // det of -(L0+L1+L2) = [[g1, B], [-A, g2]]
        r.W0 = {(g2 * f1 - B * f2) / det, (g1 * f2 + A * f1) / det};
    }
    // Second harmonic: Delta(2iw) W2 = F2.
    {
        const cplx a11 = cplx(g1, 2.0 * w);
        const cplx a12 = B * e2 * e2;
        const cplx a21 = -A * e1 * e1;
        const cplx a22 = cplx(g2, 2.0 * w);
        const cplx f1 = t.b1 * r.q2 * r.q2 * e2 * e2;
        const cplx f2 = t.b2 * e1 * e1;
        const cplx det = a11 * a22 - a12 * a21;
        r.W2 = {(a22 * f1 - a12 * f2) / det, (a11 * f2 - a21 * f1) / det};
    }

    const cplx varpi = A * e1 / cplx(g1, w);
    const cplx zeta = r.q2 * e2;
    const cplx Ae1 = A * e1;
    const cplx P = (varpi + r.q2) - B * zeta * varpi * params.tau2 + Ae1 * params.tau1;
    const cplx Q0 = (B * zeta * varpi * params.tau2 - Ae1 * params.tau1) / tau_c;
    const cplx G_cub = 3.0 * (varpi * t.d1 * q2sq * zeta + t.d2 * e1);
    const cplx G_quad = 2.0 * varpi * t.b1 * e2 * (r.q2 * r.W0[1] + std::conj(r.q2) * r.W2[1]) +
                        2.0 * t.b2 * e1 * (r.W0[0] + r.W2[0]);

    // Rescale the left null vector so that Q0 = 1.
    const cplx scale = -Ae1;
    r.P = P / scale;
    r.Q0 = Q0 / scale;
    r.G = (G_cub + G_quad) / scale;
    solve_solvability(r, w);
    return r;
}

LyapunovResult lyapunov_at_onset(const TwoGeneParams& params, double split_fraction) {
    if (!(split_fraction >= 0.0 && split_fraction <= 1.0)) {
        throw DomainError("lyapunov_at_onset: split fraction must lie in [0, 1]");
    }
    const Equilibrium eq = solve_equilibrium(params);
    const auto hopf = hopf_point(LoopLinearization::from(params, eq));
    if (!hopf) {
        throw DomainError("lyapunov_at_onset: weak feedback, no Hopf point");
    }
    const TwoGeneParams split =
        params.with_delays(split_fraction * hopf->tau_c, (1.0 - split_fraction) * hopf->tau_c);
    return general_lyapunov(split, eq, *hopf, taylor_coefficients(split, eq));
}

double solvability_residual(const LyapunovResult& r, double omega_c) noexcept {
    return std::abs(-kI * r.P * r.Omega2 + kI * omega_c * r.Q0 * r.T_coeff + r.G);
}

AmplitudeLaw amplitude_law(const LyapunovResult& result, const HopfPoint& hopf, double tau) {
    if (!(tau > hopf.tau_c)) {
        throw DomainError("amplitude_law: tau must exceed tau_c");
    }
    if (!(result.T_coeff > 0.0)) {
        throw DomainError("amplitude_law: subcritical or degenerate case, T = " +
                          std::to_string(result.T_coeff));
    }
    const double eps2 = (tau - hopf.tau_c) / result.T_coeff;
    AmplitudeLaw a;
    a.A1 = 2.0 * std::sqrt(eps2);
    a.A2 = std::abs(result.q2) * a.A1;
    a.Omega = hopf.omega_c + result.Omega2 * eps2;
    return a;
}

}  // namespace dhopf
