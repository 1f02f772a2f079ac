#include "dhopf/hopf.hpp"

#include "dhopf/errors.hpp"
#include "detail/roots.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace dhopf {

using std::numbers::pi;

cplx char_eval(cplx mu, double tau, double A, double B, double gamma1, double gamma2) noexcept {
    return (mu + gamma1) * (mu + gamma2) + A * B * std::exp(-mu * tau);
}

std::optional<double> hopf_frequency(double A, double B, double gamma1, double gamma2) noexcept {
    const double AB = A * B;
    const double g12 = gamma1 * gamma2;
    if (!(AB > g12)) {
        return std::nullopt;
    }
    const double s = gamma1 * gamma1 + gamma2 * gamma2;
    const double d = gamma1 * gamma1 - gamma2 * gamma2;
    const double disc = std::sqrt(d * d + 4.0 * AB * AB);
    // p+ = (AB^2 - g12^2) / |p-|, free of cancellation near threshold.
    const double p_plus = 2.0 * (AB - g12) * (AB + g12) / (s + disc);
    return std::sqrt(p_plus);
}

namespace {

double principal_tau(double omega, double gamma1, double gamma2) {
    double phase = std::atan2(omega * (gamma1 + gamma2), omega * omega - gamma1 * gamma2);
    if (phase <= 0.0) {
        phase += 2.0 * pi;
    }
    return phase / omega;
}

}  // namespace

std::optional<std::vector<HopfPoint>> critical_delays(double A, double B, double gamma1,
                                                      double gamma2, int k_max) {
    if (k_max < 0) {
        throw DomainError("critical_delays: k_max must be non-negative");
    }
    const auto omega = hopf_frequency(A, B, gamma1, gamma2);
    if (!omega) {
        return std::nullopt;
    }
    const double w = *omega;
    const double tau0 = principal_tau(w, gamma1, gamma2);
    const double period = 2.0 * pi / w;
    std::vector<HopfPoint> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        out.push_back({w, tau0 + k * period, k, period});
    }
    return out;
}

std::optional<HopfPoint> hopf_point(const LoopLinearization& lin) {
    auto branches = critical_delays(lin.A, lin.B, lin.gamma1, lin.gamma2, 0);
    if (!branches) {
        return std::nullopt;
    }
    return branches->front();
}

Transversality transversality(double A, double B, double gamma1, double gamma2, int branch_k) {
    const auto branches = critical_delays(A, B, gamma1, gamma2, branch_k);
    if (!branches) {
        throw DomainError("transversality: requires strong feedback AB > gamma1 gamma2");
    }
    const HopfPoint& h = branches->back();
    const double w = h.omega_c;
    const double tau = h.tau_c;
    const double AB = A * B;
    const double gs = gamma1 + gamma2;
    const double g12 = gamma1 * gamma2;

    const double den_re = gs - tau * (w * w - g12);
    const double den_im = 2.0 * w + tau * w * gs;
    const double den = den_re * den_re + den_im * den_im;
    const double num = w * w * (2.0 * w * w + gamma1 * gamma1 + gamma2 * gamma2);

    Transversality t;
    t.re = num / den;
    t.im = -w * (gs * (w * w + g12) + tau * AB * AB) / den;
    const double bound_re = gs + tau * AB;
    t.lower_bound = num / (bound_re * bound_re + den_im * den_im);
    return t;
}

HopfEigenvector hopf_eigenvector(double B, double gamma1, double omega_c, double tau2) noexcept {
    HopfEigenvector q;
    q.q1 = -B * std::exp(cplx(0.0, -omega_c * tau2)) / cplx(gamma1, omega_c);
    q.q1_amp_sq = B * B / (omega_c * omega_c + gamma1 * gamma1);
    return q;
}

StabilityClass classify_stability(const TwoGeneParams& params) {
    const Equilibrium eq = solve_equilibrium(params);
    const auto omega = hopf_frequency(eq.A, eq.B, params.gamma1, params.gamma2);
    if (!omega) {
        return {StabilityKind::AbsolutelyStable, 0};
    }
    const double tau = params.tau();
    const double tau0 = principal_tau(*omega, params.gamma1, params.gamma2);
    if (tau < tau0) {
        return {StabilityKind::StableBelowOnset, 0};
    }
    // One additional pair per branch tau_c^(k) <= tau.
    const int pairs = 1 + static_cast<int>(std::floor((tau - tau0) * *omega / (2.0 * pi)));
    return {StabilityKind::Unstable, pairs};
}

GainCalibration solve_gain_for_delay(double gamma1, double gamma2, double tau_target) {
    if (!(tau_target > 0.0) || !(gamma1 > 0.0) || !(gamma2 > 0.0)) {
        throw DomainError("solve_gain_for_delay: rates and target delay must be positive");
    }
    const double g12 = gamma1 * gamma2;
    const double lo = g12 * (1.0 + 1e-9);
    const double hi = 1e6;
    // tau_c(AB) with A = AB, B = 1: only the product enters.
    const auto tau_of = [&](double gain) { return principal_tau(*hopf_frequency(gain, 1.0, gamma1, gamma2), gamma1, gamma2); };
    const double tau_lo = tau_of(lo);
    const double tau_hi = tau_of(hi);
    if (!(tau_lo > tau_target && tau_target > tau_hi)) {
        char msg[200];
        std::snprintf(msg, sizeof msg,
                      "solve_gain_for_delay: target delay %.6g outside bracket (%.6g, %.6g) "
                      "reachable with AB in [%.6g, 1e6]",
                      tau_target, tau_hi, tau_lo, lo);
        throw DomainError(msg);
    }
    // tau_c decreases in AB; bisect in log AB.
    const double log_gain = detail::bisect(
        [&](double lg) { return tau_of(std::exp(lg)) - tau_target; }, std::log(lo), std::log(hi),
        1e-16);
    GainCalibration out;
    out.loop_gain = std::exp(log_gain);
    out.hopf = *hopf_point({out.loop_gain, 1.0, gamma1, gamma2});
    return out;
}

double linear_period_slope(const HopfPoint& hopf, const Transversality& trans) noexcept {
    return -hopf.T_c / hopf.omega_c * trans.im;
}

NormalFormC1 extract_c1(const HopfPoint& hopf, const Transversality& trans,
                        const HopfEigenvector& q, double amp_prefactor_sq, double period_slope) {
    if (!(amp_prefactor_sq > 0.0)) {
        throw DomainError("extract_c1: amplitude prefactor c^2 must be positive");
    }
    NormalFormC1 c;
    c.re_c1 = -4.0 * q.q1_amp_sq * trans.re / amp_prefactor_sq;
    // dT/dtau = -(T_c / w_c) [Im mu' - ratio Re mu']
    c.ratio = (period_slope * hopf.omega_c / hopf.T_c + trans.im) / trans.re;
    c.im_c1 = c.ratio * c.re_c1;
    return c;
}

}  // namespace dhopf
