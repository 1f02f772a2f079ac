#include "dhopf/cyclic.hpp"

#include "dhopf/errors.hpp"
#include "detail/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace dhopf {

using std::numbers::pi;

double CyclicLoopParams::total_delay() const noexcept {
    return std::accumulate(tau.begin(), tau.end(), 0.0);
}

void CyclicLoopParams::validate() const {
    const std::size_t n = kappa.size();
    if (n < 2) {
        throw DomainError("cyclic loop needs N >= 2 genes");
    }
    if (gamma.size() != n || theta.size() != n || tau.size() != n || eps.size() != n) {
        throw DomainError("cyclic loop: kappa, gamma, theta, tau, eps must all have length N");
    }
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(kappa[i] > 0.0) || !(gamma[i] > 0.0)) {
            throw DomainError("cyclic loop: rates must be positive (gene " + std::to_string(i) + ")");
        }
        if (!(tau[i] >= 0.0)) {
            throw DomainError("cyclic loop: delays must be non-negative");
        }
        if (eps[i] != 1 && eps[i] != -1) {
            throw DomainError("cyclic loop: eps entries must be +1 or -1");
        }
        sign *= eps[i];
    }
    if (sign != -1) {
        throw DomainError("cyclic loop: product of link signs must be -1 (negative feedback)");
    }
    if (!(lambda > 0.0)) {
        throw DomainError("cyclic loop: lambda must be positive");
    }
}

CyclicLoopParams CyclicLoopParams::from_two_gene(const TwoGeneParams& p) {
    CyclicLoopParams c;
    c.kappa = {p.kappa1, p.kappa2};
    c.gamma = {p.gamma1, p.gamma2};
    c.theta = {p.theta2, p.theta1};
    c.tau = {p.tau2, p.tau1};
    c.eps = {-1, 1};
    c.lambda = p.lambda;
    return c;
}

CyclicLoopParams CyclicLoopParams::uniform(int N, double kappa, double gamma, double theta,
                                           double lambda, double total_delay) {
    CyclicLoopParams c;
    const auto n = static_cast<std::size_t>(std::max(N, 0));
    c.kappa.assign(n, kappa);
    c.gamma.assign(n, gamma);
    c.theta.assign(n, theta);
    c.tau.assign(n, n ? total_delay / static_cast<double>(n) : 0.0);
    c.eps.assign(n, 1);
    if (n) {
        c.eps[0] = -1;
    }
    c.lambda = lambda;
    return c;
}

double f_signed(double x, double theta, double lambda, int eps) noexcept {
    return eps > 0 ? f_plus(x, theta, lambda) : f_minus(x, theta, lambda);
}

namespace {

// One pass around the cycle from x_0; returns x_0' and fills x.
double around(const CyclicLoopParams& c, double x0, std::vector<double>& x) {
    const int n = c.N();
    x[0] = x0;
    for (int i = 1; i < n; ++i) {
        x[i] = c.M(i) * f_signed(x[i - 1], c.theta[i], c.lambda, c.eps[i]);
    }
    return c.M(0) * f_signed(x[n - 1], c.theta[0], c.lambda, c.eps[0]);
}

// d x_0' / d x_0 by the chain rule along the cycle.
double around_slope(const CyclicLoopParams& c, const std::vector<double>& x) {
    const int n = c.N();
    double slope = 1.0;
    for (int i = 0; i < n; ++i) {
        const double upstream = x[(i + n - 1) % n];
        const double f = f_signed(upstream, c.theta[i], c.lambda, c.eps[i]);
        slope *= c.eps[i] * c.M(i) * c.lambda * f * (1.0 - f);
    }
    return slope;
}

}  // namespace

CyclicEquilibrium ngene_equilibrium(const CyclicLoopParams& loop) {
    loop.validate();
    const int n = loop.N();
    std::vector<double> x(n);
    const auto h = [&](double x0) { return around(loop, x0, x) - x0; };

    // The composed map is decreasing, so h(0) > 0 > h(M_0).
    double lo = 0.0;
    double hi = loop.M(0);
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) > 0.0 ? lo : hi) = mid;
    }
    double x0 = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double r = h(x0);
        if (std::abs(r) <= 1e-14 * loop.M(0)) {
            break;
        }
        (r > 0.0 ? lo : hi) = x0;
        double next = x0 - r / (around_slope(loop, x) - 1.0);
        if (!(next >= lo && next <= hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == x0) {
            break;
        }
        x0 = next;
    }
    h(x0);

    CyclicEquilibrium eq;
    eq.x_star = x;
    eq.f_star.resize(n);
    eq.gains.resize(n);
    eq.loop_gain = 1.0;
    for (int i = 0; i < n; ++i) {
        const double f = f_signed(x[(i + n - 1) % n], loop.theta[i], loop.lambda, loop.eps[i]);
        eq.f_star[i] = f;
        eq.gains[i] = loop.kappa[i] * loop.lambda * f * (1.0 - f);
        eq.loop_gain *= eq.gains[i];
        eq.max_residual = std::max(
            eq.max_residual, std::abs(loop.gamma[i] * x[i] - loop.kappa[i] * f) / loop.kappa[i]);
    }
    return eq;
}

cplx ngene_char_eval(cplx mu, const std::vector<double>& gamma, double loop_gain, double tau) {
    cplx prod = 1.0;
    for (double g : gamma) {
        prod *= mu + g;
    }
    return prod + loop_gain * std::exp(-mu * tau);
}

std::optional<CyclicHopf> ngene_hopf(const std::vector<double>& gamma, double loop_gain) {
    const int n = static_cast<int>(gamma.size());
    if (n < 2) {
        throw DomainError("ngene_hopf: N >= 2 required");
    }
    double log_prod_gamma = 0.0;
    for (double g : gamma) {
        log_prod_gamma += std::log(g);
    }
    if (!(std::log(loop_gain) > log_prod_gamma)) {
        return std::nullopt;
    }
    const auto [gmin, gmax] = std::minmax_element(gamma.begin(), gamma.end());
    const double root = std::pow(loop_gain, 2.0 / n);
    double lo = std::max(0.0, root - *gmax * *gmax);
    double hi = root - *gmin * *gmin;

    CyclicHopf h;
    const auto F = [&](double s) {
        double acc = -2.0 * std::log(loop_gain);
        for (double g : gamma) {
            acc += std::log(s + g * g);
        }
        return acc;
    };
    double s;
    if (hi - lo <= 1e-15 * hi) {
        s = 0.5 * (lo + hi);  // equal rates: the bracket is a point
    } else {
        s = detail::bisect(F, lo, hi, 1e-16);
    }
    h.omega_c = std::sqrt(s);
    h.T_c = 2.0 * pi / h.omega_c;

    double phase = 0.0;
    for (double g : gamma) {
        phase += std::atan(h.omega_c / g);
    }
    for (h.k_star = 1; h.k_star <= 64; ++h.k_star) {
        if ((2 * h.k_star - 1) * pi - phase > 0.0) {
            break;
        }
    }
    if (h.k_star > 64) {
        throw NumericalError("ngene_hopf: no positive critical delay for k <= 64");
    }
    h.tau_c = ((2 * h.k_star - 1) * pi - phase) / h.omega_c;

    for (double g : gamma) {
        const double d = h.omega_c * h.omega_c + g * g;
        h.S1 += 1.0 / d;
        h.S2 += g / d;
    }
    const Transversality t = ngene_transversality(h, 0);
    h.trans_re = t.re;
    h.trans_im = t.im;

    if (*gmax == *gmin) {
        h.window = symmetric_window(*gmin, n);
    }
    return h;
}

std::optional<CyclicHopf> ngene_hopf(const CyclicLoopParams& loop) {
    return ngene_hopf(loop.gamma, ngene_equilibrium(loop).loop_gain);
}

Transversality ngene_transversality(const CyclicHopf& hopf, int branch_k) {
    if (branch_k < 0) {
        throw DomainError("ngene_transversality: branch index must be non-negative");
    }
    const double tau = hopf.tau_c + 2.0 * pi * branch_k / hopf.omega_c;
    const double v = (hopf.S2 + tau) / hopf.omega_c;
    const double den = hopf.S1 * hopf.S1 + v * v;
    Transversality t;
    t.re = hopf.S1 / den;
    t.im = -v / den;
    t.lower_bound = std::numeric_limits<double>::quiet_NaN();
    return t;
}

double ngene_transversality_identity_check(const std::vector<double>& gamma, double loop_gain,
                                           const CyclicHopf& hopf) {
    const cplx mu(0.0, hopf.omega_c);
    const double tau = hopf.tau_c;
    cplx prod = 1.0;
    cplx dprod = 0.0;  // d/dmu prod(mu + gamma_i)
    for (double g : gamma) {
        dprod = dprod * (mu + g) + prod;
        prod *= mu + g;
    }
    const cplx e = loop_gain * std::exp(-mu * tau);
    const cplx d_mu = dprod - tau * e;
    const cplx d_tau = -mu * e;
    const cplx dmu_dtau = -d_tau / d_mu;
    const cplx expected(hopf.S1, (hopf.S2 + tau) / hopf.omega_c);
    return std::abs(1.0 / dmu_dtau - expected) / std::abs(expected);
}

std::pair<double, double> symmetric_window(double gamma, int N) {
    if (!(gamma > 0.0) || N < 2) {
        throw DomainError("symmetric_window: gamma > 0 and N >= 2 required");
    }
    const double lower = std::pow(gamma, N);
    if (N == 2) {
        return {lower, std::numeric_limits<double>::infinity()};
    }
    return {lower, lower / std::pow(std::cos(pi / N), N)};
}

NoDelayStability no_delay_stability(const std::vector<double>& gamma, double loop_gain) {
    const int n = static_cast<int>(gamma.size());
    if (n < 1) {
        throw DomainError("no_delay_stability: empty rate list");
    }
    NoDelayStability out;
    const bool uniform =
        std::all_of(gamma.begin(), gamma.end(), [&](double g) { return g == gamma.front(); });
    if (uniform) {
        // (mu + gamma)^N = -Lambda
        const double r = std::pow(loop_gain, 1.0 / n);
        for (int k = 0; k < n; ++k) {
            out.roots.push_back(-gamma.front() + std::polar(r, pi * (2 * k + 1) / n));
        }
    } else {
        // Monic coefficients of prod(mu + gamma_i), lowest degree first.
        std::vector<double> c{1.0};
        for (double g : gamma) {
            std::vector<double> next(c.size() + 1, 0.0);
            for (std::size_t j = 0; j < c.size(); ++j) {
                next[j] += g * c[j];
                next[j + 1] += c[j];
            }
            c = std::move(next);
        }
        c[0] += loop_gain;
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i) {
            companion(i, i - 1) = 1.0;
        }
        for (int i = 0; i < n; ++i) {
            companion(i, n - 1) = -c[i];
        }
        const Eigen::VectorXcd ev = companion.eigenvalues();
        for (int i = 0; i < n; ++i) {
            out.roots.push_back(ev[i]);
        }
    }
    out.spectral_abscissa = -std::numeric_limits<double>::infinity();
    for (const cplx& z : out.roots) {
        out.spectral_abscissa = std::max(out.spectral_abscissa, z.real());
    }
    out.stable = out.spectral_abscissa < 0.0;
    return out;
}

NoDelayStability no_delay_stability(const CyclicLoopParams& loop) {
    return no_delay_stability(loop.gamma, ngene_equilibrium(loop).loop_gain);
}

}  // namespace dhopf
