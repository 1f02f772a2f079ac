#include "dhopf/spectrum.hpp"

#include "dhopf/cyclic.hpp"
#include "dhopf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dhopf {

cplx QuasiPolynomial::value(cplx mu, double tau) const {
    return ngene_char_eval(mu, gamma, loop_gain, tau);
}

cplx QuasiPolynomial::derivative(cplx mu, double tau) const {
    cplx prod = 1.0;
    cplx dprod = 0.0;
    for (double g : gamma) {
        dprod = dprod * (mu + g) + prod;
        prod *= mu + g;
    }
    return dprod - loop_gain * tau * std::exp(-mu * tau);
}

NewtonResult newton_root(const QuasiPolynomial& q, cplx mu0, double tau) {
    NewtonResult r;
    r.root = mu0;
    for (r.iterations = 0; r.iterations <= 50; ++r.iterations) {
        const cplx f = q.value(r.root, tau);
        r.residual = std::abs(f);
        if (r.residual < 1e-12) {
            return r;
        }
        if (r.iterations == 50) {
            break;
        }
        r.root -= f / q.derivative(r.root, tau);
        if (!std::isfinite(r.root.real()) || !std::isfinite(r.root.imag())) {
            break;
        }
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "newton_root: no convergence at tau = " << tau << ", last iterate " << r.root
        << ", residual " << r.residual;
    throw NumericalError(msg.str());
}

cplx leading_delay_free_root(const QuasiPolynomial& q) {
    const NoDelayStability s = no_delay_stability(q.gamma, q.loop_gain);
    cplx best(-std::numeric_limits<double>::infinity(), 0.0);
    for (const cplx& z : s.roots) {
        if (z.imag() > 0.0 && z.real() > best.real()) {
            best = z;
        }
    }
    if (!std::isfinite(best.real())) {
        throw DomainError("leading_delay_free_root: no complex root in the upper half-plane");
    }
    return best;
}

std::vector<double> tau_range(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw DomainError("tau_range: need hi >= lo and step > 0");
    }
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        out.push_back(lo + step * static_cast<double>(i));
    }
    return out;
}

namespace {

// Newton from a known root at tau_from to tau_to, halving the continuation step on failure.
NewtonResult advance(const QuasiPolynomial& q, cplx mu, double tau_from, double tau_to, int& iters) {
    for (int halvings = 0; halvings <= 8; ++halvings) {
        const int pieces = 1 << halvings;
        const double dt = (tau_to - tau_from) / pieces;
        cplx z = mu;
        try {
            NewtonResult r;
            for (int p = 1; p <= pieces; ++p) {
                r = newton_root(q, z, tau_from + dt * p);
                iters += r.iterations;
                z = r.root;
            }
            return r;
        } catch (const NumericalError&) {
            if (halvings == 8) {
                throw;
            }
        }
    }
    throw NumericalError("advance: unreachable");
}

}  // namespace

RootPath continue_root(const QuasiPolynomial& q, const std::vector<double>& grid) {
    if (grid.empty()) {
        throw DomainError("continue_root: empty tau grid");
    }
    RootPath path;
    cplx mu = leading_delay_free_root(q);
    double tau_prev = 0.0;
    for (double tau : grid) {
        if (tau < tau_prev) {
            throw DomainError("continue_root: tau grid must be ascending from 0");
        }
        try {
            const NewtonResult r = advance(q, mu, tau_prev, tau, path.newton_iterations);
            mu = r.root;
            path.tau.push_back(tau);
            path.mu.push_back(mu);
            path.residual.push_back(r.residual);
        } catch (const NumericalError& e) {
            path.truncated = true;
            path.diagnostic = e.what();
            break;
        }
        tau_prev = tau;
    }

    for (std::size_t i = 1; i < path.mu.size(); ++i) {
        const double a = path.mu[i - 1].real();
        const double b = path.mu[i].real();
        if ((a < 0.0) == (b < 0.0)) {
            continue;
        }
        double lo = path.tau[i - 1];
        double hi = path.tau[i];
        cplx z = path.mu[i - 1];
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            const cplx zm = newton_root(q, z, mid).root;
            if ((zm.real() < 0.0) == (a < 0.0)) {
                lo = mid;
                z = zm;
            } else {
                hi = mid;
            }
        }
        const double tc = 0.5 * (lo + hi);
        path.crossings.push_back({tc, newton_root(q, z, tc).root.imag()});
    }
    return path;
}

cplx fd_transversality(const QuasiPolynomial& q, const RootPath& path, double tau, double h) {
    if (path.tau.empty() || tau - h < path.tau.front() || tau + h > path.tau.back()) {
        throw DomainError("fd_transversality: path does not cover tau +- h");
    }
    const auto it = std::lower_bound(path.tau.begin(), path.tau.end(), tau);
    const auto k = static_cast<std::size_t>(it - path.tau.begin());
    const cplx seed = path.mu[std::min(k, path.mu.size() - 1)];
    const cplx up = newton_root(q, seed, tau + h).root;
    const cplx down = newton_root(q, seed, tau - h).root;
    return (up - down) / (2.0 * h);
}

}  // namespace dhopf
