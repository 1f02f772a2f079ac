#include "dhopf/dde.hpp"

#include "dhopf/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace dhopf {

double DelaySystem::min_positive_delay() const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (double d : tau) {
        if (d > 0.0) {
            m = std::min(m, d);
        }
    }
    return m;
}

double DelaySystem::max_delay() const noexcept {
    return tau.empty() ? 0.0 : *std::max_element(tau.begin(), tau.end());
}

void DelaySystem::validate() const {
    const std::size_t n = dim();
    if (n == 0 || gamma.size() != n || theta.size() != n || tau.size() != n || eps.size() != n ||
        src.size() != n) {
        throw DomainError("DelaySystem: inconsistent component arrays");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(tau[i] >= 0.0)) {
            throw DomainError("DelaySystem: delays must be non-negative");
        }
        if (src[i] < 0 || static_cast<std::size_t>(src[i]) >= n) {
            throw DomainError("DelaySystem: source index out of range");
        }
    }
}

DelaySystem DelaySystem::two_gene(const TwoGeneParams& p) {
    p.validate();
    DelaySystem s;
    s.kappa = {p.kappa1, p.kappa2};
    s.gamma = {p.gamma1, p.gamma2};
    s.theta = {p.theta2, p.theta1};
    s.tau = {p.tau2, p.tau1};
    s.eps = {-1, 1};
    s.src = {1, 0};
    s.lambda = p.lambda;
    return s;
}

DelaySystem DelaySystem::cyclic(const CyclicLoopParams& c) {
    c.validate();
    const int n = c.N();
    DelaySystem s;
    s.kappa = c.kappa;
    s.gamma = c.gamma;
    s.theta = c.theta;
    s.tau = c.tau;
    s.eps = c.eps;
    s.lambda = c.lambda;
    s.src.resize(n);
    for (int i = 0; i < n; ++i) {
        s.src[i] = (i + n - 1) % n;
    }
    return s;
}

Trajectory::Trajectory(std::size_t dim, std::vector<double> history)
    : dim_(dim), history_(std::move(history)) {
    if (history_.size() != dim_) {
        throw DomainError("Trajectory: history has wrong dimension");
    }
}

void Trajectory::push(double t, const double* x, const double* dx) {
    t_.push_back(t);
    x_.insert(x_.end(), x, x + dim_);
    dx_.insert(dx_.end(), dx, dx + dim_);
}

double Trajectory::eval(double t, std::size_t comp) const {
    if (t_.empty() || t < t_.front()) {
        return history_[comp];
    }
    if (t == t_.front()) {
        return x_[comp];
    }
    if (t > t_.back()) {
        throw DomainError("Trajectory::eval: t = " + std::to_string(t) + " beyond t_end = " +
                          std::to_string(t_.back()));
    }
    const auto it = std::lower_bound(t_.begin(), t_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - t_.begin());
    if (*it == t) {
        return x_[k * dim_ + comp];
    }
    const std::size_t j = k - 1;
    const double h = t_[k] - t_[j];
    const double s = (t - t_[j]) / h;
    const double y0 = x_[j * dim_ + comp];
    const double y1 = x_[k * dim_ + comp];
    const double m0 = h * dx_[j * dim_ + comp];
    const double m1 = h * dx_[k * dim_ + comp];
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * m1;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Rhs {
public:
    Rhs(const DelaySystem& s, const Trajectory& traj) : s_(s), traj_(traj) {}

    // Delayed inputs come from the accepted trajectory; zero delays read the stage state.
    void operator()(double t, const double* x, double* dx) const {
        for (std::size_t i = 0; i < s_.dim(); ++i) {
            const auto j = static_cast<std::size_t>(s_.src[i]);
            // The min absorbs rounding when a step of exactly tau_i ends the lookup at t_n.
            const double y = s_.tau[i] > 0.0 ? traj_.eval(std::min(t - s_.tau[i], traj_.t_end()), j)
                                             : x[j];
            const double f = s_.eps[i] > 0 ? f_plus(y, s_.theta[i], s_.lambda)
                                           : f_minus(y, s_.theta[i], s_.lambda);
            dx[i] = s_.kappa[i] * f - s_.gamma[i] * x[i];
        }
    }

private:
    const DelaySystem& s_;
    const Trajectory& traj_;
};

}  // namespace

Trajectory integrate(const DelaySystem& system, const std::vector<double>& history, double t_end,
                     double rtol, double atol) {
    system.validate();
    if (!(rtol > 0.0) || !(atol > 0.0)) {
        throw DomainError("integrate: rtol and atol must be positive");
    }
    if (!(t_end > 0.0)) {
        throw DomainError("integrate: t_end must be positive");
    }
    for (double h : history) {
        if (!(h >= 0.0)) {
            throw DomainError("integrate: history must be non-negative");
        }
    }
    const std::size_t n = system.dim();
    Trajectory traj(n, history);
    const Rhs rhs(system, traj);

    std::vector<double> x(history), xn(n), tmp(n), err(n);
    std::array<std::vector<double>, 7> k;
    for (auto& v : k) {
        v.resize(n);
    }
    double t = 0.0;
    rhs(t, x.data(), k[0].data());
    traj.push(t, x.data(), k[0].data());
    traj.stats.rhs_evals = 1;

    const double h_cap = system.min_positive_delay();
    const double h_min = 1e-14 * t_end;
    double h = std::min({h_cap, 1e-2, t_end});

    const auto stage = [&](double tc, std::initializer_list<std::pair<int, double>> terms,
                           std::vector<double>& out_k) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = x[i];
            for (const auto& [idx, a] : terms) {
                acc += h * a * k[idx][i];
            }
            tmp[i] = acc;
        }
        rhs(tc, tmp.data(), out_k.data());
    };

    while (t < t_end) {
        bool last = false;
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }
        stage(t + c2 * h, {{0, a21}}, k[1]);
        stage(t + c3 * h, {{0, a31}, {1, a32}}, k[2]);
        stage(t + c4 * h, {{0, a41}, {1, a42}, {2, a43}}, k[3]);
        stage(t + c5 * h, {{0, a51}, {1, a52}, {2, a53}, {3, a54}}, k[4]);
        stage(t + h, {{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}}, k[5]);
        for (std::size_t i = 0; i < n; ++i) {
            xn[i] = x[i] + h * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] +
                                b6 * k[5][i]);
        }
        rhs(t + h, xn.data(), k[6].data());
        traj.stats.rhs_evals += 6;

        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                                  e6 * k[5][i] + e7 * k[6][i]);
            const double sc = atol + rtol * std::max(std::abs(x[i]), std::abs(xn[i]));
            norm += (e / sc) * (e / sc);
        }
        norm = std::sqrt(norm / static_cast<double>(n));

        if (norm <= 1.0) {
            t = last ? t_end : t + h;
            x.swap(xn);
            std::swap(k[0], k[6]);
            traj.push(t, x.data(), k[0].data());
            ++traj.stats.accepted;
            const double fac = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
            h = std::min(h * fac, h_cap);
        } else {
            ++traj.stats.rejected;
            h *= std::clamp(0.9 * std::pow(norm, -0.2), 0.1, 0.9);
            if (h < h_min) {
                throw NumericalError("integrate: step size " + std::to_string(h) +
                                     " underflowed below 1e-14 * t_end at t = " +
                                     std::to_string(t) + " after " +
                                     std::to_string(traj.stats.accepted) + " steps");
            }
        }
    }
    return traj;
}

}  // namespace dhopf
